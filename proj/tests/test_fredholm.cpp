#include <doctest.h>

#include <cmath>

#include "limitops/errors.hpp"
#include "limitops/fredholm.hpp"
#include "limitops/subspace.hpp"
#include "support.hpp"

using namespace limitops;
using limitops::testing::denseFromEntries;
using limitops::testing::denseMinSV;
using limitops::testing::randomBand;

namespace
{

const Space kZ = Space::lattice(1);

std::vector<LimitSequence> bothRays()
{
  return {LimitSequence::ray("right", Point{1}, {}), LimitSequence::ray("left", Point{-1}, {})};
}

SubspaceProjection naturals()
{
  return makeProjection(kZ, Predicate::halfspace({1.0}, 0));
}

}  // namespace

TEST_CASE("projections split the identity")
{
  const auto proj = naturals();
  const Window w(kZ, Point{0}, 6);
  const auto pq = denseFromEntries(proj.p + proj.q, w.points(), w.points());
  CHECK((pq - Eigen::MatrixXcd::Identity(13, 13)).norm() == 0);
  const auto pp = denseFromEntries(proj.p * proj.p - proj.p, w.points(), w.points());
  CHECK(pp.norm() == 0);
  const auto pqz = denseFromEntries(proj.p * proj.q, w.points(), w.points());
  CHECK(pqz.norm() == 0);
  for (const auto &y : {Predicate::all(), Predicate::none()})
  {
    const auto full = makeProjection(kZ, y);
    CHECK(denseFromEntries(full.p + full.q, w.points(), w.points()).isIdentity());
  }
}

TEST_CASE("toeplitz, compress and hat")
{
  const auto proj = naturals();
  const auto f = CoefficientField::expression(Expression::parse("n + 1"));
  const auto t = toeplitz(f, proj);
  CHECK(t.entry(Point{3}, Point{3}) == 4.0);
  CHECK(t.entry(Point{-3}, Point{-3}) == 0.0);
  const auto v = shiftOperator(kZ);
  const auto c = compress(v, proj);
  CHECK(c.entry(Point{0}, Point{-1}) == 0.0);
  CHECK(c.entry(Point{1}, Point{0}) == 1.0);
  const auto h = hat(v, proj);
  CHECK(h.entry(Point{-2}, Point{-2}) == 1.0);
  CHECK(h.entry(Point{3}, Point{2}) == 1.0);
  CHECK(h.entry(Point{0}, Point{-1}) == 0.0);  // column -1 lies in Q, so only Q acts there
  CHECK(h.entry(Point{-1}, Point{-1}) == 1.0);
  CHECK(h.entry(Point{1}, Point{0}) == 1.0);
}

TEST_CASE("lower norms of simple operators")
{
  const Window w(kZ, Point{0}, 20);
  CHECK(lowerNormWindow(OperatorExpr::scale(OperatorExpr::identity(kZ), 2.0), w) == doctest::Approx(2));
  CHECK(lowerNormWindow(shiftOperator(kZ), w) == doctest::Approx(1));
  CHECK(lowerNormWindow(OperatorExpr::zero(kZ), w) == 0);
  CHECK(lowerNormWindow(laplacian(kZ), std::vector<Point>{}) == INFINITY);
  CHECK_THROWS_AS(lowerNormWindow(laplacian(kZ), w, 1.0), InputError);
}

TEST_CASE("lower norm of the Laplacian minus 4 approaches dist(4, [-2, 2])")
{
  const auto b = OperatorExpr::minusScalar(laplacian(kZ), 4.0);
  double prev = INFINITY;
  for (double r : {5.0, 25.0, 100.0, 300.0})
  {
    const double nu = lowerNormWindow(b, Window(kZ, Point{0}, r));
    CHECK(nu <= prev + 1e-12);
    CHECK(nu >= 2 - 1e-12);
    prev = nu;
  }
  CHECK(prev == doctest::Approx(2).epsilon(1e-3));
}

TEST_CASE("lower norms are monotone on nested windows and match dense SVD")
{
  const auto s = Space::lattice(2);
  const auto a = randomBand(s, 1, 12);
  double prev = INFINITY;
  for (double r : {1.0, 2.0, 3.0})
  {
    const Window w(s, Point{0, 0}, r);
    const Window rows(s, Point{0, 0}, r + 1);
    const double nu = lowerNormWindow(a, w);
    CHECK(std::abs(nu - denseMinSV(denseFromEntries(a, rows.points(), w.points()))) < 1e-10);
    CHECK(nu <= prev);
    prev = nu;
  }
}

TEST_CASE("localized lower norms")
{
  const Window scope(kZ, Point{0}, 30);
  const auto part = buildPartition(kZ, 0.5, 2, Ball{Point{0}, 31});
  const auto c = OperatorExpr::scale(OperatorExpr::identity(kZ), Complex(0, -3));
  const auto loc = lowerNormLocalized(c, Predicate::all(), part, scope);
  CHECK(loc.value == doctest::Approx(3));
  const auto empty = lowerNormLocalized(c, Predicate::none(), part, scope);
  CHECK(empty.value == INFINITY);
  CHECK_FALSE(empty.warning.empty());
  CHECK(lowerNormRestricted(c, Predicate::none(), scope).value == INFINITY);
}

TEST_CASE("lower-norm sandwich nu <= nu_t on random band operators")
{
  const auto b = randomBand(kZ, 1, 400) + OperatorExpr::scale(OperatorExpr::identity(kZ), 0.5);
  const Window scope(kZ, Point{0}, 60);
  const auto f = Predicate::halfspace({1.0}, -20);
  const double nu = lowerNormRestricted(b, f, scope).value;
  for (double t : {0.5, 0.3, 0.2})
  {
    const auto part = buildPartition(kZ, t, 2, Ball{Point{0}, 61});
    CHECK(nu <= lowerNormLocalized(b, f, part, scope).value + 1e-12);
  }
}

TEST_CASE("invertibility estimates")
{
  const std::vector<double> sched = {25, 50, 100, 200};
  const auto id = invertibilityEstimate(OperatorExpr::identity(kZ), sched, 0.05);
  CHECK(toString(id.verdict) == "evidenceInvertible");
  CHECK(id.margin == doctest::Approx(1));

  const auto vmi = invertibilityEstimate(shiftOperator(kZ) - OperatorExpr::identity(kZ), sched, 0.05);
  CHECK(toString(vmi.verdict) == "notInvertibleAtLevel");
  CHECK(vmi.nuUpper < 0.05);

  // min |2 cos(theta) + 5| = 3
  const auto lap5 = invertibilityEstimate(laplacian(kZ) + OperatorExpr::scale(OperatorExpr::identity(kZ), 5.0),
                                          sched, 0.05);
  CHECK(toString(lap5.verdict) == "evidenceInvertible");
  CHECK(lap5.margin == doctest::Approx(3).epsilon(1e-3));
  CHECK_THROWS_AS(invertibilityEstimate(laplacian(kZ), {50, 25}, 0.05), InputError);
}

TEST_CASE("invertibility estimate invariants")
{
  const auto b = randomBand(kZ, 2, 17);
  for (double tau : {0.01, 0.1, 0.5})
  {
    const auto e = invertibilityEstimate(b, {10, 20, 40, 80}, tau);
    for (std::size_t i = 1; i < e.steps.size(); i++)
    {
      CHECK(e.steps[i].nuUpper <= e.steps[i - 1].nuUpper);
      CHECK(e.steps[i].nuStarUpper <= e.steps[i - 1].nuStarUpper);
      CHECK(e.steps[i].nu <= e.steps[i - 1].nu + 1e-12);
    }
    CHECK((toString(e.verdict) == "notInvertibleAtLevel") ==
          (std::min(e.nuUpper, e.nuStarUpper) < tau));
  }
}

TEST_CASE("compactness test")
{
  const auto kernel = OperatorExpr::band(BandOperator(
      kZ, {{Point{0}, CoefficientField::table({{Point{0}, 1.0}, {Point{2}, 3.0}})},
           {Point{1}, CoefficientField::table({{Point{-1}, 2.0}})}}));
  const auto fin = compactnessTest(kernel, bothRays(), {});
  CHECK(fin.verdict == "compact-consistent");
  CHECK(fin.maxGap == 0);
  CHECK(fin.caveat == kFamilyCaveat);

  CHECK(compactnessTest(OperatorExpr::identity(kZ), bothRays(), {}).verdict == "not-compact");

  const auto mv = OperatorExpr::multiplication(kZ, CoefficientField::expression(Expression::parse("1/(1+n^2)")));
  const auto dec = compactnessTest(mv, bothRays(), {});
  CHECK(dec.verdict == "compact-consistent");
  CHECK(dec.maxGap <= 1e-9);
  CHECK_THROWS_AS(compactnessTest(mv, {}, {}), InputError);
}

TEST_CASE("Fredholm test on Toeplitz operators")
{
  const auto proj = naturals();
  const auto shift = compress(shiftOperator(kZ), proj);
  const auto ok = fredholmTest(shift, proj, bothRays(), {});
  CHECK(ok.verdict == "Fredholm-consistent");
  CHECK(ok.minMargin >= 0.99);
  CHECK(ok.inverseNormEstimate == doctest::Approx(1 / ok.minMargin));
  CHECK_FALSE(ok.rationale.empty());

  const auto sym = compress(shiftOperator(kZ) - OperatorExpr::identity(kZ), proj);
  const auto bad = fredholmTest(sym, proj, bothRays(), {});
  CHECK(bad.verdict == "notFredholm");
  CHECK_THROWS_AS(fredholmTest(sym, proj, {}, {}), InputError);
}

TEST_CASE("Fredholm test reports divergence")
{
  const auto m = OperatorExpr::multiplication(kZ, CoefficientField::periodic({2}, {1.0, 2.0}));
  const auto rep = fredholmTest(m, fullProjection(kZ), {LimitSequence::ray("r", Point{1}, {})}, {});
  CHECK(rep.verdict == "divergent");
  CHECK(rep.entries[0].divergent);
}

TEST_CASE("nu(A_x) >= nu(A) on matched windows for exact limits")
{
  const auto a = laplacian(kZ) + OperatorExpr::multiplication(kZ, CoefficientField::periodic({3}, {0.5, -1.0, 2.0}));
  const auto seq = LimitSequence::ray("r", Point{3}, Point{1});
  const auto lim = std::get<LimitOperator>(limitOperator(a, seq, {4, 8, 16}, 0.02));
  REQUIRE(lim.exact);
  for (double r : {5.0, 20.0})
  {
    const Window w(kZ, Point{0}, r);
    std::vector<Point> shifted;
    for (const auto &x : w.points())
    {
      shifted.push_back(x + lim.point);
    }
    CHECK(lowerNormWindow(lim.op, w) >= lowerNormWindow(a, shifted) - 1e-9);
  }
}

TEST_CASE("essential norm estimates")
{
  const auto full = fullProjection(kZ);
  const auto id = essNormEstimate(OperatorExpr::identity(kZ), full, bothRays(), {25, 50}, {});
  CHECK(id.estimate.lower == doctest::Approx(1));
  CHECK(id.estimate.upper == doctest::Approx(1));
  const auto v = essNormEstimate(shiftOperator(kZ), full, bothRays(), {25, 50}, {});
  CHECK(v.estimate.lower == doctest::Approx(1));
  CHECK(v.estimate.upper == doctest::Approx(1));
  const auto mv = OperatorExpr::multiplication(kZ, CoefficientField::expression(Expression::parse("-0.7 + 1/(1+n^2)")));
  const auto c = essNormEstimate(mv, full, bothRays(), {25, 50}, {});
  CHECK(std::abs(c.estimate.lower - 0.7) < 1e-9);
  CHECK(std::abs(c.estimate.upper - 0.7) < 1e-9);
}
