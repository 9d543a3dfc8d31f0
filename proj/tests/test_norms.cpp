#include <doctest.h>

#include <cmath>

#include "limitops/errors.hpp"
#include "limitops/norms.hpp"
#include "support.hpp"

using namespace limitops;
using limitops::testing::denseFromEntries;
using limitops::testing::denseMaxSV;
using limitops::testing::randomBand;

TEST_CASE("apply computes Af exactly inside the window")
{
  const auto s = Space::lattice(1);
  const auto lap = laplacian(s);
  const FiniteVector f{{Point{0}, 1.0}, {Point{1}, 2.0}};
  const Window out(s, Point{0}, 3);
  const auto g = apply(lap, f, out);
  CHECK(g[static_cast<std::size_t>(out.indexOf(Point{-1}))] == 1.0);
  CHECK(g[static_cast<std::size_t>(out.indexOf(Point{0}))] == 2.0);
  CHECK(g[static_cast<std::size_t>(out.indexOf(Point{1}))] == 1.0);
  CHECK(g[static_cast<std::size_t>(out.indexOf(Point{2}))] == 2.0);
  CHECK_THROWS_AS(apply(lap, {{Point{3}, 1.0}}, out), TruncationError);
}

TEST_CASE("window norms of simple operators")
{
  const auto s = Space::lattice(1);
  const Window k(s, Point{0}, 10);
  const Window kp(s, Point{0}, 11);
  CHECK(windowNorm(OperatorExpr::identity(s), k, kp).upper == doctest::Approx(1));
  CHECK(windowNorm(shiftOperator(s), k, kp).upper == doctest::Approx(1));
  CHECK(windowNorm(OperatorExpr::zero(s), k, kp).upper == 0);
  // 2 cos(pi / (n + 1)) for the n x n tridiagonal block
  const double lap = windowNorm(laplacian(s), k, k).upper;
  CHECK(lap == doctest::Approx(2 * std::cos(M_PI / 22)).epsilon(1e-12));
  CHECK(columnNorm(laplacian(s), k.points()).upper <= 2 + 1e-12);
}

TEST_CASE("p != 2 window norms are intervals around the truth")
{
  const auto s = Space::lattice(1);
  const Window k(s, Point{0}, 6);
  const auto iv = windowNorm(OperatorExpr::scale(OperatorExpr::identity(s), 3.0), k, k, 3.0);
  CHECK(iv.lower == doctest::Approx(3));
  CHECK(iv.upper == doctest::Approx(3));
  const auto r = windowNorm(randomBand(s, 2, 4), k, k, 1.5);
  CHECK(r.lower <= r.upper + 1e-12);
  CHECK_THROWS_AS(windowNorm(laplacian(s), k, k, 1.0), InputError);
}

TEST_CASE("commutators with multiplication operators vanish")
{
  const auto s = Space::lattice(1);
  const Window scope(s, Point{0}, 60);
  const auto m = OperatorExpr::multiplication(s, CoefficientField::random(3, 2.0));
  for (double t : {0.5, 0.1})
  {
    const auto part = buildPartition(s, t, 2, Ball{Point{0}, 61});
    CHECK(commutatorStackNorm(m, part, scope).upper == 0);
  }
}

TEST_CASE("commutator norm is refused when the partition scope is too small")
{
  const auto s = Space::lattice(1);
  const auto part = buildPartition(s, 0.5, 2, Ball{Point{0}, 30});
  CHECK_THROWS_AS(commutatorStackNorm(laplacian(s), part, Window(s, Point{0}, 30)), InputError);
  CHECK_NOTHROW(commutatorStackNorm(laplacian(s), part, Window(s, Point{0}, 29)));
}

TEST_CASE("commutator norm matches a dense oracle")
{
  // rows (j, x), entries a(x,y) (phi_j(y) - phi_j(x))
  const auto s = Space::lattice(1);
  const auto a = randomBand(s, 1, 21);
  const auto part = buildPartition(s, 0.5, 2, Ball{Point{0}, 20});
  const Window scope(s, Point{0}, 12);
  const Window rows(s, Point{0}, 13);
  const auto ks = part.indicesMeeting(Ball{Point{0}, 13});
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(ks.size() * rows.size()),
                                              static_cast<Eigen::Index>(scope.size()));
  for (std::size_t j = 0; j < ks.size(); j++)
  {
    for (std::size_t r = 0; r < rows.size(); r++)
    {
      for (std::size_t c = 0; c < scope.size(); c++)
      {
        const Point &x = rows.points()[r];
        const Point &y = scope.points()[c];
        m(static_cast<Eigen::Index>(j * rows.size() + r), static_cast<Eigen::Index>(c)) =
            a.entry(x, y) * (part.phi(ks[j], y) - part.phi(ks[j], x));
      }
    }
  }
  CHECK(commutatorStackNorm(a, part, scope).upper == doctest::Approx(denseMaxSV(m)).epsilon(1e-10));
}

TEST_CASE("bdo diagnostic classifies band operators")
{
  const auto s = Space::lattice(1);
  const Window scope(s, Point{0}, 80);
  const auto d = bdoDiagnostic(laplacian(s), {0.2, 0.1, 0.05}, scope);
  CHECK(d.classification == "band-consistent");
  CHECK(d.ratios.size() == 3);
  for (std::size_t i = 0; i < 3; i++)
  {
    CHECK(d.ratios[i] == doctest::Approx(d.values[i].upper / std::sqrt(d.t[i])));
  }
  const auto zero = bdoDiagnostic(OperatorExpr::multiplication(s, CoefficientField::constant(2.0)),
                                  {0.2, 0.1}, scope);
  CHECK(zero.classification == "band-consistent");
  CHECK(zero.values[0].upper == 0);
  CHECK_THROWS_AS(bdoDiagnostic(laplacian(s), {0.1, 0.2}, scope), InputError);
  CHECK_THROWS_AS(bdoDiagnostic(laplacian(s), {}, scope), InputError);
}

TEST_CASE("localized norms bound the restricted norm from below")
{
  const auto s = Space::lattice(1);
  const auto a = randomBand(s, 1, 31);
  const Window scope(s, Point{0}, 40);
  const auto f = Predicate::halfspace({1.0}, -10);
  const auto full = restrictedNorm(a, f, scope);
  CHECK(full.columns == 51);
  for (double t : {0.5, 0.3})
  {
    const auto part = buildPartition(s, t, 2, Ball{Point{0}, 41});
    const auto loc = localizedNorm(a, f, part, scope);
    CHECK(loc.norm.upper <= full.norm.upper + 1e-12);
    CHECK(loc.centers > 0);
  }
  const auto empty = restrictedNorm(a, Predicate::none(), scope);
  CHECK(empty.norm.upper == 0);
  CHECK_FALSE(empty.warning.empty());
}

TEST_CASE("localized supports are deduplicated and clipped")
{
  const auto s = Space::lattice(1);
  const Window scope(s, Point{0}, 5);
  const auto sup = localizedSupports(s, Predicate::all(), scope, 20);
  REQUIRE(sup.size() == 1);
  CHECK(sup[0].size() == 11);
}
