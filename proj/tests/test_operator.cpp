#include <doctest.h>

#include <cmath>
#include <random>

#include "limitops/errors.hpp"
#include "limitops/expression.hpp"
#include "limitops/field.hpp"
#include "limitops/norms.hpp"
#include "limitops/operator.hpp"
#include "limitops/predicate.hpp"
#include "support.hpp"

using namespace limitops;
using limitops::testing::denseFromEntries;
using limitops::testing::denseMaxSV;
using limitops::testing::randomBand;

TEST_CASE("expressions evaluate arithmetic, functions and coordinates")
{
  CHECK(Expression::parse("1 + 2 * 3").eval(Point{0}).real() == 7);
  CHECK(Expression::parse("2^3^2").eval(Point{0}).real() == 512);
  CHECK(Expression::parse("-n^2").eval(Point{3}).real() == -9);
  CHECK(Expression::parse("n1 - 2*n2").eval(Point{5, 1}).real() == 3);
  CHECK(std::abs(Expression::parse("sin(sqrt(abs(n)))").eval(Point{-16}) - std::sin(4.0)) < 1e-15);
  CHECK(std::abs(Expression::parse("exp(i*pi)").eval(Point{0}) + 1.0) < 1e-15);
  CHECK(Expression::parse("mod(n, 3)").eval(Point{-1}).real() == 2);
  CHECK(Expression::parse("max(n, 2) + min(n, 2)").eval(Point{7}).real() == 9);
  CHECK(Expression::parse("n2").arity() == 2);
  CHECK(Expression::parse("3").isConstant());
}

TEST_CASE("malformed expressions are input errors")
{
  for (const char *s : {"", "1 +", "(1", "foo(2)", "sin(1, 2)", "n9", "1 2", "@"})
  {
    CHECK_THROWS_AS(Expression::parse(s), InputError);
  }
}

TEST_CASE("coefficient fields")
{
  const auto c = CoefficientField::constant({2, 1});
  CHECK(c.at(Point{100}) == Complex(2, 1));
  CHECK(c.bound() == doctest::Approx(std::sqrt(5.0)));

  const auto per = CoefficientField::periodic({3}, {1.0, 2.0, 3.0});
  CHECK(per.at(Point{0}) == 1.0);
  CHECK(per.at(Point{-1}) == 3.0);
  CHECK(per.at(Point{7}) == 2.0);
  CHECK(per.translated(Point{1}).at(Point{0}) == 2.0);

  const auto tab = CoefficientField::table({{Point{0}, 5.0}, {Point{2}, -1.0}}, 0.5);
  CHECK(tab.at(Point{0}) == 5.0);
  CHECK(tab.at(Point{1}) == 0.5);
  CHECK(tab.translated(Point{2}).at(Point{0}) == -1.0);

  const auto rnd = CoefficientField::random(42, 0.25);
  CHECK(rnd.at(Point{3}) == CoefficientField::random(42, 0.25).at(Point{3}));
  CHECK(rnd.at(Point{3}) != CoefficientField::random(43, 0.25).at(Point{3}));
  for (int k = -50; k < 50; k++)
  {
    CHECK(std::abs(rnd.at(Point{k})) <= 0.25);
    CHECK(rnd.at(Point{k}).imag() == 0);
  }
  CHECK(CoefficientField::constant(0.0).isZero());
  CHECK_THROWS_AS(CoefficientField::periodic({2}, {1.0}), InputError);
}

TEST_CASE("translated fields satisfy f'(y) = f(y + x)")
{
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-30, 30);
  const std::vector<CoefficientField> fields = {
      CoefficientField::periodic({2, 3}, {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}),
      CoefficientField::expression(Expression::parse("n1 * n2 + 1")),
      CoefficientField::table({{Point{1, 1}, 2.0}, {Point{-3, 0}, 7.0}}, 0.0),
      CoefficientField::random(9, 1.0)};
  for (const auto &f : fields)
  {
    for (int k = 0; k < 50; k++)
    {
      const Point x{u(rng), u(rng)};
      const Point y{u(rng), u(rng)};
      CHECK(f.translated(x).at(y) == f.at(y + x));
      const Point x2{u(rng), u(rng)};
      CHECK(f.translated(x).translated(x2).at(y) == f.at(y + x + x2));
    }
  }
}

TEST_CASE("translated predicates satisfy Y' = Y - x")
{
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> u(-30, 30);
  const std::vector<Predicate> preds = {
      Predicate::halfspace({1.0, -2.0}, 3.0), Predicate::sublattice({2, 3}, {1, 0}),
      Predicate::explicitSet({Point{0, 0}, Point{2, -1}}),
      Predicate::expression(Expression::parse("n1 - n2^2"))};
  for (const auto &y : preds)
  {
    for (int k = 0; k < 100; k++)
    {
      const Point x{u(rng), u(rng)};
      const Point z{u(rng), u(rng)};
      CHECK(y.translated(x).contains(z) == y.contains(z + x));
    }
  }
  CHECK(Predicate::all().contains(Point{5}));
  CHECK_FALSE(Predicate::none().contains(Point{5}));
}

TEST_CASE("bilateral shift and Laplacian kernels")
{
  const auto s = Space::lattice(1);
  const auto v = shiftOperator(s);
  // V e_0 = e_1
  const auto col = v.column(Point{0});
  REQUIRE(col.size() == 1);
  CHECK(col[0].first == Point{1});
  CHECK(col[0].second == 1.0);
  CHECK(v.propagation() == 1);

  const auto lap = laplacian(s);
  const auto row = lap.row(Point{4});
  REQUIRE(row.size() == 2);
  CHECK(row[0].first == Point{3});
  CHECK(row[1].first == Point{5});
  CHECK(lap.normBound() == 2);
}

TEST_CASE("row and column views agree with entries")
{
  for (const auto &s : {Space::lattice(1), Space::lattice(2, Metric::L1)})
  {
    const auto a = randomBand(s, 1, 100);
    const auto b = randomBand(s, 1, 200);
    const auto m = OperatorExpr::multiplication(s, CoefficientField::expression(Expression::parse("n1 + 2")));
    const auto p = OperatorExpr::projection(s, Predicate::halfspace(std::vector<double>(s.dim(), 1.0), 0));
    const auto expr = OperatorExpr::sum({a * m, OperatorExpr::adjoint(b) * p,
                                         OperatorExpr::minusScalar(a, {0, 1}),
                                         OperatorExpr::scale(b, 2.0)});
    const Window w(s, Point::zeros(s.dim()), 3);
    for (const auto &x : w.points())
    {
      for (const auto &[y, val] : expr.row(x))
      {
        CHECK(std::abs(val - expr.entry(x, y)) < 1e-14);
      }
      for (const auto &[y, val] : expr.column(x))
      {
        CHECK(std::abs(val - expr.entry(y, x)) < 1e-14);
      }
      CHECK(expr.row(x).size() <= Window(s, x, expr.propagation()).size());
    }
  }
}

TEST_CASE("products and adjoints match dense matrix algebra")
{
  const auto s = Space::lattice(1);
  const auto a = randomBand(s, 2, 1);
  const auto b = randomBand(s, 1, 50);
  const Window inner(s, Point{0}, 4);
  const Window mid(s, Point{0}, 6);
  const Window outer(s, Point{0}, 9);
  // (AB)(x, z) = sum_y A(x, y) B(y, z); B's column support of inner lies in mid.
  const auto ab = denseFromEntries(a * b, outer.points(), inner.points());
  const Eigen::MatrixXcd expect = denseFromEntries(a, outer.points(), mid.points()) *
                      denseFromEntries(b, mid.points(), inner.points());
  CHECK((ab - expect).norm() < 1e-13);
  const auto adj = denseFromEntries(OperatorExpr::adjoint(a), outer.points(), inner.points());
  CHECK((adj - denseFromEntries(a, inner.points(), outer.points()).adjoint()).norm() < 1e-14);
  CHECK((a * b).propagation() == 3);
}

TEST_CASE("normBound dominates window norms")
{
  const auto s = Space::lattice(2);
  const auto a = randomBand(s, 1, 8);
  const Window k(s, Point{0, 0}, 4);
  const Window kp(s, Point{0, 0}, 5);
  const double actual = denseMaxSV(denseFromEntries(a, k.points(), kp.points()));
  CHECK(actual <= a.normBound() + 1e-12);
  CHECK(windowNorm(a, k, kp).upper == doctest::Approx(actual).epsilon(1e-10));
}

TEST_CASE("conjugation translates the kernel")
{
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> u(-20, 20);
  const auto s = Space::lattice(2);
  const auto a = randomBand(s, 1, 3) +
                 OperatorExpr::projection(s, Predicate::halfspace({1.0, 0.5}, 2)) *
                     OperatorExpr::multiplication(s, CoefficientField::periodic({2, 1}, {1.0, -1.0}));
  for (int k = 0; k < 30; k++)
  {
    const Point x{u(rng), u(rng)};
    const auto ax = conjugate(a, x);
    const Point y{u(rng) / 4, u(rng) / 4};
    for (const auto &[z, v] : ax.row(y))
    {
      CHECK(std::abs(v - a.entry(y + x, z + x)) < 1e-14);
    }
  }
  CHECK_THROWS_AS(conjugate(a, Point{1}), InputError);
}

TEST_CASE("graph band operators use distance classes")
{
  // Path graph 0 - 1 - 2 - 3.
  std::vector<std::vector<std::int64_t>> adj{{1}, {0, 2}, {1, 3}, {2}};
  const auto g = Space::graph(adj);
  const auto a = OperatorExpr::band(BandOperator(g, {{Point{1}, CoefficientField::constant(1.0)}}));
  const auto row = a.row(Point{1});
  REQUIRE(row.size() == 2);
  CHECK(row[0].first == Point{0});
  CHECK(row[1].first == Point{2});
  CHECK_THROWS_AS(conjugate(a, Point{1}), UnsupportedError);
}
