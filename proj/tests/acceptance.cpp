// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "limitops/cli.hpp"
#include "limitops/covering.hpp"
#include "limitops/fredholm.hpp"
#include "limitops/partition.hpp"
#include "limitops/spectrum.hpp"

#ifndef LIMITOPS_CLI_PATH
#define LIMITOPS_CLI_PATH "limitops"
#endif

using namespace limitops;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

std::string fmt(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

OperatorExpr randomBand(const Space &space, int omega, std::uint64_t seed)
{
  std::vector<StencilEntry> st;
  std::uint64_t s = seed;
  for (const auto &o : space.closedBall(Point::zeros(space.coords()), omega))
  {
    st.push_back({o, CoefficientField::random(s++, 1.0)});
  }
  return OperatorExpr::band(BandOperator(space, st));
}

Eigen::MatrixXcd dense(const OperatorExpr &a, const std::vector<Point> &rows, const std::vector<Point> &cols)
{
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); i++)
  {
    for (std::size_t j = 0; j < cols.size(); j++)
    {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.entry(rows[i], cols[j]);
    }
  }
  return m;
}

std::vector<Complex> cloudPoints(const SpectrumEstimate &e)
{
  std::vector<Complex> out;
  for (const auto &p : e.points)
  {
    out.push_back(p.z);
  }
  return out;
}

std::vector<Complex> segment(double lo, double hi, double step)
{
  std::vector<Complex> out;
  const int n = static_cast<int>(std::lround((hi - lo) / step));
  for (int k = 0; k <= n; k++)
  {
    out.emplace_back(lo + k * step, 0);
  }
  return out;
}

// 1. Covering invariants on Z^2 (l-inf), scope radius 40.
Outcome covering()
{
  const auto s = Space::lattice(2);
  const Window scope(s, Point{0, 0}, 40);
  bool ok = true;
  std::ostringstream d;
  for (double r : {1.0, 2.0, 4.0})
  {
    const auto cov = buildCovering(s, scope, r);
    std::map<Point, int> owner;
    bool disjoint = true;
    double diam = 0;
    for (std::size_t j = 0; j < cov.cells.size(); j++)
    {
      for (const auto &x : cov.cells[j])
      {
        disjoint = disjoint && owner.emplace(x, static_cast<int>(j)).second;
        for (const auto &y : cov.cells[j])
        {
          diam = std::max(diam, s.dist(x, y));
        }
      }
    }
    const bool covers = owner.size() == scope.size();

    // N_{6r} from the geometry profile; |J_k(r)| counted by brute force on cells away from the edge.
    const auto prof = geometryProfile(s, 6 * r, Window(s, Point{0, 0}, 2));
    const std::size_t n6r = prof.back().maxBallSize;
    std::size_t maxJ = 0;
    for (std::size_t k = 0; k < cov.cells.size(); k++)
    {
      if (s.dist(cov.netPoints[k], Point{0, 0}) > scope.radius() - 6 * r)
      {
        continue;
      }
      std::size_t count = 0;
      for (std::size_t j = 0; j < cov.cells.size(); j++)
      {
        if (s.dist(cov.netPoints[j], cov.netPoints[k]) > 5 * r)
        {
          continue;
        }
        bool near = false;
        for (const auto &x : cov.cells[j])
        {
          for (const auto &y : cov.cells[k])
          {
            if (s.dist(x, y) <= r)
            {
              near = true;
              break;
            }
          }
          if (near)
          {
            break;
          }
        }
        count += near;
      }
      maxJ = std::max(maxJ, count);
    }
    const auto rep = checkCovering(s, cov);
    const bool good = disjoint && covers && diam <= 4 * r && maxJ <= n6r && rep.disjoint && rep.covers &&
                      rep.netInsideCells && rep.maxNeighborCount <= rep.neighborBound;
    ok = ok && good;
    d << "r=" << r << ": cells=" << cov.cells.size() << " diam=" << diam << " |J|max=" << maxJ
      << " N6r=" << n6r << (good ? "" : " BAD") << "; ";
  }
  return {ok, d.str()};
}

// 2. Partition invariants on Z and Z^2.
struct PartitionCheck
{
  double sumErr = 0;
  double phiSumErr = 0;
  double maxRho = 0;
  double maxPhi = 0;
  std::size_t pairs = 0;
};

using Terms = std::vector<PartitionTerm>;

void accumulate(PartitionCheck &c, const PartitionOfUnity &part, const Terms &tx, const Terms &ty)
{
  // merge over the union of indices
  double rho = 0;
  double phi = 0;
  std::size_t i = 0, j = 0;
  while (i < tx.size() || j < ty.size())
  {
    double a = 0, b = 0, pa = 0, pb = 0;
    if (j == ty.size() || (i < tx.size() && tx[i].index < ty[j].index))
    {
      a = tx[i].rho;
      pa = tx[i].phi;
      i++;
    }
    else if (i == tx.size() || ty[j].index < tx[i].index)
    {
      b = ty[j].rho;
      pb = ty[j].phi;
      j++;
    }
    else
    {
      a = tx[i].rho;
      pa = tx[i].phi;
      b = ty[j].rho;
      pb = ty[j].phi;
      i++;
      j++;
    }
    rho += std::abs(a - b);
    phi += std::pow(std::abs(pa - pb), part.p());
  }
  c.maxRho = std::max(c.maxRho, rho);
  c.maxPhi = std::max(c.maxPhi, phi);
  c.pairs++;
}

void sums(PartitionCheck &c, const PartitionOfUnity &part, const Terms &tx)
{
  double s = 0, sp = 0;
  for (const auto &t : tx)
  {
    s += t.rho;
    sp += std::pow(t.phi, part.p());
  }
  c.sumErr = std::max(c.sumErr, std::abs(s - 1));
  c.phiSumErr = std::max(c.phiSumErr, std::abs(sp - 1));
}

// Every point of the shrunk scope, every pair at distance <= 1/t.
PartitionCheck fullScan(const Space &s, const PartitionOfUnity &part, double scopeRadius)
{
  PartitionCheck c;
  const double inner = scopeRadius - part.margin();
  const auto m = static_cast<std::int64_t>(std::floor(1 / part.t()));
  const Window w(s, Point::zeros(s.dim()), inner);
  const auto offsets = s.closedBall(Point::zeros(s.dim()), static_cast<double>(m));
  std::unordered_map<Point, Terms, PointHash> cache;
  const auto termsAt = [&](const Point &x) -> const Terms &
  {
    auto it = cache.find(x);
    if (it == cache.end())
    {
      it = cache.emplace(x, part.termsAt(x)).first;
    }
    return it->second;
  };
  for (const auto &x : w.points())
  {
    sums(c, part, termsAt(x));
    for (const auto &o : offsets)
    {
      const Point y = x + o;
      if (o == Point::zeros(s.dim()) || !w.contains(y))
      {
        continue;
      }
      accumulate(c, part, termsAt(x), termsAt(y));
    }
  }
  return c;
}

// Z^2 with large pitch L: scan one period box [0, L)^2 with every pair at distance <= 1/t, then
// verify the translation covariance rho_{k+e}(x + L e) = rho_k(x) on random points of the scope.
PartitionCheck periodBoxScan(const PartitionOfUnity &part, double scopeRadius, bool &covariant)
{
  PartitionCheck c;
  const std::int64_t L = part.pitch();
  const auto m = static_cast<std::int64_t>(std::floor(1 / part.t()));
  const std::int64_t side = L + 2 * m;
  std::vector<Terms> cache(static_cast<std::size_t>(side * side));
  const auto at = [&](std::int64_t i, std::int64_t j) -> const Terms &
  { return cache[static_cast<std::size_t>((i + m) * side + (j + m))]; };
  for (std::int64_t i = -m; i < L + m; i++)
  {
    for (std::int64_t j = -m; j < L + m; j++)
    {
      cache[static_cast<std::size_t>((i + m) * side + (j + m))] = part.termsAt(Point{i, j});
    }
  }
  for (std::int64_t i = 0; i < L; i++)
  {
    for (std::int64_t j = 0; j < L; j++)
    {
      const Terms &tx = at(i, j);
      sums(c, part, tx);
      for (std::int64_t a = -m; a <= m; a++)
      {
        for (std::int64_t b = -m; b <= m; b++)
        {
          if (a != 0 || b != 0)
          {
            accumulate(c, part, tx, at(i + a, j + b));
          }
        }
      }
    }
  }
  covariant = true;
  std::mt19937_64 rng(5);
  const auto inner = static_cast<std::int64_t>(scopeRadius - part.margin());
  std::uniform_int_distribution<std::int64_t> u(-inner, inner);
  for (int n = 0; n < 20000 && covariant; n++)
  {
    const Point x{u(rng), u(rng)};
    const Point base{((x[0] % L) + L) % L, ((x[1] % L) + L) % L};
    const Point shift{(x[0] - base[0]) / L, (x[1] - base[1]) / L};
    const auto tx = part.termsAt(x);
    const auto tb = part.termsAt(base);
    if (tx.size() != tb.size() || part.exactSumNumerator(x) != part.exactDenominator())
    {
      covariant = false;
      break;
    }
    for (std::size_t k = 0; k < tx.size(); k++)
    {
      covariant = covariant && tx[k].index == tb[k].index + shift && tx[k].rho == tb[k].rho;
    }
  }
  return c;
}

Outcome partition()
{
  bool ok = true;
  std::ostringstream d;
  for (int dim : {1, 2})
  {
    const auto s = Space::lattice(dim);
    for (double t : {0.5, 0.2, 0.1})
    {
      for (double p : {1.5, 2.0, 3.0})
      {
        const auto probe = buildPartition(s, t, p, Ball{Point::zeros(dim), 1});
        const double scopeRadius = 4 * probe.supportDiameter();
        const auto part = buildPartition(s, t, p, Ball{Point::zeros(dim), scopeRadius});
        bool covariant = true;
        const bool box = dim == 2 && t < 0.5;
        const auto c = box ? periodBoxScan(part, scopeRadius, covariant) : fullScan(s, part, scopeRadius);
        const bool good = c.sumErr <= 1e-12 && c.phiSumErr <= 1e-12 && c.maxRho < t && c.maxPhi < t && covariant;
        ok = ok && good;
        if (!good || p == 2.0)
        {
          d << "Z" << dim << " t=" << t << " p=" << p << (box ? " (period box)" : "") << ": var=" << fmt(c.maxRho)
            << " phiVar=" << fmt(c.maxPhi) << " sumErr=" << fmt(c.sumErr) << " pairs=" << c.pairs
            << (good ? "" : " BAD") << "; ";
        }
      }
    }
  }
  return {ok, d.str()};
}

// 3. Commutator scaling.
Outcome commutator()
{
  const auto s = Space::lattice(1);
  const Window scope(s, Point{0}, 200);
  const std::vector<double> grid = {0.1, 0.05, 0.025};
  const auto diag = bdoDiagnostic(randomBand(s, 2, 2024), grid, scope);
  const auto mult = bdoDiagnostic(OperatorExpr::multiplication(s, CoefficientField::random(99, 3.0)), grid, scope);
  bool zero = true;
  for (const auto &v : mult.values)
  {
    zero = zero && v.upper == 0;
  }
  std::ostringstream d;
  d << "ratios";
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < grid.size(); i++)
  {
    const double direct = commutatorStackNorm(randomBand(s, 2, 2024),
                                              buildPartition(s, grid[i], 2, Ball{Point{0}, 400}), scope)
                              .upper /
                          std::sqrt(grid[i]);
    lo = std::min(lo, direct);
    hi = std::max(hi, direct);
    d << " " << fmt(direct);
  }
  d << " spread=" << fmt(hi / lo) << " (diagnostic " << fmt(diag.maxRatioSpread) << ") multiplication="
    << (zero ? "0" : "nonzero");
  return {hi / lo <= 2 && zero, d.str()};
}

// 4. Laurent operator: nuGrid cloud against the symbol.
Outcome laurent()
{
  const auto s = Space::lattice(1);
  SpectrumOptions opts;
  opts.method = SpectrumMethod::NuGrid;
  opts.windowSchedule = {25, 50, 100, 200};
  opts.pitch = 0.02;
  opts.tau = 0.05;
  const auto rep = essentialSpectrumEstimate(laplacian(s), fullProjection(s),
                                             {LimitSequence::ray("right", Point{1}, {})}, opts);
  const double h = hausdorff(cloudPoints(rep.cloud), symbolSpectrum(laplacian(s)));
  return {rep.cloud.method == "nuGrid" && h <= 0.05,
          "cloud=" + std::to_string(rep.cloud.points.size()) + " evaluations=" +
              std::to_string(rep.cloud.evaluations) + " hausdorff=" + fmt(h)};
}

// 5. Toeplitz Fredholmness.
Outcome toeplitzFredholm()
{
  const auto s = Space::lattice(1);
  const auto proj = makeProjection(s, Predicate::halfspace({1.0}, 0));
  const std::vector<LimitSequence> seqs = {LimitSequence::ray("right", Point{1}, {}),
                                           LimitSequence::ray("left", Point{-1}, {})};
  FredholmOptions opts;
  opts.windowSchedule = {25, 50, 100, 200};
  opts.tau = 0.05;
  const auto ok = fredholmTest(compress(shiftOperator(s), proj), proj, seqs, opts);
  const auto bad = fredholmTest(compress(shiftOperator(s) - OperatorExpr::identity(s), proj), proj, seqs, opts);
  double lastRadius = 0;
  double nu = INFINITY;
  for (const auto &e : bad.entries)
  {
    if (!e.divergent && !e.estimate.steps.empty())
    {
      lastRadius = std::max(lastRadius, e.estimate.steps.back().radius);
      nu = std::min(nu, std::min(e.estimate.nuUpper, e.estimate.nuStarUpper));
    }
  }
  return {ok.verdict == "Fredholm-consistent" && ok.minMargin >= 0.99 && bad.verdict == "notFredholm" &&
              lastRadius <= 200,
          "shift: " + ok.verdict + " margin=" + fmt(ok.minMargin) + "; symbol e^{i theta}-1: " + bad.verdict +
              " nu=" + fmt(nu) + " at radius " + fmt(lastRadius)};
}

// 6. Slowly oscillating potential.
Outcome slowlyOscillating()
{
  const auto s = Space::lattice(1);
  const auto a = laplacian(s) +
                 OperatorExpr::multiplication(s, CoefficientField::expression(Expression::parse("sin(sqrt(abs(n)))")));
  // long enough that sin(sqrt(n)) moves by < 1e-3 across the certified windows
  const auto parent = LimitSequence::ray("right", Point{1}, {}, std::int64_t{1} << 22);
  std::vector<LimitSequence> seqs = {parent};
  std::vector<Complex> oracle;
  for (int k = -10; k <= 10; k++)
  {
    SubsequenceRule rule;
    rule.kind = SubsequenceRule::Kind::Level;
    rule.expr = Expression::parse("sin(sqrt(abs(n)))");
    rule.target = k / 10.0;
    seqs.push_back(LimitSequence::subsequence("c" + std::to_string(k), parent, rule));
    for (auto z : segment(-2, 2, 0.01))
    {
      oracle.push_back(z + k / 10.0);
    }
  }
  seqs.erase(seqs.begin());
  SpectrumOptions opts;
  opts.pitch = 0.02;
  opts.tau = 0.05;
  const auto rep = essentialSpectrumEstimate(a, fullProjection(s), seqs, opts);
  const auto cloud = cloudPoints(rep.cloud);
  const double hInterval = hausdorff(cloud, segment(-3, 3, 0.01));
  const double hOracle = hausdorff(cloud, oracle);
  std::size_t divergent = 0;
  for (const auto &e : rep.entries)
  {
    divergent += e.divergent;
  }
  return {divergent == 0 && hInterval <= 0.1 && hOracle <= 0.1,
          "limits=" + std::to_string(seqs.size()) + " divergent=" + std::to_string(divergent) + " method=" +
              rep.cloud.method + " hausdorff[-3,3]=" + fmt(hInterval) + " hausdorff(oracle)=" + fmt(hOracle)};
}

// 7. Compactness characterization.
Outcome compactness()
{
  const auto s = Space::lattice(1);
  const std::vector<LimitSequence> seqs = {LimitSequence::ray("right", Point{1}, {}),
                                           LimitSequence::ray("left", Point{-1}, {})};
  const auto kernel = OperatorExpr::band(BandOperator(
      s, {{Point{0}, CoefficientField::table({{Point{0}, 1.0}, {Point{2}, 3.0}, {Point{-4}, -2.0}})},
          {Point{1}, CoefficientField::table({{Point{-1}, 2.0}, {Point{5}, Complex(0, 1)}})}}));
  const auto fin = compactnessTest(kernel, seqs, {});
  bool exactZero = true;
  for (const auto &e : fin.entries)
  {
    for (double g : e.gaps)
    {
      exactZero = exactZero && g == 0;
    }
  }
  const auto id = compactnessTest(OperatorExpr::identity(s), seqs, {});
  const auto mv = compactnessTest(
      OperatorExpr::multiplication(s, CoefficientField::expression(Expression::parse("1/(1+n^2)"))), seqs, {});
  return {fin.verdict == "compact-consistent" && exactZero && id.verdict == "not-compact" &&
              mv.verdict == "compact-consistent" && mv.maxGap <= 1e-9,
          "kernel: " + fin.verdict + (exactZero ? " (zero gaps)" : " (nonzero gaps)") + "; identity: " + id.verdict +
              "; v->0: " + mv.verdict + " maxGap=" + fmt(mv.maxGap)};
}

// 8. Lower-norm sandwich.
Outcome sandwich()
{
  const auto s = Space::lattice(1);
  const auto b = randomBand(s, 1, 808);
  const Window scope(s, Point{0}, 100);
  const auto f = Predicate::all();
  const double nu = lowerNormRestricted(b, f, scope).value;
  const double norm = windowNorm(b, scope.points(), Window(s, Point{0}, 101).points()).upper;
  bool ordered = true;
  double lastGap = 0;
  std::ostringstream d;
  d << "nu=" << fmt(nu) << " ||B||=" << fmt(norm);
  for (double t : {0.5, 0.3, 0.2})
  {
    const auto part = buildPartition(s, t, 2, Ball{Point{0}, 101});
    const double nut = lowerNormLocalized(b, f, part, scope).value;
    ordered = ordered && nu <= nut + 1e-12;
    lastGap = nut - nu;
    d << " nu_" << t << "=" << fmt(nut) << " (r_t=" << part.supportDiameter() << ")";
  }
  return {ordered && lastGap <= 0.02 * norm, d.str()};
}

// 9. Limit-operator algebra for period-2 data.
Outcome algebra()
{
  const auto s = Space::lattice(1);
  const auto a = laplacian(s) + OperatorExpr::multiplication(s, CoefficientField::periodic({2}, {1.0, -1.0}));
  const auto b = OperatorExpr::multiplication(s, CoefficientField::periodic({2}, {2.0, 0.5})) * shiftOperator(s) +
                 OperatorExpr::adjoint(shiftOperator(s));
  bool ok = true;
  double sumD = 0, prodD = 0;
  for (const auto &seq : {LimitSequence::ray("even", Point{2}, {}), LimitSequence::ray("odd", Point{2}, Point{1}),
                          LimitSequence::ray("even-left", Point{-2}, {})})
  {
    const auto r = limitAlgebraCheck(a, b, seq, {4, 8, 16}, 1e-10);
    const auto *rep = std::get_if<LimitAlgebraReport>(&r);
    if (!rep)
    {
      return {false, seq.label() + " diverged"};
    }
    bool bounded = true;
    for (const auto &def : rep->defects)
    {
      bounded = bounded && def.limitWindowNorm <= rep->normBound + 1e-9;
    }
    ok = ok && rep->maxSumDefect <= 1e-10 && rep->maxProductDefect <= 1e-10 && bounded;
    sumD = std::max(sumD, rep->maxSumDefect);
    prodD = std::max(prodD, rep->maxProductDefect);
  }
  return {ok, "max sum defect=" + fmt(sumD) + " max product defect=" + fmt(prodD)};
}

// 10. Window norms against a dense SVD on every window of at most 64 points.
Outcome bruteForce()
{
  std::size_t windows = 0;
  double worst = 0;
  const auto check = [&](const Space &s, const OperatorExpr &a, int omega)
  {
    for (double r = 0;; r++)
    {
      const Window k(s, Point::zeros(s.coords()), r);
      if (k.size() > 64)
      {
        break;
      }
      const Window kp(s, Point::zeros(s.coords()), r + omega);
      const Window k2(s, Point::zeros(s.coords()), r + 2 * omega);
      Eigen::JacobiSVD<Eigen::MatrixXcd> full(dense(a, kp.points(), k.points()));
      const double lower = full.singularValues()(full.singularValues().size() - 1);
      Eigen::JacobiSVD<Eigen::MatrixXcd> sub(dense(a, k.points(), k.points()));
      worst = std::max(worst, std::abs(windowNorm(a, k, k).upper - sub.singularValues()(0)));
      worst = std::max(worst, std::abs(windowNorm(a, k2, k).upper - full.singularValues()(0)));
      worst = std::max(worst, std::abs(lowerNormWindow(a, k) - lower));
      windows++;
    }
  };
  const auto z1 = Space::lattice(1);
  const auto z2 = Space::lattice(2);
  const auto z2l1 = Space::lattice(2, Metric::L1);
  const auto half = makeProjection(z1, Predicate::halfspace({1.0}, 0));
  check(z1, laplacian(z1), 1);
  check(z1, shiftOperator(z1), 1);
  check(z1, randomBand(z1, 2, 10), 2);
  check(z1, compress(shiftOperator(z1) - OperatorExpr::identity(z1), half), 1);
  check(z1, OperatorExpr::minusScalar(randomBand(z1, 1, 20), Complex(0.3, -0.4)), 1);
  check(z2, laplacian(z2), 1);
  check(z2, randomBand(z2, 1, 30), 1);
  check(z2l1, randomBand(z2l1, 2, 40), 2);
  return {worst <= 1e-10, std::to_string(windows) + " windows, max deviation=" + fmt(worst)};
}

// 11. CLI determinism across runs and thread counts.
Outcome determinism()
{
  const auto dir = std::filesystem::temp_directory_path() / "limitops_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const Json periodic = Json::parse(R"({
  "space": {"kind": "lattice", "dim": 1},
  "operator": {"op": "sum", "terms": [
    {"op": "laplacian"},
    {"op": "mult", "field": {"kind": "periodic", "period": [3], "table": [0.5, -0.25, [0, 0.3]]}}]},
  "sequences": [{"label": "right", "kind": "ray", "v": [3]}, {"label": "left", "kind": "ray", "v": [-3], "w": [1]}]
})");
  const Json random = Json::parse(R"({
  "space": {"kind": "lattice", "dim": 1},
  "operator": {"op": "band", "stencil": [
    {"offset": -1, "coeff": {"kind": "random"}},
    {"offset": 0, "coeff": {"kind": "random", "bound": 2}},
    {"offset": 2, "coeff": {"kind": "random"}}]},
  "params": {"scopeRadius": 80},
  "seed": 42
})");
  bool same = true;
  std::ostringstream d;
  for (const std::string task : {"bdo-diagnostic", "essential-spectrum", "fredholm"})
  {
    Json job = task == "bdo-diagnostic" ? random : periodic;
    if (task == "essential-spectrum")
    {
      job["params"] = {{"pitch", 0.05}, {"windowSchedule", {20, 40}}, {"method", "nuGrid"}};
    }
    else if (task == "fredholm")
    {
      job["params"] = {{"windowSchedule", {20, 40}}};
    }
    const auto cfg = dir / (task + ".json");
    std::ofstream(cfg) << job.dump(2);
    std::vector<std::string> docs;
    for (const char *threads : {"1", "8", "1", "8"})
    {
      const auto out = dir / (task + std::to_string(docs.size()));
      const std::string cmd = std::string(LIMITOPS_CLI_PATH) + " " + task + " --config " + cfg.string() +
                              " --out " + out.string() + " --threads " + threads + " 2>/dev/null";
      if (std::system(cmd.c_str()) != 0)
      {
        return {false, "CLI run failed: " + cmd};
      }
      std::ifstream in(out / (task + ".json"));
      Json doc = Json::parse(in);
      doc.erase("runtime");
      docs.push_back(doc.dump(2));
    }
    const bool eq = std::all_of(docs.begin(), docs.end(), [&](const std::string &x) { return x == docs[0]; });
    same = same && eq;
    d << task << ": 4 runs (threads 1, 8, 1, 8), " << docs[0].size() << " bytes" << (eq ? ", identical" : ", DIFFER")
      << "; ";
  }
  std::filesystem::remove_all(dir);
  return {same, d.str()};
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"covering invariants", covering},
      {"partition invariants", partition},
      {"commutator scaling", commutator},
      {"Laurent oracle equivalence", laurent},
      {"Toeplitz Fredholmness", toeplitzFredholm},
      {"slowly oscillating potential", slowlyOscillating},
      {"compactness characterization", compactness},
      {"lower-norm sandwich", sandwich},
      {"limit-operator algebra", algebra},
      {"brute-force equivalence", bruteForce},
      {"determinism", determinism}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); i++)
  {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = criteria[i].second();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << " [" << fmt(secs)
              << " s]: " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
