#include "limitops/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "limitops/errors.hpp"
#include "limitops/linalg.hpp"
#include "limitops/parallel.hpp"

namespace limitops
{

namespace
{

constexpr double kNormalTol = 1e-12;
constexpr double kAutoMargin = 0.1;

std::int64_t floorDiv(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
  {
    q--;
  }
  return q;
}

// Matrix samples of a symbol over a theta grid, with eigenvalues when the sample is normal.
struct SymbolTable
{
  int m = 1;
  std::vector<DenseMatrix> mats;
  std::vector<std::vector<Complex>> eig;
  std::vector<char> normal;

  void add(DenseMatrix mat)
  {
    const double scale = std::max(1.0, mat.norm());
    const bool isNormal =
        (mat * mat.adjoint() - mat.adjoint() * mat).norm() <= kNormalTol * scale * scale;
    Eigen::ComplexEigenSolver<DenseMatrix> es(mat, false);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + mat.rows());
    mats.push_back(std::move(mat));
    eig.push_back(std::move(ev));
    normal.push_back(isNormal ? 1 : 0);
  }

  double indicator(Complex z) const
  {
    double best = INFINITY;
    for (std::size_t k = 0; k < mats.size(); k++)
    {
      if (normal[k])
      {
        for (const auto &l : eig[k])
        {
          best = std::min(best, std::abs(l - z));
        }
      }
      else
      {
        DenseMatrix s = mats[k];
        s.diagonal().array() -= z;
        Eigen::JacobiSVD<DenseMatrix> svd(s);
        best = std::min(best, svd.singularValues()(m - 1));
      }
    }
    return best;
  }

  std::vector<Complex> values() const
  {
    std::vector<Complex> out;
    for (const auto &e : eig)
    {
      out.insert(out.end(), e.begin(), e.end());
    }
    return out;
  }
};

SymbolTable buildSymbol(const OperatorExpr &op, int thetaGrid)
{
  const Space &s = op.space();
  if (!s.isLattice())
  {
    throw UnsupportedError("symbol oracle needs a lattice space");
  }
  if (!op.isTranslationInvariant())
  {
    throw UnsupportedError("symbol oracle needs constant coefficients");
  }
  if (thetaGrid < 1)
  {
    throw InputError("theta grid must be positive");
  }
  const int d = s.dim();
  const int m = s.fiber();
  const int perAxis =
      d == 1 ? thetaGrid
             : std::max(8, static_cast<int>(std::lround(std::pow(thetaGrid, 1.0 / d))));
  std::vector<SparseRow> rows;
  for (int a = 0; a < m; a++)
  {
    Point x = Point::zeros(s.coords());
    if (m > 1)
    {
      x[d] = a;
    }
    rows.push_back(op.row(x));
  }
  SymbolTable t;
  t.m = m;
  std::int64_t total = 1;
  for (int i = 0; i < d; i++)
  {
    total *= perAxis;
  }
  for (std::int64_t idx = 0; idx < total; idx++)
  {
    std::vector<double> theta(static_cast<std::size_t>(d));
    std::int64_t r = idx;
    for (int i = 0; i < d; i++)
    {
      theta[static_cast<std::size_t>(i)] = 2 * std::numbers::pi * static_cast<double>(r % perAxis) / perAxis;
      r /= perAxis;
    }
    DenseMatrix mat = DenseMatrix::Zero(m, m);
    for (int a = 0; a < m; a++)
    {
      for (const auto &[y, v] : rows[static_cast<std::size_t>(a)])
      {
        double phase = 0;
        for (int i = 0; i < d; i++)
        {
          phase += static_cast<double>(y[i]) * theta[static_cast<std::size_t>(i)];
        }
        mat(a, m > 1 ? static_cast<int>(y[d]) : 0) += v * std::polar(1.0, phase);
      }
    }
    t.add(std::move(mat));
  }
  return t;
}

std::int64_t commonPeriod(const OperatorExpr &op)
{
  std::int64_t l = 1;
  op.visitLeaves(
      [&](const CoefficientField &f)
      {
        if (f.kind() == FieldKind::Periodic)
        {
          l = std::lcm(l, f.period().at(0));
        }
        else if (f.kind() != FieldKind::Constant)
        {
          throw UnsupportedError("Floquet oracle needs constant or periodic coefficients");
        }
      },
      [](const Predicate &) {});
  return l;
}

SymbolTable buildFloquet(const OperatorExpr &op, int thetaGrid)
{
  const Space &s = op.space();
  if (!s.isLattice() || s.dim() != 1 || s.fiber() != 1)
  {
    throw UnsupportedError("Floquet oracle needs the lattice Z");
  }
  if (!op.isPeriodic())
  {
    throw UnsupportedError("Floquet oracle needs constant or periodic coefficients");
  }
  if (thetaGrid < 1)
  {
    throw InputError("theta grid must be positive");
  }
  const std::int64_t l = commonPeriod(op);
  const int n = static_cast<int>(l);
  std::vector<SparseRow> rows;
  for (std::int64_t a = 0; a < l; a++)
  {
    rows.push_back(op.row(Point{a}));
  }
  SymbolTable t;
  t.m = n;
  for (int k = 0; k < thetaGrid; k++)
  {
    const double theta = 2 * std::numbers::pi * k / thetaGrid;
    DenseMatrix mat = DenseMatrix::Zero(n, n);
    for (int a = 0; a < n; a++)
    {
      for (const auto &[y, v] : rows[static_cast<std::size_t>(a)])
      {
        const std::int64_t q = floorDiv(y[0], l);
        const std::int64_t b = y[0] - q * l;
        mat(a, static_cast<int>(b)) += v * std::polar(1.0, static_cast<double>(q) * theta);
      }
    }
    t.add(std::move(mat));
  }
  return t;
}

struct GridBlock
{
  std::int64_t i0, i1, j0, j1;  // half-open index ranges

  std::int64_t ci() const { return floorDiv(i0 + i1, 2); }
  std::int64_t cj() const { return floorDiv(j0 + j1, 2); }
  bool single() const { return i1 - i0 == 1 && j1 - j0 == 1; }
  double radius(double pitch) const
  {
    const double di = static_cast<double>(std::max(ci() - i0, i1 - 1 - ci()));
    const double dj = static_cast<double>(std::max(cj() - j0, j1 - 1 - cj()));
    return pitch * std::hypot(di, dj);
  }
};

std::vector<double> usableRadii(const LimitOperator &lim, const std::vector<double> &schedule)
{
  std::vector<double> out;
  for (double r : schedule)
  {
    if (r + 2 * lim.op.propagation() <= lim.validRadius)
    {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

std::string toString(SpectrumMethod m)
{
  switch (m)
  {
    case SpectrumMethod::Auto:
      return "auto";
    case SpectrumMethod::SymbolOracle:
      return "symbolOracle";
    case SpectrumMethod::Floquet:
      return "floquet";
    case SpectrumMethod::NuGrid:
      return "nuGrid";
  }
  return "auto";
}

SpectrumMethod spectrumMethodFromString(const std::string &s)
{
  if (s == "auto")
  {
    return SpectrumMethod::Auto;
  }
  if (s == "symbolOracle")
  {
    return SpectrumMethod::SymbolOracle;
  }
  if (s == "floquet")
  {
    return SpectrumMethod::Floquet;
  }
  if (s == "nuGrid")
  {
    return SpectrumMethod::NuGrid;
  }
  throw InputError("unknown spectrum method '" + s + "'");
}

std::vector<Complex> symbolSpectrum(const OperatorExpr &op, int thetaGrid)
{
  return buildSymbol(op, thetaGrid).values();
}

std::vector<Complex> floquetSpectrum(const OperatorExpr &op, int thetaGrid)
{
  return buildFloquet(op, thetaGrid).values();
}

Indicator symbolIndicator(const OperatorExpr &op, int thetaGrid)
{
  auto t = std::make_shared<const SymbolTable>(buildSymbol(op, thetaGrid));
  return [t](Complex z) { return t->indicator(z); };
}

Indicator floquetIndicator(const OperatorExpr &op, int thetaGrid)
{
  auto t = std::make_shared<const SymbolTable>(buildFloquet(op, thetaGrid));
  return [t](Complex z) { return t->indicator(z); };
}

Indicator nuGridIndicator(const OperatorExpr &op, const Predicate &y, const Window &window)
{
  std::vector<Point> cols;
  for (const auto &x : window.points())
  {
    if (y.contains(x))
    {
      cols.push_back(x);
    }
  }
  if (cols.empty())
  {
    return [](Complex) { return INFINITY; };
  }
  const auto filter = [y](const Point &x) { return y.contains(x); };
  auto direct = std::make_shared<const ShiftedPencil>(assembleBlock(op, cols, filter, true));
  auto adj = std::make_shared<const ShiftedPencil>(
      assembleBlock(OperatorExpr::adjoint(op), cols, filter, true));
  return [direct, adj](Complex z)
  { return std::min(direct->smallestSingularValue(z), adj->smallestSingularValue(std::conj(z))); };
}

SpectrumEstimate gridCloud(const Indicator &ind, double pitch, double halfWidth, double tau)
{
  if (!(pitch > 0) || !(halfWidth >= 0) || !(tau >= 0))
  {
    throw InputError("grid needs pitch > 0, halfWidth >= 0 and tau >= 0");
  }
  SpectrumEstimate est;
  est.tau = tau;
  est.pitch = pitch;
  est.halfWidth = halfWidth;
  const auto n = static_cast<std::int64_t>(std::floor(halfWidth / pitch + 1e-9));
  std::map<std::pair<std::int64_t, std::int64_t>, double> memo;
  std::vector<GridBlock> level{{-n, n + 1, -n, n + 1}};
  while (!level.empty())
  {
    std::vector<std::pair<std::int64_t, std::int64_t>> todo;
    for (const auto &b : level)
    {
      const auto key = std::make_pair(b.ci(), b.cj());
      if (!memo.count(key))
      {
        memo.emplace(key, 0.0);
        todo.push_back(key);
      }
    }
    std::vector<double> vals(todo.size());
    parallelFor(todo.size(),
                [&](std::size_t k)
                {
                  const Complex z(static_cast<double>(todo[k].first) * pitch,
                                  static_cast<double>(todo[k].second) * pitch);
                  vals[k] = ind(z);
                });
    for (std::size_t k = 0; k < todo.size(); k++)
    {
      memo[todo[k]] = vals[k];
    }
    est.evaluations += todo.size();
    std::vector<GridBlock> next;
    for (const auto &b : level)
    {
      const double v = memo.at({b.ci(), b.cj()});
      if (b.single())
      {
        if (v <= tau)
        {
          est.points.push_back({Complex(static_cast<double>(b.ci()) * pitch,
                                        static_cast<double>(b.cj()) * pitch),
                                v, b.ci(), b.cj(), ""});
        }
        continue;
      }
      if (v - b.radius(pitch) > tau)
      {
        continue;
      }
      const std::int64_t mi = b.i1 - b.i0 > 1 ? floorDiv(b.i0 + b.i1, 2) : b.i1;
      const std::int64_t mj = b.j1 - b.j0 > 1 ? floorDiv(b.j0 + b.j1, 2) : b.j1;
      for (const auto &[a0, a1] : {std::pair{b.i0, mi}, std::pair{mi, b.i1}})
      {
        for (const auto &[c0, c1] : {std::pair{b.j0, mj}, std::pair{mj, b.j1}})
        {
          if (a0 < a1 && c0 < c1)
          {
            next.push_back({a0, a1, c0, c1});
          }
        }
      }
    }
    level = std::move(next);
  }
  std::sort(est.points.begin(), est.points.end(),
            [](const SpectrumPoint &a, const SpectrumPoint &b)
            { return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j); });
  return est;
}

EssentialSpectrumReport essentialSpectrumEstimate(const OperatorExpr &a,
                                                  const SubspaceProjection &proj,
                                                  const std::vector<LimitSequence> &seqs,
                                                  const SpectrumOptions &opts)
{
  if (seqs.empty())
  {
    throw InputError("essential spectrum estimate needs at least one sequence");
  }
  if (opts.windowSchedule.empty())
  {
    throw InputError("window schedule must be nonempty");
  }
  const OperatorExpr pap = compress(a, proj);
  EssentialSpectrumReport rep;
  rep.cloud.tau = opts.tau;
  rep.cloud.pitch = opts.pitch;
  rep.entries.resize(seqs.size());
  std::map<std::pair<std::int64_t, std::int64_t>, SpectrumPoint> merged;
  std::set<std::string> methods;
  for (std::size_t s = 0; s < seqs.size(); s++)
  {
    auto &e = rep.entries[s];
    e.label = seqs[s].label();
    auto r = limitOperator(pap, seqs[s], opts.limits.radii, opts.limits.tol);
    if (auto *d = std::get_if<DivergenceReport>(&r))
    {
      e.divergent = true;
      e.divergence = *d;
      rep.anyDivergent = true;
      continue;
    }
    const auto lim = std::get<LimitOperator>(std::move(r));
    e.limitMethods = lim.methods;
    auto yr = limitSet(a.space(), proj.y, seqs[s], opts.limits.radii, opts.limits.tol);
    if (auto *d = std::get_if<DivergenceReport>(&yr))
    {
      e.divergent = true;
      e.divergence = *d;
      rep.anyDivergent = true;
      continue;
    }
    const Predicate yx = std::get<PredicateLimit>(yr).predicate;
    if (yx.kind() == PredicateKind::None)
    {
      e.skipped = true;
      e.note = "limit subspace is empty";
      continue;
    }
    SpectrumMethod m = opts.method;
    if (m == SpectrumMethod::Auto)
    {
      const bool full = yx.kind() == PredicateKind::All;
      const Space &sp = a.space();
      if (full && lim.op.isTranslationInvariant())
      {
        m = SpectrumMethod::SymbolOracle;
      }
      else if (full && lim.op.isPeriodic() && sp.dim() == 1 && sp.fiber() == 1)
      {
        m = SpectrumMethod::Floquet;
      }
      else
      {
        m = SpectrumMethod::NuGrid;
      }
    }
    e.method = toString(m);
    Indicator ind;
    switch (m)
    {
      case SpectrumMethod::SymbolOracle:
        ind = symbolIndicator(lim.op, opts.thetaGrid);
        break;
      case SpectrumMethod::Floquet:
        ind = floquetIndicator(lim.op, opts.thetaGrid);
        break;
      default:
      {
        const auto radii = usableRadii(lim, opts.windowSchedule);
        if (radii.empty())
        {
          e.skipped = true;
          e.note = "limit is only known on a window too small for the schedule";
          continue;
        }
        e.windowRadius = radii.back();
        const Window w(a.space(), Point::zeros(a.space().coords()), e.windowRadius);
        ind = nuGridIndicator(lim.op, yx, w);
        break;
      }
    }
    methods.insert(e.method);
    const double hw = opts.halfWidth > 0 ? opts.halfWidth : lim.op.normBound() + kAutoMargin;
    rep.cloud.halfWidth = std::max(rep.cloud.halfWidth, hw);
    auto cloud = gridCloud(ind, opts.pitch, hw, opts.tau);
    e.cloudSize = cloud.points.size();
    e.evaluations = cloud.evaluations;
    rep.cloud.evaluations += cloud.evaluations;
    for (auto &p : cloud.points)
    {
      p.source = e.label;
      const auto key = std::make_pair(p.i, p.j);
      auto it = merged.find(key);
      if (it == merged.end() || p.indicator < it->second.indicator)
      {
        merged[key] = p;
      }
    }
  }
  for (auto &[k, p] : merged)
  {
    rep.cloud.points.push_back(p);
  }
  if (methods.size() == 1)
  {
    rep.cloud.method = *methods.begin();
  }
  else
  {
    rep.cloud.method = methods.empty() ? "none" : "mixed";
  }
  std::string labels;
  for (const auto &s : seqs)
  {
    labels += (labels.empty() ? "" : ",") + s.label();
  }
  rep.cloud.limitLabel = labels;
  return rep;
}

double directedHausdorff(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
  if (a.empty())
  {
    return 0;
  }
  if (b.empty())
  {
    return INFINITY;
  }
  std::vector<Complex> sb = b;
  std::sort(sb.begin(), sb.end(),
            [](Complex x, Complex y) { return std::make_pair(x.real(), x.imag()) < std::make_pair(y.real(), y.imag()); });
  double worst = 0;
  for (const auto &p : a)
  {
    auto it = std::lower_bound(sb.begin(), sb.end(), p.real(),
                               [](Complex x, double re) { return x.real() < re; });
    double best = INFINITY;
    for (auto r = it; r != sb.end() && r->real() - p.real() < best; ++r)
    {
      best = std::min(best, std::abs(*r - p));
    }
    for (auto l = it; l != sb.begin();)
    {
      --l;
      if (p.real() - l->real() >= best)
      {
        break;
      }
      best = std::min(best, std::abs(*l - p));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
  return std::max(directedHausdorff(a, b), directedHausdorff(b, a));
}

}  // namespace limitops
