#include "limitops/norms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "limitops/errors.hpp"
#include "limitops/parallel.hpp"

namespace limitops
{

std::vector<Complex> apply(const OperatorExpr &a, const FiniteVector &f, const Window &outWindow)
{
  const Space &space = a.space();
  const double prop = a.propagation();
  for (const auto &[x, v] : f)
  {
    if (v != Complex(0.0) && !ballContains(space, outWindow.ball(), x, prop))
    {
      throw TruncationError("support point " + x.str() + " is within propagation " +
                            std::to_string(prop) + " of the output window boundary");
    }
  }
  std::vector<Complex> out(outWindow.size(), 0.0);
  for (const auto &[x, v] : f)
  {
    if (v == Complex(0.0))
    {
      continue;
    }
    for (const auto &[y, c] : a.column(x))
    {
      out[static_cast<std::size_t>(outWindow.indexOf(y))] += c * v;
    }
  }
  return out;
}

namespace
{

NormInterval blockNorm(const SparseMatrix &m, double p)
{
  if (p == 2)
  {
    const double s = largestSingularValue(m);
    return {s, s};
  }
  return pNormInterval(m, p);
}

void checkExponent(double p)
{
  if (!(p > 1) || !std::isfinite(p))
  {
    throw InputError("exponent p must lie in (1, inf)");
  }
}

}  // namespace

NormInterval windowNorm(const OperatorExpr &a, const std::vector<Point> &k,
                        const std::vector<Point> &kPrime, double p)
{
  checkExponent(p);
  std::unordered_set<Point, PointHash> rows(k.begin(), k.end());
  const Block b = assembleBlock(a, kPrime, [&](const Point &y) { return rows.count(y) > 0; });
  return blockNorm(b.m, p);
}

NormInterval windowNorm(const OperatorExpr &a, const Window &k, const Window &kPrime, double p)
{
  return windowNorm(a, k.points(), kPrime.points(), p);
}

NormInterval columnNorm(const OperatorExpr &a, const std::vector<Point> &kPrime, double p)
{
  checkExponent(p);
  return blockNorm(assembleBlock(a, kPrime).m, p);
}

NormInterval commutatorStackNorm(const OperatorExpr &a, const PartitionOfUnity &phi,
                                 const Window &scope)
{
  const Space &space = a.space();
  const double prop = a.propagation();
  if (!ballContains(space, phi.scope(), scope.center(), scope.radius() + prop))
  {
    throw InputError("partition scope does not contain the evaluation scope padded by prop(A)");
  }
  std::vector<Point> cols = scope.points();
  std::sort(cols.begin(), cols.end());

  struct Key
  {
    Point j;
    Point x;
    bool operator==(const Key &o) const { return j == o.j && x == o.x; }
  };
  struct KeyHash
  {
    std::size_t operator()(const Key &k) const noexcept
    {
      return PointHash{}(k.j) * 1000003u ^ PointHash{}(k.x);
    }
  };
  std::unordered_map<Key, int, KeyHash> rowIndex;
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::size_t c = 0; c < cols.size(); c++)
  {
    const Point &y = cols[c];
    const auto ty = phi.termsAt(y);
    for (const auto &[x, axy] : a.column(y))
    {
      const auto tx = phi.termsAt(x);
      // Merge the two sorted term lists by index.
      std::size_t i = 0, k = 0;
      while (i < ty.size() || k < tx.size())
      {
        Point j;
        double py = 0, px = 0;
        if (k >= tx.size() || (i < ty.size() && ty[i].index < tx[k].index))
        {
          j = ty[i].index;
          py = ty[i++].phi;
        }
        else if (i >= ty.size() || tx[k].index < ty[i].index)
        {
          j = tx[k].index;
          px = tx[k++].phi;
        }
        else
        {
          j = ty[i].index;
          py = ty[i++].phi;
          px = tx[k++].phi;
        }
        if (py == px)
        {
          continue;
        }
        auto it = rowIndex.try_emplace(Key{j, x}, static_cast<int>(rowIndex.size())).first;
        trips.emplace_back(it->second, static_cast<int>(c), axy * (py - px));
      }
    }
  }
  SparseMatrix m(static_cast<Eigen::Index>(rowIndex.size()), static_cast<Eigen::Index>(cols.size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return blockNorm(m, phi.p());
}

BdoDiagnostic bdoDiagnostic(const OperatorExpr &a, const std::vector<double> &tGrid,
                            const Window &scope, double p)
{
  checkExponent(p);
  if (tGrid.empty())
  {
    throw InputError("t-grid must be nonempty");
  }
  for (std::size_t i = 1; i < tGrid.size(); i++)
  {
    if (!(tGrid[i] < tGrid[i - 1]))
    {
      throw InputError("t-grid must be strictly decreasing");
    }
  }
  BdoDiagnostic d;
  d.t = tGrid;
  d.values.resize(tGrid.size());
  const Ball partScope{scope.center(), scope.radius() + a.propagation()};
  parallelFor(tGrid.size(),
              [&](std::size_t i)
              {
                const auto part = buildPartition(a.space(), tGrid[i], p, partScope);
                d.values[i] = commutatorStackNorm(a, part, scope);
              });
  bool allZero = true;
  for (std::size_t i = 0; i < tGrid.size(); i++)
  {
    d.ratios.push_back(d.values[i].upper / std::pow(tGrid[i], 1.0 / p));
    allZero = allZero && d.values[i].upper == 0;
  }
  d.fittedC = d.ratios.front();
  if (allZero)
  {
    d.classification = "band-consistent";
    return d;
  }
  double maxRatio = 0;
  double minRatio = INFINITY;
  for (double r : d.ratios)
  {
    maxRatio = std::max(maxRatio, r);
    minRatio = std::min(minRatio, r);
  }
  d.maxRatioSpread = minRatio > 0 ? maxRatio / minRatio : INFINITY;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < tGrid.size(); i++)
  {
    if (d.values[i].upper > 0)
    {
      pts.emplace_back(std::log(tGrid[i]), std::log(d.values[i].upper));
    }
  }
  if (pts.size() >= 2)
  {
    double mx = 0, my = 0;
    for (auto &[x, y] : pts)
    {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0, sxx = 0;
    for (auto &[x, y] : pts)
    {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    d.fittedExponent = sxy / sxx;
  }
  d.classification = d.maxRatioSpread <= 2.0 ? "band-consistent" : "inconclusive";
  return d;
}

std::vector<Point> intersect(const Predicate &f, const Window &scope)
{
  std::vector<Point> out;
  for (const auto &x : scope.points())
  {
    if (f.contains(x))
    {
      out.push_back(x);
    }
  }
  return out;
}

RestrictedNorm restrictedNorm(const OperatorExpr &a, const Predicate &f, const Window &scope,
                              double p)
{
  checkExponent(p);
  RestrictedNorm r;
  const auto cols = intersect(f, scope);
  r.columns = cols.size();
  r.centers = 1;
  if (cols.empty())
  {
    r.warning = "F does not meet the scope; norm reported as 0";
    return r;
  }
  r.norm = columnNorm(a, cols, p);
  return r;
}

std::vector<std::vector<Point>> localizedSupports(const Space &space, const Predicate &f,
                                                  const Window &scope, double r)
{
  const auto inF = intersect(f, scope);
  std::vector<std::vector<Point>> out;
  if (inF.empty())
  {
    return out;
  }
  std::set<std::vector<Point>> seen;
  for (const auto &x : scope.points())
  {
    std::vector<Point> s;
    for (const auto &y : inF)
    {
      if (space.dist(x, y) <= r + 1e-9)
      {
        s.push_back(y);
      }
    }
    if (s.empty())
    {
      continue;
    }
    std::sort(s.begin(), s.end());
    if (seen.insert(s).second)
    {
      out.push_back(std::move(s));
    }
  }
  return out;
}

RestrictedNorm localizedNorm(const OperatorExpr &a, const Predicate &f, const PartitionOfUnity &phi,
                             const Window &scope)
{
  RestrictedNorm r;
  const auto supports = localizedSupports(a.space(), f, scope, phi.supportDiameter());
  r.centers = supports.size();
  if (supports.empty())
  {
    r.warning = "F does not meet the scope; norm reported as 0";
    return r;
  }
  std::vector<NormInterval> vals(supports.size());
  parallelFor(supports.size(),
              [&](std::size_t i) { vals[i] = columnNorm(a, supports[i], phi.p()); });
  for (std::size_t i = 0; i < vals.size(); i++)
  {
    r.norm.lower = std::max(r.norm.lower, vals[i].lower);
    r.norm.upper = std::max(r.norm.upper, vals[i].upper);
    r.columns = std::max(r.columns, supports[i].size());
  }
  return r;
}

}  // namespace limitops
