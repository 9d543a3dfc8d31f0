#include "limitops/limits.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "limitops/errors.hpp"
#include "limitops/norms.hpp"

namespace limitops
{

namespace
{

constexpr std::int64_t kResidueTail = 8;

std::int64_t floorMod(std::int64_t a, std::int64_t m)
{
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

Point origin(const Space &space)
{
  return Point::zeros(space.coords());
}

DivergenceReport diverge(const LimitSequence &seq, std::string reason, std::int64_t n1,
                         std::int64_t n2, double radius, double gap, double tol)
{
  return {seq.label(), std::move(reason), n1, n2, radius, gap, tol};
}

// First pair of consecutive tail indices whose residues mod `mod` differ, if any.
std::optional<std::pair<std::int64_t, std::int64_t>> residueBreak(
    const LimitSequence &seq, const std::vector<std::int64_t> &mod)
{
  const std::int64_t last = seq.count() - 1;
  const std::int64_t first = std::max<std::int64_t>(0, last - kResidueTail + 1);
  auto residue = [&](std::int64_t n)
  {
    const Point x = seq.at(n);
    std::vector<std::int64_t> r;
    for (std::size_t i = 0; i < mod.size() && static_cast<int>(i) < x.size(); i++)
    {
      r.push_back(floorMod(x[static_cast<int>(i)], mod[i]));
    }
    return r;
  };
  const auto ref = residue(last);
  for (std::int64_t n = last - 1; n >= first; n--)
  {
    if (residue(n) != ref)
    {
      return std::make_pair(n, n + 1);
    }
  }
  return std::nullopt;
}

bool rayMatchesPeriod(const Point &v, const std::vector<std::int64_t> &mod)
{
  for (std::size_t i = 0; i < mod.size() && static_cast<int>(i) < v.size(); i++)
  {
    if (floorMod(v[static_cast<int>(i)], mod[i]) != 0)
    {
      return false;
    }
  }
  return true;
}

bool periodicInvariant(const CoefficientField &f, const Point &v)
{
  const auto &period = f.period();
  Point z = Point::zeros(static_cast<int>(period.size()));
  const CoefficientField g = f.translated(v);
  while (true)
  {
    if (f.at(z) != g.at(z))
    {
      return false;
    }
    int i = z.size() - 1;
    while (i >= 0 && z[i] == period[static_cast<std::size_t>(i)] - 1)
    {
      z[i] = 0;
      i--;
    }
    if (i < 0)
    {
      return true;
    }
    z[i]++;
  }
}

std::vector<Complex> sample(const Space &space, const CoefficientField &f, const Point &x,
                            const Window &w)
{
  std::vector<Complex> v;
  v.reserve(w.size());
  for (const auto &y : w.points())
  {
    const Complex c = f.at(space.add(x, y));
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
    {
      throw InputError("coefficient evaluation overflow at " + space.add(x, y).str());
    }
    v.push_back(c);
  }
  return v;
}

FieldLimitResult sampledFieldLimit(const Space &space, const CoefficientField &f,
                                   const LimitSequence &seq, double radius, double tol)
{
  const Window w(space, origin(space), radius);
  const auto sched = seq.schedule();
  const std::int64_t last = sched.back();
  const std::int64_t prev = sched[sched.size() - 2];
  const auto vLast = sample(space, f, seq.at(last), w);
  // the dyadic predecessor and the immediate predecessor
  for (const std::int64_t other : {prev, last - 1})
  {
    const auto vOther = sample(space, f, seq.at(other), w);
    double gap = 0;
    for (std::size_t i = 0; i < vLast.size(); i++)
    {
      gap = std::max(gap, std::abs(vLast[i] - vOther[i]));
    }
    if (!(gap < tol))
    {
      return diverge(seq, "coefficient samples are not Cauchy along the schedule", other, last, radius,
                     gap, tol);
    }
  }
  const auto c0 = vLast[static_cast<std::size_t>(w.indexOf(origin(space)))];
  double osc = 0;
  for (const auto &c : vLast)
  {
    osc = std::max(osc, std::abs(c - c0));
  }
  FieldLimit out;
  out.index = last;
  if (osc < tol)
  {
    out.field = CoefficientField::constant(c0);
    out.method = "sampled-constant";
    return out;
  }
  std::map<Point, Complex> entries;
  for (std::size_t i = 0; i < vLast.size(); i++)
  {
    entries.emplace(w.points()[i], vLast[i]);
  }
  out.field = CoefficientField::table(std::move(entries), 0.0);
  out.method = "sampled-window";
  out.exact = false;
  out.validRadius = radius;
  return out;
}

bool boxClear(const Point &p, double radius)
{
  for (int i = 0; i < p.size(); i++)
  {
    if (std::abs(static_cast<double>(p[i])) <= radius)
    {
      continue;
    }
    return true;
  }
  return false;
}

}  // namespace

FieldLimitResult limitField(const Space &space, const CoefficientField &f, const LimitSequence &seq,
                            double sampleRadius, double tol)
{
  if (!space.isLattice())
  {
    throw UnsupportedError("limit operators need a lattice translation action");
  }
  const std::int64_t last = seq.count() - 1;
  switch (f.kind())
  {
    case FieldKind::Constant:
      return FieldLimit{f, "constant", true, INFINITY, last};
    case FieldKind::Periodic:
    {
      const auto &period = f.period();
      if (auto ray = seq.asRay())
      {
        if (rayMatchesPeriod(ray->first, period) || periodicInvariant(f, ray->first))
        {
          return FieldLimit{f.translated(ray->second), "periodic-residue", true, INFINITY, last};
        }
        return diverge(seq, "periodic coefficient is not constant along the residue classes of the ray",
                       last - 1, last, 0, 0, tol);
      }
      if (auto br = residueBreak(seq, period))
      {
        return diverge(seq, "sequence residues modulo the period do not stabilize", br->first,
                       br->second, 0, 0, tol);
      }
      return FieldLimit{f.translated(seq.at(last)), "periodic-residue", true, INFINITY, last};
    }
    case FieldKind::Table:
    {
      const Point x = seq.at(last);
      bool clear = true;
      for (const auto &[p, v] : f.tableEntries())
      {
        const Point rel = p - (f.offset().size() ? x + f.offset() : x);
        if (v != f.tail() && !boxClear(rel, sampleRadius))
        {
          clear = false;
          break;
        }
      }
      if (clear)
      {
        return FieldLimit{CoefficientField::constant(f.tail()), "table-tail", true, INFINITY, last};
      }
      return sampledFieldLimit(space, f, seq, sampleRadius, tol);
    }
    case FieldKind::Expression:
    case FieldKind::SeededRandom:
      return sampledFieldLimit(space, f, seq, sampleRadius, tol);
  }
  return sampledFieldLimit(space, f, seq, sampleRadius, tol);
}

namespace
{

PredicateLimitResult sampledSetLimit(const Space &space, const Predicate &y, const LimitSequence &seq,
                                     double radius, double tol)
{
  const Window w(space, origin(space), radius);
  const auto sched = seq.schedule();
  const std::int64_t last = sched.back();
  const std::int64_t prev = sched[sched.size() - 2];
  const Point xl = seq.at(last);
  const Point xp = seq.at(prev);
  std::set<Point> in;
  for (const auto &p : w.points())
  {
    const bool a = y.contains(space.add(xl, p));
    if (a != y.contains(space.add(xp, p)))
    {
      return diverge(seq, "indicator samples are not Cauchy along the schedule", prev, last, radius,
                     1.0, tol);
    }
    if (a)
    {
      in.insert(p);
    }
  }
  PredicateLimit out;
  out.index = last;
  if (in.size() == w.size())
  {
    out.predicate = Predicate::all();
    out.method = "sampled-all";
  }
  else if (in.empty())
  {
    out.predicate = Predicate::none();
    out.method = "sampled-none";
  }
  else
  {
    out.predicate = Predicate::explicitSet(std::move(in));
    out.method = "sampled-window";
    out.exact = false;
    out.validRadius = radius;
  }
  return out;
}

}  // namespace

PredicateLimitResult limitSet(const Space &space, const Predicate &y, const LimitSequence &seq,
                              const std::vector<double> &radii, double tol)
{
  if (!space.isLattice())
  {
    throw UnsupportedError("limit operators need a lattice translation action");
  }
  if (radii.empty())
  {
    throw InputError("radii must be nonempty");
  }
  const double radius = *std::max_element(radii.begin(), radii.end());
  const std::int64_t last = seq.count() - 1;
  switch (y.kind())
  {
    case PredicateKind::All:
    case PredicateKind::None:
      return PredicateLimit{y, "constant", true, INFINITY, last};
    case PredicateKind::Halfspace:
      if (auto ray = seq.asRay())
      {
        double s = 0;
        const auto &a = y.normal();
        for (std::size_t i = 0; i < a.size() && static_cast<int>(i) < ray->first.size(); i++)
        {
          s += a[i] * static_cast<double>(ray->first[static_cast<int>(i)]);
        }
        if (s > 0)
        {
          return PredicateLimit{Predicate::all(), "halfspace-ray", true, INFINITY, last};
        }
        if (s < 0)
        {
          return PredicateLimit{Predicate::none(), "halfspace-ray", true, INFINITY, last};
        }
        return PredicateLimit{y.translated(ray->second), "halfspace-ray", true, INFINITY, last};
      }
      return sampledSetLimit(space, y, seq, radius, tol);
    case PredicateKind::Sublattice:
      if (auto ray = seq.asRay())
      {
        if (rayMatchesPeriod(ray->first, y.modulus()))
        {
          return PredicateLimit{y.translated(ray->second), "sublattice-residue", true, INFINITY, last};
        }
        return diverge(seq, "sublattice indicator alternates along the ray", last - 1, last, 0, 1.0,
                       tol);
      }
      if (auto br = residueBreak(seq, y.modulus()))
      {
        return diverge(seq, "sequence residues modulo the sublattice do not stabilize", br->first,
                       br->second, 0, 1.0, tol);
      }
      return PredicateLimit{y.translated(seq.at(last)), "sublattice-residue", true, INFINITY, last};
    case PredicateKind::Explicit:
    {
      const Point x = seq.at(last);
      bool clear = true;
      for (const auto &p : y.points())
      {
        if (!boxClear(p - x, radius))
        {
          clear = false;
          break;
        }
      }
      if (clear)
      {
        return PredicateLimit{Predicate::none(), "explicit-escape", true, INFINITY, last};
      }
      return sampledSetLimit(space, y, seq, radius, tol);
    }
    case PredicateKind::Expression:
      return sampledSetLimit(space, y, seq, radius, tol);
  }
  return sampledSetLimit(space, y, seq, radius, tol);
}

double certificateGap(const OperatorExpr &a, const OperatorExpr &lim, const Point &x, double radius)
{
  const Space &space = a.space();
  const double omega = std::max(a.propagation(), lim.propagation());
  const Window k(space, origin(space), radius);
  const Window kp(space, origin(space), radius + omega);
  return windowNorm(conjugate(a, x) - lim, k, kp).upper;
}

LimitResult limitOperator(const OperatorExpr &a, const LimitSequence &seq,
                          const std::vector<double> &radii, double tol)
{
  if (radii.empty())
  {
    throw InputError("radii must be nonempty");
  }
  for (std::size_t i = 1; i < radii.size(); i++)
  {
    if (!(radii[i] > radii[i - 1]))
    {
      throw InputError("radii must be increasing");
    }
  }
  const Space &space = a.space();
  const double rMax = radii.back();
  const double sampleRadius = rMax + 2 * a.propagation();
  std::optional<DivergenceReport> failure;
  LimitOperator out;
  out.label = seq.label();
  out.index = seq.count() - 1;
  out.point = seq.at(out.index);
  auto note = [&](const std::string &m)
  {
    if (std::find(out.methods.begin(), out.methods.end(), m) == out.methods.end())
    {
      out.methods.push_back(m);
    }
  };
  out.op = a.mapLeaves(
      [&](const CoefficientField &f) -> CoefficientField
      {
        if (failure)
        {
          return f;
        }
        auto r = limitField(space, f, seq, sampleRadius, tol);
        if (auto *d = std::get_if<DivergenceReport>(&r))
        {
          failure = *d;
          return f;
        }
        auto &l = std::get<FieldLimit>(r);
        out.exact = out.exact && l.exact;
        out.validRadius = std::min(out.validRadius, l.validRadius);
        note(l.method);
        return l.field;
      },
      [&](const Predicate &p) -> Predicate
      {
        if (failure)
        {
          return p;
        }
        auto r = limitSet(space, p, seq, {sampleRadius}, tol);
        if (auto *d = std::get_if<DivergenceReport>(&r))
        {
          failure = *d;
          return p;
        }
        auto &l = std::get<PredicateLimit>(r);
        out.exact = out.exact && l.exact;
        out.validRadius = std::min(out.validRadius, l.validRadius);
        note(l.method);
        return l.predicate;
      });
  if (failure)
  {
    return *failure;
  }
  for (double r : radii)
  {
    const double gap = certificateGap(a, out.op, out.point, r);
    if (!(gap <= tol))
    {
      return diverge(seq, "window gap to the extracted limit exceeds tol", out.index, out.index, r,
                     gap, tol);
    }
    out.certificate.push_back({r, out.index, gap, gap});
  }
  double tail = 0;
  for (std::size_t i = out.certificate.size(); i-- > 0;)
  {
    tail = std::max(tail, out.certificate[i].measuredGap);
    out.certificate[i].recordedGap = tail;
  }
  return out;
}

std::variant<LimitAlgebraReport, DivergenceReport> limitAlgebraCheck(
    const OperatorExpr &a, const OperatorExpr &b, const LimitSequence &seq,
    const std::vector<double> &radii, double tol)
{
  const OperatorExpr sum = a + b;
  const OperatorExpr prod = a * b;
  std::vector<LimitOperator> lims;
  for (const auto *e : {&a, &b, &sum, &prod})
  {
    auto r = limitOperator(*e, seq, radii, tol);
    if (auto *d = std::get_if<DivergenceReport>(&r))
    {
      return *d;
    }
    lims.push_back(std::get<LimitOperator>(std::move(r)));
  }
  const Space &space = a.space();
  const OperatorExpr &ax = lims[0].op;
  const OperatorExpr &bx = lims[1].op;
  LimitAlgebraReport rep;
  rep.label = seq.label();
  rep.normBound = a.normBound();
  const double omega = prod.propagation();
  for (double r : radii)
  {
    const Window k(space, origin(space), r);
    const Window kp(space, origin(space), r + omega);
    AlgebraDefect d;
    d.radius = r;
    d.sumDefect = windowNorm(lims[2].op - (ax + bx), k, kp).upper;
    d.productDefect = windowNorm(lims[3].op - ax * bx, k, kp).upper;
    d.limitWindowNorm = windowNorm(ax, k, kp).upper;
    rep.maxSumDefect = std::max(rep.maxSumDefect, d.sumDefect);
    rep.maxProductDefect = std::max(rep.maxProductDefect, d.productDefect);
    rep.normBoundRespected = rep.normBoundRespected && d.limitWindowNorm <= rep.normBound + 1e-9;
    rep.defects.push_back(d);
  }
  rep.withinTolerance = rep.maxSumDefect <= tol && rep.maxProductDefect <= tol;
  return rep;
}

}  // namespace limitops
