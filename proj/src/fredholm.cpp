#include "limitops/fredholm.hpp"

#include <algorithm>
#include <cmath>

#include "limitops/errors.hpp"
#include "limitops/parallel.hpp"

namespace limitops
{

namespace
{

constexpr double kStableChange = 0.01;

Point centerOf(const Space &space, const Point &center)
{
  if (center.size() > 0)
  {
    return center;
  }
  if (space.basepoint().size() > 0)
  {
    return space.basepoint();
  }
  return Point::zeros(space.coords());
}

// Radii whose windows only touch coefficients inside the limit's valid region.
std::vector<double> usableSchedule(const LimitOperator &lim, const std::vector<double> &schedule)
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

double lowerNormWindow(const OperatorExpr &b, const std::vector<Point> &support, double p)
{
  if (!(p > 1) || !std::isfinite(p))
  {
    throw InputError("exponent p must lie in (1, inf)");
  }
  if (support.empty())
  {
    return INFINITY;
  }
  const Block blk = assembleBlock(b, support);
  return p == 2 ? smallestSingularValue(blk.m) : lowerPNormUpper(blk.m, p);
}

double lowerNormWindow(const OperatorExpr &b, const Window &support, double p)
{
  return lowerNormWindow(b, support.points(), p);
}

LocalizedLowerNorm lowerNormRestricted(const OperatorExpr &b, const Predicate &f,
                                       const Window &scope, double p)
{
  LocalizedLowerNorm r;
  const auto cols = intersect(f, scope);
  if (cols.empty())
  {
    r.warning = "F does not meet the scope; lower norm reported as +inf";
    return r;
  }
  r.centers = 1;
  r.value = lowerNormWindow(b, cols, p);
  return r;
}

LocalizedLowerNorm lowerNormLocalized(const OperatorExpr &b, const Predicate &f,
                                      const PartitionOfUnity &phi, const Window &scope)
{
  LocalizedLowerNorm r;
  const auto supports = localizedSupports(b.space(), f, scope, phi.supportDiameter());
  if (supports.empty())
  {
    r.warning = "F does not meet the scope; lower norm reported as +inf";
    return r;
  }
  std::vector<double> vals(supports.size());
  parallelFor(supports.size(),
              [&](std::size_t i) { vals[i] = lowerNormWindow(b, supports[i], phi.p()); });
  r.centers = supports.size();
  r.value = *std::min_element(vals.begin(), vals.end());
  return r;
}

std::string toString(InvertibilityVerdict v)
{
  switch (v)
  {
    case InvertibilityVerdict::NotInvertibleAtLevel:
      return "notInvertibleAtLevel";
    case InvertibilityVerdict::EvidenceInvertible:
      return "evidenceInvertible";
    case InvertibilityVerdict::Inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

InvertibilityEstimate invertibilityEstimate(const OperatorExpr &b,
                                            const std::vector<double> &windowSchedule, double tau,
                                            double p, const Point &center)
{
  if (windowSchedule.empty())
  {
    throw InputError("window schedule must be nonempty");
  }
  for (std::size_t i = 1; i < windowSchedule.size(); i++)
  {
    if (!(windowSchedule[i] > windowSchedule[i - 1]))
    {
      throw InputError("window schedule must be increasing");
    }
  }
  const Point c = centerOf(b.space(), center);
  const OperatorExpr bStar = OperatorExpr::adjoint(b);
  InvertibilityEstimate est;
  est.tau = tau;
  est.steps.resize(windowSchedule.size());
  parallelFor(windowSchedule.size() * 2,
              [&](std::size_t k)
              {
                const std::size_t i = k / 2;
                const Window w(b.space(), c, windowSchedule[i]);
                est.steps[i].radius = windowSchedule[i];
                est.steps[i].columns = w.size();
                if (k % 2 == 0)
                {
                  est.steps[i].nu = lowerNormWindow(b, w, p);
                }
                else
                {
                  est.steps[i].nuStar = lowerNormWindow(bStar, w, p / (p - 1));
                }
              });
  for (auto &s : est.steps)
  {
    est.nuUpper = std::min(est.nuUpper, s.nu);
    est.nuStarUpper = std::min(est.nuStarUpper, s.nuStar);
    s.nuUpper = est.nuUpper;
    s.nuStarUpper = est.nuStarUpper;
  }
  est.margin = std::min(est.nuUpper, est.nuStarUpper);
  if (est.margin < tau)
  {
    est.verdict = InvertibilityVerdict::NotInvertibleAtLevel;
    return est;
  }
  const auto &last = est.steps.back();
  for (std::size_t i = est.steps.size() - 1; i-- > 0;)
  {
    if (est.steps[i].radius <= last.radius / 2)
    {
      const auto &prev = est.steps[i];
      est.lastRelativeChange = std::max((prev.nuUpper - last.nuUpper) / last.nuUpper,
                                        (prev.nuStarUpper - last.nuStarUpper) / last.nuStarUpper);
      break;
    }
  }
  est.verdict = est.lastRelativeChange < kStableChange ? InvertibilityVerdict::EvidenceInvertible
                                                       : InvertibilityVerdict::Inconclusive;
  return est;
}

CompactnessReport compactnessTest(const OperatorExpr &a, const std::vector<LimitSequence> &seqs,
                                  const LimitOptions &opts)
{
  if (seqs.empty())
  {
    throw InputError("compactness test needs at least one sequence");
  }
  CompactnessReport rep;
  rep.entries.resize(seqs.size());
  parallelFor(seqs.size(),
              [&](std::size_t i)
              {
                auto &e = rep.entries[i];
                e.label = seqs[i].label();
                auto r = limitOperator(a, seqs[i], opts.radii, opts.tol);
                if (auto *d = std::get_if<DivergenceReport>(&r))
                {
                  e.divergent = true;
                  e.divergence = *d;
                  return;
                }
                e.limit = std::get<LimitOperator>(std::move(r));
                const Space &s = a.space();
                const Point o = Point::zeros(s.coords());
                for (double rad : opts.radii)
                {
                  const Window k(s, o, rad);
                  const Window kp(s, o, rad + e.limit.op.propagation());
                  e.gaps.push_back(windowNorm(e.limit.op, k, kp).upper);
                }
              });
  bool divergent = false;
  bool compact = true;
  for (const auto &e : rep.entries)
  {
    divergent = divergent || e.divergent;
    for (double g : e.gaps)
    {
      rep.maxGap = std::max(rep.maxGap, g);
      compact = compact && g <= opts.tol;
    }
  }
  rep.verdict = !compact ? "not-compact" : (divergent ? "divergent" : "compact-consistent");
  return rep;
}

FredholmReport fredholmTest(const OperatorExpr &a, const SubspaceProjection &proj,
                            const std::vector<LimitSequence> &seqs, const FredholmOptions &opts)
{
  if (seqs.empty())
  {
    throw InputError("fredholm test needs at least one sequence");
  }
  const OperatorExpr ahat = hat(a, proj);
  FredholmReport rep;
  rep.rationale =
      "each limit operator of AP+Q is translation-covariant along its sequence, so its lower norm "
      "is scanned on nested windows at the basepoint; small values certify non-invertibility, "
      "stabilized large values are evidence only";
  rep.entries.resize(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); i++)
  {
    auto &e = rep.entries[i];
    e.label = seqs[i].label();
    auto r = limitOperator(ahat, seqs[i], opts.limits.radii, opts.limits.tol);
    if (auto *d = std::get_if<DivergenceReport>(&r))
    {
      e.divergent = true;
      e.divergence = *d;
      continue;
    }
    e.limit = std::get<LimitOperator>(std::move(r));
    e.schedule = usableSchedule(e.limit, opts.windowSchedule);
    if (e.schedule.empty())
    {
      e.note = "limit is only known on a window too small for the schedule";
      continue;
    }
    e.estimate = invertibilityEstimate(e.limit.op, e.schedule, opts.tau, opts.p,
                                       Point::zeros(a.space().coords()));
  }
  bool anyNot = false, allEvidence = true, anyDivergent = false;
  for (const auto &e : rep.entries)
  {
    if (e.divergent)
    {
      anyDivergent = true;
      allEvidence = false;
      continue;
    }
    if (e.schedule.empty())
    {
      allEvidence = false;
      continue;
    }
    rep.minMargin = std::min(rep.minMargin, e.estimate.margin);
    anyNot = anyNot || e.estimate.verdict == InvertibilityVerdict::NotInvertibleAtLevel;
    allEvidence = allEvidence && e.estimate.verdict == InvertibilityVerdict::EvidenceInvertible;
  }
  if (anyNot)
  {
    rep.verdict = "notFredholm";
  }
  else if (allEvidence)
  {
    rep.verdict = "Fredholm-consistent";
  }
  else
  {
    rep.verdict = anyDivergent ? "divergent" : "inconclusive";
  }
  rep.inverseNormEstimate = rep.minMargin > 0 ? 1.0 / rep.minMargin : INFINITY;
  return rep;
}

EssNormReport essNormEstimate(const OperatorExpr &a, const SubspaceProjection &proj,
                              const std::vector<LimitSequence> &seqs,
                              const std::vector<double> &windowSchedule, const LimitOptions &opts)
{
  if (seqs.empty())
  {
    throw InputError("essential norm estimate needs at least one sequence");
  }
  if (windowSchedule.empty())
  {
    throw InputError("window schedule must be nonempty");
  }
  const OperatorExpr ap = a * proj.p;
  EssNormReport rep;
  rep.entries.resize(seqs.size());
  parallelFor(seqs.size(),
              [&](std::size_t i)
              {
                auto &e = rep.entries[i];
                e.label = seqs[i].label();
                auto r = limitOperator(ap, seqs[i], opts.radii, opts.tol);
                if (auto *d = std::get_if<DivergenceReport>(&r))
                {
                  e.divergent = true;
                  e.divergence = *d;
                  return;
                }
                const auto &lim = std::get<LimitOperator>(r);
                const auto sched = usableSchedule(lim, windowSchedule);
                e.upper = lim.op.normBound();
                if (!sched.empty())
                {
                  const Window w(a.space(), Point::zeros(a.space().coords()), sched.back());
                  e.lower = columnNorm(lim.op, w.points()).upper;
                }
              });
  for (const auto &e : rep.entries)
  {
    if (e.divergent)
    {
      rep.anyDivergent = true;
      continue;
    }
    rep.estimate.lower = std::max(rep.estimate.lower, e.lower);
    rep.estimate.upper = std::max(rep.estimate.upper, e.upper);
  }
  return rep;
}

}  // namespace limitops
