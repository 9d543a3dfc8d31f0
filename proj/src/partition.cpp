#include "limitops/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

std::int64_t floorDiv(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
  {
    q--;
  }
  return q;
}

}  // namespace

PartitionOfUnity::PartitionOfUnity(const Space &space, double t, double p, Ball scope)
  : space_(space), t_(t), p_(p), scope_(std::move(scope))
{
  if (!space.isLattice())
  {
    throw UnsupportedError(
        "partition of unity construction is only available on lattice spaces; general "
        "bounded-geometry graphs have no algorithmic construction here");
  }
  if (!(t > 0 && t <= 1))
  {
    throw InputError("partition parameter t must satisfy 0 < t <= 1");
  }
  if (!(p > 1) || !std::isfinite(p))
  {
    throw InputError("exponent p must lie in (1, inf)");
  }
  space.validate(scope_.center);
  const int d = space.dim();
  // The slack absorbs representation error in t (0.2^2 is not exactly 0.04); it can only
  // enlarge L, which keeps the variation bound strict.
  pitch_ = static_cast<std::int64_t>(std::floor(2.0 * d / (t * t) + 1e-9)) + 1;

  const double axis = 2.0 * static_cast<double>(pitch_ - 1);
  const double fiberDiam = space.fiber() > 1 ? std::floor(space.fiber() / 2.0) : 0.0;
  rt_ = space.metric() == Metric::L1 ? d * axis + fiberDiam : std::max(axis, fiberDiam);
}

std::vector<PartitionTerm> PartitionOfUnity::termsAt(const Point &x) const
{
  space_.validate(x);
  const int d = space_.dim();
  const std::int64_t L = pitch_;
  // Per axis: the two candidate nodes floor(x/L) and floor(x/L)+1 with weights.
  std::int64_t base[kMaxCoords];
  std::int64_t rem[kMaxCoords];
  for (int i = 0; i < d; i++)
  {
    base[i] = floorDiv(x[i], L);
    rem[i] = x[i] - base[i] * L;  // in [0, L)
  }
  std::vector<PartitionTerm> out;
  for (int mask = 0; mask < (1 << d); mask++)
  {
    Point k = Point::zeros(d);
    double value = 1;
    for (int i = 0; i < d; i++)
    {
      const bool up = (mask >> (d - 1 - i)) & 1;
      k[i] = base[i] + (up ? 1 : 0);
      const std::int64_t w = up ? rem[i] : L - rem[i];
      value *= static_cast<double>(w) / static_cast<double>(L);
    }
    if (value > 0)
    {
      out.push_back({k, value, std::pow(value, 1.0 / p_)});
    }
  }
  return out;
}

double PartitionOfUnity::rho(const Point &k, const Point &x) const
{
  const int d = space_.dim();
  double value = 1;
  for (int i = 0; i < d; i++)
  {
    const std::int64_t s = std::llabs(x[i] - k[i] * pitch_);
    if (s >= pitch_)
    {
      return 0;
    }
    value *= static_cast<double>(pitch_ - s) / static_cast<double>(pitch_);
  }
  return value;
}

double PartitionOfUnity::phi(const Point &k, const Point &x) const
{
  const double r = rho(k, x);
  return r > 0 ? std::pow(r, 1.0 / p_) : 0.0;
}

std::vector<Point> PartitionOfUnity::indicesMeeting(const Ball &b) const
{
  const int d = space_.dim();
  const auto R = static_cast<std::int64_t>(std::floor(b.radius + 1e-9));
  std::int64_t lo[kMaxCoords], hi[kMaxCoords];
  for (int i = 0; i < d; i++)
  {
    // rho_k is nonzero at s iff |s - kL| < L, i.e. k in (s/L - 1, s/L + 1).
    lo[i] = floorDiv(b.center[i] - R, pitch_);
    hi[i] = floorDiv(b.center[i] + R, pitch_) + 1;
  }
  std::vector<Point> out;
  Point k = Point::zeros(d);
  for (int i = 0; i < d; i++)
  {
    k[i] = lo[i];
  }
  while (true)
  {
    // For l1 balls the box is an over-approximation; keep k only if its open support box
    // meets the ball (closest point of the box to the center).
    Point nearest = b.center;
    for (int i = 0; i < d; i++)
    {
      const std::int64_t a = k[i] * pitch_ - (pitch_ - 1);
      const std::int64_t c = k[i] * pitch_ + (pitch_ - 1);
      nearest[i] = std::clamp(b.center[i], a, c);
    }
    if (space_.dist(b.center, nearest) <= b.radius + 1e-9)
    {
      out.push_back(k);
    }
    int i = d - 1;
    while (i >= 0 && k[i] == hi[i])
    {
      k[i] = lo[i];
      i--;
    }
    if (i < 0)
    {
      break;
    }
    k[i]++;
  }
  return out;
}

std::vector<Point> PartitionOfUnity::supportWithin(const Point &k, const Window &w) const
{
  std::vector<Point> out;
  for (const auto &x : w.points())
  {
    if (rho(k, x) > 0)
    {
      out.push_back(x);
    }
  }
  return out;
}

std::int64_t PartitionOfUnity::exactSumNumerator(const Point &x) const
{
  const int d = space_.dim();
  std::int64_t total = 0;
  for (int mask = 0; mask < (1 << d); mask++)
  {
    std::int64_t prod = 1;
    for (int i = 0; i < d; i++)
    {
      const bool up = (mask >> i) & 1;
      const std::int64_t k = floorDiv(x[i], pitch_) + (up ? 1 : 0);
      const std::int64_t s = std::llabs(x[i] - k * pitch_);
      prod *= std::max<std::int64_t>(0, pitch_ - s);
    }
    total += prod;
  }
  return total;
}

std::int64_t PartitionOfUnity::exactDenominator() const
{
  std::int64_t den = 1;
  for (int i = 0; i < space_.dim(); i++)
  {
    den *= pitch_;
  }
  return den;
}

PartitionOfUnity buildPartition(const Space &space, double t, double p, const Ball &scope)
{
  return PartitionOfUnity(space, t, p, scope);
}

namespace
{

template <typename F>
double variation(const PartitionOfUnity &part, const Point &x, const Point &y, F term)
{
  const auto tx = part.termsAt(x);
  const auto ty = part.termsAt(y);
  double sum = 0;
  std::size_t i = 0, j = 0;
  // Both lists are sorted by index; merge.
  while (i < tx.size() || j < ty.size())
  {
    if (j == ty.size() || (i < tx.size() && tx[i].index < ty[j].index))
    {
      sum += term(tx[i], PartitionTerm{});
      i++;
    }
    else if (i == tx.size() || ty[j].index < tx[i].index)
    {
      sum += term(PartitionTerm{}, ty[j]);
      j++;
    }
    else
    {
      sum += term(tx[i], ty[j]);
      i++;
      j++;
    }
  }
  return sum;
}

}  // namespace

double rhoVariation(const PartitionOfUnity &part, const Point &x, const Point &y)
{
  return variation(part, x, y, [](const PartitionTerm &a, const PartitionTerm &b)
                   { return std::abs(a.rho - b.rho); });
}

double phiVariation(const PartitionOfUnity &part, const Point &x, const Point &y)
{
  const double p = part.p();
  return variation(part, x, y, [p](const PartitionTerm &a, const PartitionTerm &b)
                   { return std::pow(std::abs(a.phi - b.phi), p); });
}

}  // namespace limitops
