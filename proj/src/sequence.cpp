#include "limitops/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

constexpr std::int64_t kShortSequence = 64;

}  // namespace

struct LimitSequence::Data
{
  std::string label;
  SequenceKind kind = SequenceKind::Ray;
  Point v;
  Point w;
  std::int64_t budget = kIndexBudget;
  std::vector<Point> points;
  std::shared_ptr<const Data> parent;
  SubsequenceRule rule;
  std::vector<std::int64_t> parentIndices;
};

LimitSequence LimitSequence::ray(std::string label, Point v, Point w, std::int64_t budget)
{
  if (v.size() == 0 || v == Point::zeros(v.size()))
  {
    throw InputError("ray direction must be nonzero");
  }
  if (w.size() == 0)
  {
    w = Point::zeros(v.size());
  }
  if (w.size() != v.size())
  {
    throw InputError("ray offset and direction have different sizes");
  }
  if (budget < 2)
  {
    throw InputError("index budget must be at least 2");
  }
  Data d;
  d.label = std::move(label);
  d.kind = SequenceKind::Ray;
  d.v = v;
  d.w = w;
  d.budget = budget;
  return LimitSequence(std::make_shared<const Data>(std::move(d)));
}

LimitSequence LimitSequence::explicitPoints(std::string label, std::vector<Point> points)
{
  if (points.size() < 2)
  {
    throw InputError("explicit sequences need at least two points");
  }
  for (const auto &p : points)
  {
    if (p.size() != points.front().size())
    {
      throw InputError("explicit sequence points have mixed sizes");
    }
  }
  Data d;
  d.label = std::move(label);
  d.kind = SequenceKind::Explicit;
  d.points = std::move(points);
  return LimitSequence(std::make_shared<const Data>(std::move(d)));
}

LimitSequence LimitSequence::subsequence(std::string label, const LimitSequence &parent,
                                         SubsequenceRule rule)
{
  Data d;
  d.label = std::move(label);
  d.kind = SequenceKind::Subsequence;
  d.parent = parent.data_;
  const std::int64_t n = parent.count();
  switch (rule.kind)
  {
    case SubsequenceRule::Kind::Indices:
      for (std::size_t i = 0; i < rule.indices.size(); i++)
      {
        const auto k = rule.indices[i];
        if (k < 0 || k >= n || (i > 0 && k <= rule.indices[i - 1]))
        {
          throw InputError("subsequence indices must be increasing and within the parent");
        }
      }
      d.parentIndices = rule.indices;
      break;
    case SubsequenceRule::Kind::Arithmetic:
      if (rule.a < 1 || rule.b < 0)
      {
        throw InputError("arithmetic subsequence needs a >= 1 and b >= 0");
      }
      if (n - 1 - rule.b < rule.a)
      {
        throw InputError("arithmetic subsequence leaves fewer than two indices");
      }
      break;
    case SubsequenceRule::Kind::Level:
      // complete dyadic blocks [lo, 2 lo) only
      for (std::int64_t lo = 1; 2 * lo <= n; lo *= 2)
      {
        const std::int64_t hi = 2 * lo;
        std::int64_t best = lo;
        double bestGap = std::numeric_limits<double>::infinity();
        for (std::int64_t k = lo; k < hi; k++)
        {
          const double g = std::abs(rule.expr.eval(parent.at(k)) - rule.target);
          if (g < bestGap)
          {
            bestGap = g;
            best = k;
          }
        }
        d.parentIndices.push_back(best);
      }
      break;
  }
  if (rule.kind != SubsequenceRule::Kind::Arithmetic && d.parentIndices.size() < 2)
  {
    throw InputError("subsequence must have at least two indices");
  }
  d.rule = std::move(rule);
  return LimitSequence(std::make_shared<const Data>(std::move(d)));
}

const std::string &LimitSequence::label() const { return data_->label; }
SequenceKind LimitSequence::kind() const { return data_->kind; }

std::int64_t LimitSequence::count() const
{
  switch (data_->kind)
  {
    case SequenceKind::Ray:
      return data_->budget + 1;
    case SequenceKind::Explicit:
      return static_cast<std::int64_t>(data_->points.size());
    case SequenceKind::Subsequence:
      if (data_->rule.kind == SubsequenceRule::Kind::Arithmetic)
      {
        return (LimitSequence(data_->parent).count() - 1 - data_->rule.b) / data_->rule.a + 1;
      }
      return static_cast<std::int64_t>(data_->parentIndices.size());
  }
  return 0;
}

Point LimitSequence::at(std::int64_t n) const
{
  if (n < 0 || n >= count())
  {
    throw InputError("sequence index " + std::to_string(n) + " out of range for " + data_->label);
  }
  switch (data_->kind)
  {
    case SequenceKind::Ray:
    {
      Point x = data_->w;
      for (int i = 0; i < x.size(); i++)
      {
        x[i] += n * data_->v[i];
      }
      return x;
    }
    case SequenceKind::Explicit:
      return data_->points[static_cast<std::size_t>(n)];
    case SequenceKind::Subsequence:
    {
      const LimitSequence parent(data_->parent);
      if (data_->rule.kind == SubsequenceRule::Kind::Arithmetic)
      {
        return parent.at(data_->rule.a * n + data_->rule.b);
      }
      return parent.at(data_->parentIndices[static_cast<std::size_t>(n)]);
    }
  }
  return {};
}

std::vector<std::int64_t> LimitSequence::schedule() const
{
  const std::int64_t n = count();
  std::vector<std::int64_t> s;
  if (n <= kShortSequence)
  {
    for (std::int64_t i = 0; i < n; i++)
    {
      s.push_back(i);
    }
    return s;
  }
  for (std::int64_t i = 1; i < n; i *= 2)
  {
    s.push_back(i);
  }
  if (s.back() != n - 1)
  {
    s.push_back(n - 1);
  }
  return s;
}

std::optional<std::pair<Point, Point>> LimitSequence::asRay() const
{
  if (data_->kind == SequenceKind::Ray)
  {
    return std::make_pair(data_->v, data_->w);
  }
  if (data_->kind == SequenceKind::Subsequence && data_->rule.kind == SubsequenceRule::Kind::Arithmetic)
  {
    auto p = LimitSequence(data_->parent).asRay();
    if (!p)
    {
      return std::nullopt;
    }
    Point v = p->first;
    Point w = p->second;
    for (int i = 0; i < v.size(); i++)
    {
      w[i] += data_->rule.b * v[i];
      v[i] *= data_->rule.a;
    }
    return std::make_pair(v, w);
  }
  return std::nullopt;
}

const Point &LimitSequence::direction() const { return data_->v; }
const Point &LimitSequence::offset() const { return data_->w; }
std::int64_t LimitSequence::budget() const { return data_->budget; }
const std::vector<Point> &LimitSequence::points() const { return data_->points; }

LimitSequence LimitSequence::parent() const
{
  if (!data_->parent)
  {
    throw InputError("sequence " + data_->label + " has no parent");
  }
  return LimitSequence(data_->parent);
}

const SubsequenceRule &LimitSequence::rule() const { return data_->rule; }
const std::vector<std::int64_t> &LimitSequence::parentIndices() const { return data_->parentIndices; }

std::string LimitSequence::describe() const
{
  switch (data_->kind)
  {
    case SequenceKind::Ray:
      return data_->label + ": ray n*" + data_->v.str() + " + " + data_->w.str();
    case SequenceKind::Explicit:
      return data_->label + ": explicit list of " + std::to_string(data_->points.size()) + " points";
    case SequenceKind::Subsequence:
    {
      const LimitSequence parent(data_->parent);
      std::string r;
      switch (data_->rule.kind)
      {
        case SubsequenceRule::Kind::Indices:
          r = "listed indices";
          break;
        case SubsequenceRule::Kind::Arithmetic:
          r = "indices " + std::to_string(data_->rule.a) + "k+" + std::to_string(data_->rule.b);
          break;
        case SubsequenceRule::Kind::Level:
        {
          const auto t = data_->rule.target;
          r = "level set " + data_->rule.expr.source() + " -> " + std::to_string(t.real()) +
              (t.imag() != 0 ? "+" + std::to_string(t.imag()) + "i" : "");
          break;
        }
      }
      return data_->label + ": subsequence of (" + parent.describe() + ") by " + r;
    }
  }
  return data_->label;
}

}  // namespace limitops
