#include "limitops/predicate.hpp"

#include <variant>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

struct AllData
{
};
struct NoneData
{
};
struct HalfspaceData
{
  std::vector<double> normal;
  double offset;
};
struct SublatticeData
{
  std::vector<std::int64_t> modulus;
  std::vector<std::int64_t> residue;
};
struct ExplicitData
{
  std::set<Point> points;
};
struct ExpressionData
{
  Expression expr;
};

std::int64_t floorMod(std::int64_t a, std::int64_t m)
{
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

struct Predicate::Data
{
  std::variant<AllData, NoneData, HalfspaceData, SublatticeData, ExplicitData, ExpressionData> v;
};

Predicate::Predicate() : data_(std::make_shared<const Data>(Data{AllData{}})) {}

Predicate Predicate::all()
{
  return Predicate(std::make_shared<const Data>(Data{AllData{}}));
}

Predicate Predicate::none()
{
  return Predicate(std::make_shared<const Data>(Data{NoneData{}}));
}

Predicate Predicate::halfspace(std::vector<double> normal, double offset)
{
  if (normal.empty() || normal.size() > static_cast<std::size_t>(kMaxCoords))
  {
    throw InputError("halfspace normal must have 1.." + std::to_string(kMaxCoords) + " entries");
  }
  return Predicate(std::make_shared<const Data>(Data{HalfspaceData{std::move(normal), offset}}));
}

Predicate Predicate::sublattice(std::vector<std::int64_t> modulus, std::vector<std::int64_t> residue)
{
  if (modulus.empty() || modulus.size() != residue.size())
  {
    throw InputError("sublattice modulus and residue must be nonempty and of equal length");
  }
  for (std::size_t i = 0; i < modulus.size(); i++)
  {
    if (modulus[i] < 1)
    {
      throw InputError("sublattice modulus entries must be positive");
    }
    residue[i] = floorMod(residue[i], modulus[i]);
  }
  return Predicate(
      std::make_shared<const Data>(Data{SublatticeData{std::move(modulus), std::move(residue)}}));
}

Predicate Predicate::explicitSet(std::set<Point> points)
{
  return Predicate(std::make_shared<const Data>(Data{ExplicitData{std::move(points)}}));
}

Predicate Predicate::expression(Expression e)
{
  return Predicate(std::make_shared<const Data>(Data{ExpressionData{std::move(e)}}));
}

PredicateKind Predicate::kind() const
{
  return static_cast<PredicateKind>(data_->v.index());
}

bool Predicate::contains(const Point &y) const
{
  const Point z = offset_.size() ? y + offset_ : y;
  return std::visit(
      [&](const auto &d) -> bool
      {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, AllData>)
        {
          return true;
        }
        else if constexpr (std::is_same_v<T, NoneData>)
        {
          return false;
        }
        else if constexpr (std::is_same_v<T, HalfspaceData>)
        {
          if (static_cast<int>(d.normal.size()) > z.size())
          {
            throw InputError("halfspace normal longer than point " + z.str());
          }
          double s = 0;
          for (std::size_t i = 0; i < d.normal.size(); i++)
          {
            s += d.normal[i] * static_cast<double>(z[static_cast<int>(i)]);
          }
          return s >= d.offset;
        }
        else if constexpr (std::is_same_v<T, SublatticeData>)
        {
          if (static_cast<int>(d.modulus.size()) > z.size())
          {
            throw InputError("sublattice modulus longer than point " + z.str());
          }
          for (std::size_t i = 0; i < d.modulus.size(); i++)
          {
            if (floorMod(z[static_cast<int>(i)], d.modulus[i]) != d.residue[i])
            {
              return false;
            }
          }
          return true;
        }
        else if constexpr (std::is_same_v<T, ExplicitData>)
        {
          return d.points.count(z) > 0;
        }
        else
        {
          return d.expr.eval(z).real() >= 0;
        }
      },
      data_->v);
}

Predicate Predicate::translated(const Point &x) const
{
  switch (kind())
  {
    case PredicateKind::All:
    case PredicateKind::None:
      return *this;
    case PredicateKind::Halfspace:
    {
      const auto &a = normal();
      double shift = 0;
      for (std::size_t i = 0; i < a.size() && static_cast<int>(i) < x.size(); i++)
      {
        shift += a[i] * static_cast<double>(x[static_cast<int>(i)]);
      }
      Predicate p = halfspace(a, halfspaceOffset() - shift);
      return p;
    }
    case PredicateKind::Sublattice:
    {
      auto r = residue();
      for (std::size_t i = 0; i < r.size() && static_cast<int>(i) < x.size(); i++)
      {
        r[i] -= x[static_cast<int>(i)];
      }
      return sublattice(modulus(), r);
    }
    case PredicateKind::Explicit:
    {
      std::set<Point> moved;
      for (const auto &p : points())
      {
        moved.insert(p - x);
      }
      return explicitSet(std::move(moved));
    }
    case PredicateKind::Expression:
    {
      Predicate p = *this;
      p.offset_ = offset_.size() ? offset_ + x : x;
      return p;
    }
  }
  return *this;
}

namespace
{

template <typename T>
const T &expect(const Predicate::Data &d, const char *what)
{
  if (auto *p = std::get_if<T>(&d.v))
  {
    return *p;
  }
  throw InputError(std::string("predicate is not ") + what);
}

}  // namespace

const std::vector<double> &Predicate::normal() const
{
  return expect<HalfspaceData>(*data_, "a halfspace").normal;
}

double Predicate::halfspaceOffset() const
{
  return expect<HalfspaceData>(*data_, "a halfspace").offset;
}

const std::vector<std::int64_t> &Predicate::modulus() const
{
  return expect<SublatticeData>(*data_, "a sublattice").modulus;
}

const std::vector<std::int64_t> &Predicate::residue() const
{
  return expect<SublatticeData>(*data_, "a sublattice").residue;
}

const std::set<Point> &Predicate::points() const
{
  return expect<ExplicitData>(*data_, "an explicit set").points;
}

const Expression &Predicate::expr() const
{
  return expect<ExpressionData>(*data_, "an expression").expr;
}

bool Predicate::operator==(const Predicate &o) const
{
  if (kind() != o.kind() || offset_ != o.offset_)
  {
    return false;
  }
  switch (kind())
  {
    case PredicateKind::All:
    case PredicateKind::None:
      return true;
    case PredicateKind::Halfspace:
      return normal() == o.normal() && halfspaceOffset() == o.halfspaceOffset();
    case PredicateKind::Sublattice:
      return modulus() == o.modulus() && residue() == o.residue();
    case PredicateKind::Explicit:
      return points() == o.points();
    case PredicateKind::Expression:
      return expr().source() == o.expr().source();
  }
  return false;
}

}  // namespace limitops
