#include "limitops/field.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "limitops/errors.hpp"

namespace limitops
{

std::uint64_t mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

namespace
{

struct ConstantData
{
  Complex value;
};

struct PeriodicData
{
  std::vector<std::int64_t> period;
  std::vector<Complex> table;
};

struct ExpressionData
{
  Expression expr;
  std::optional<double> bound;
  double sampledBound = 0;
};

struct TableData
{
  std::map<Point, Complex> entries;
  Complex tail;
};

struct RandomData
{
  std::uint64_t seed;
  double bound;
};

std::int64_t floorMod(std::int64_t a, std::int64_t m)
{
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

double sampleBound(const Expression &e)
{
  const int n = e.arity();
  if (n == 0)
  {
    return std::abs(e.eval(Point{}));
  }
  const std::int64_t R = n <= 2 ? 32 : 4;
  Point x = Point::zeros(n);
  for (int i = 0; i < n; i++)
  {
    x[i] = -R;
  }
  double best = 0;
  while (true)
  {
    const double v = std::abs(e.eval(x));
    if (std::isfinite(v))
    {
      best = std::max(best, v);
    }
    int i = n - 1;
    while (i >= 0 && x[i] == R)
    {
      x[i] = -R;
      i--;
    }
    if (i < 0)
    {
      break;
    }
    x[i]++;
  }
  return best;
}

}  // namespace

struct CoefficientField::Data
{
  std::variant<ConstantData, PeriodicData, ExpressionData, TableData, RandomData> v;
};

CoefficientField::CoefficientField()
  : data_(std::make_shared<const Data>(Data{ConstantData{0.0}}))
{
}

CoefficientField CoefficientField::constant(Complex c)
{
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
  {
    throw InputError("constant coefficient must be finite");
  }
  return CoefficientField(std::make_shared<const Data>(Data{ConstantData{c}}));
}

CoefficientField CoefficientField::periodic(std::vector<std::int64_t> period,
                                            std::vector<Complex> table)
{
  if (period.empty() || period.size() > static_cast<std::size_t>(kMaxCoords))
  {
    throw InputError("periodic field needs a period vector with 1.." +
                     std::to_string(kMaxCoords) + " entries");
  }
  std::size_t cells = 1;
  for (auto L : period)
  {
    if (L < 1)
    {
      throw InputError("periods must be positive");
    }
    cells *= static_cast<std::size_t>(L);
  }
  if (table.size() != cells)
  {
    throw InputError("periodic table has " + std::to_string(table.size()) + " entries, expected " +
                     std::to_string(cells));
  }
  return CoefficientField(
      std::make_shared<const Data>(Data{PeriodicData{std::move(period), std::move(table)}}));
}

CoefficientField CoefficientField::expression(Expression e, std::optional<double> bound)
{
  if (bound && !(*bound >= 0))
  {
    throw InputError("expression bound must be nonnegative");
  }
  const double sampled = bound ? *bound : sampleBound(e);
  return CoefficientField(
      std::make_shared<const Data>(Data{ExpressionData{std::move(e), bound, sampled}}));
}

CoefficientField CoefficientField::table(std::map<Point, Complex> entries, Complex tail)
{
  return CoefficientField(
      std::make_shared<const Data>(Data{TableData{std::move(entries), tail}}));
}

CoefficientField CoefficientField::random(std::uint64_t seed, double bound)
{
  if (!(bound >= 0))
  {
    throw InputError("random field bound must be nonnegative");
  }
  return CoefficientField(std::make_shared<const Data>(Data{RandomData{seed, bound}}));
}

FieldKind CoefficientField::kind() const
{
  return static_cast<FieldKind>(data_->v.index());
}

Complex CoefficientField::at(const Point &y) const
{
  const Point z = offset_.size() ? y + offset_ : y;
  return std::visit(
      [&](const auto &d) -> Complex
      {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantData>)
        {
          return d.value;
        }
        else if constexpr (std::is_same_v<T, PeriodicData>)
        {
          if (static_cast<int>(d.period.size()) != z.size())
          {
            throw InputError("periodic field period has " + std::to_string(d.period.size()) +
                             " entries but point " + z.str() + " has " +
                             std::to_string(z.size()));
          }
          std::size_t idx = 0;
          for (std::size_t i = 0; i < d.period.size(); i++)
          {
            idx = idx * static_cast<std::size_t>(d.period[i]) +
                  static_cast<std::size_t>(floorMod(z[static_cast<int>(i)], d.period[i]));
          }
          return d.table[idx];
        }
        else if constexpr (std::is_same_v<T, ExpressionData>)
        {
          return d.expr.eval(z);
        }
        else if constexpr (std::is_same_v<T, TableData>)
        {
          auto it = d.entries.find(z);
          return it == d.entries.end() ? d.tail : it->second;
        }
        else
        {
          std::uint64_t h = mix64(d.seed);
          for (int i = 0; i < z.size(); i++)
          {
            h = mix64(h ^ static_cast<std::uint64_t>(z[i]));
          }
          const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
          return d.bound * (2 * u - 1);
        }
      },
      data_->v);
}

CoefficientField CoefficientField::translated(const Point &x) const
{
  if (kind() == FieldKind::Constant)
  {
    return *this;
  }
  CoefficientField f = *this;
  f.offset_ = offset_.size() ? offset_ + x : x;
  return f;
}

double CoefficientField::bound() const
{
  return std::visit(
      [](const auto &d) -> double
      {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ConstantData>)
        {
          return std::abs(d.value);
        }
        else if constexpr (std::is_same_v<T, PeriodicData>)
        {
          double b = 0;
          for (auto c : d.table)
          {
            b = std::max(b, std::abs(c));
          }
          return b;
        }
        else if constexpr (std::is_same_v<T, ExpressionData>)
        {
          return d.sampledBound;
        }
        else if constexpr (std::is_same_v<T, TableData>)
        {
          double b = std::abs(d.tail);
          for (const auto &[p, c] : d.entries)
          {
            b = std::max(b, std::abs(c));
          }
          return b;
        }
        else
        {
          return d.bound;
        }
      },
      data_->v);
}

bool CoefficientField::boundIsDeclared() const
{
  if (auto *e = std::get_if<ExpressionData>(&data_->v))
  {
    return e->bound.has_value();
  }
  return true;
}

bool CoefficientField::isZero() const
{
  if (auto *c = std::get_if<ConstantData>(&data_->v))
  {
    return c->value == Complex(0.0);
  }
  return false;
}

namespace
{

template <typename T>
const T &expect(const CoefficientField::Data &d, const char *what)
{
  if (auto *p = std::get_if<T>(&d.v))
  {
    return *p;
  }
  throw InputError(std::string("coefficient field is not ") + what);
}

}  // namespace

Complex CoefficientField::constantValue() const
{
  return expect<ConstantData>(*data_, "constant").value;
}

const std::vector<std::int64_t> &CoefficientField::period() const
{
  return expect<PeriodicData>(*data_, "periodic").period;
}

const std::vector<Complex> &CoefficientField::periodTable() const
{
  return expect<PeriodicData>(*data_, "periodic").table;
}

const Expression &CoefficientField::expr() const
{
  return expect<ExpressionData>(*data_, "an expression").expr;
}

std::optional<double> CoefficientField::declaredBound() const
{
  return expect<ExpressionData>(*data_, "an expression").bound;
}

const std::map<Point, Complex> &CoefficientField::tableEntries() const
{
  return expect<TableData>(*data_, "a table").entries;
}

Complex CoefficientField::tail() const
{
  return expect<TableData>(*data_, "a table").tail;
}

std::uint64_t CoefficientField::seed() const
{
  return expect<RandomData>(*data_, "random").seed;
}

bool CoefficientField::operator==(const CoefficientField &o) const
{
  if (offset_ != o.offset_ || kind() != o.kind())
  {
    return false;
  }
  if (data_ == o.data_)
  {
    return true;
  }
  switch (kind())
  {
    case FieldKind::Constant:
      return constantValue() == o.constantValue();
    case FieldKind::Periodic:
      return period() == o.period() && periodTable() == o.periodTable();
    case FieldKind::Expression:
      return expr().source() == o.expr().source() && declaredBound() == o.declaredBound();
    case FieldKind::Table:
      return tableEntries() == o.tableEntries() && tail() == o.tail();
    case FieldKind::SeededRandom:
      return seed() == o.seed() && bound() == o.bound();
  }
  return false;
}

}  // namespace limitops
