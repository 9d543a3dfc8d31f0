#include "limitops/operator.hpp"

#include <algorithm>
#include <cmath>

#include "limitops/errors.hpp"

namespace limitops
{

SparseRow mergeRow(SparseRow row)
{
  std::sort(row.begin(), row.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  SparseRow out;
  out.reserve(row.size());
  for (auto &e : row)
  {
    if (!out.empty() && out.back().first == e.first)
    {
      out.back().second += e.second;
    }
    else
    {
      out.push_back(std::move(e));
    }
  }
  std::erase_if(out, [](const auto &e) { return e.second == Complex(0.0); });
  return out;
}

namespace
{

std::vector<Point> sphere(const Space &space, const Point &x, std::int64_t k)
{
  std::vector<Point> out;
  for (auto &y : space.closedBall(x, static_cast<double>(k)))
  {
    if (static_cast<std::int64_t>(space.dist(x, y)) == k)
    {
      out.push_back(y);
    }
  }
  return out;
}

}  // namespace

BandOperator::BandOperator(Space space, std::vector<StencilEntry> stencil)
  : space_(std::move(space)), stencil_(std::move(stencil))
{
  const Point origin = space_.isLattice() ? Point::zeros(space_.coords()) : Point{};
  for (const auto &e : stencil_)
  {
    double d;
    if (space_.isLattice())
    {
      if (e.offset.size() != space_.coords())
      {
        throw InputError("stencil offset " + e.offset.str() + " has wrong number of coordinates");
      }
      d = space_.dist(origin, space_.add(origin, e.offset));
      classSize_.push_back(1);
    }
    else
    {
      if (e.offset.size() != 1 || e.offset[0] < 0)
      {
        throw InputError("graph stencil entries are nonnegative distance classes");
      }
      d = static_cast<double>(e.offset[0]);
      std::size_t m = 0;
      for (std::size_t v = 0; v < space_.vertexCount(); v++)
      {
        m = std::max(m, sphere(space_, Point{static_cast<std::int64_t>(v)}, e.offset[0]).size());
      }
      classSize_.push_back(m);
    }
    if (!e.coeff.isZero())
    {
      omega_ = std::max(omega_, d);
    }
  }
}

SparseRow BandOperator::row(const Point &x) const
{
  SparseRow out;
  for (const auto &e : stencil_)
  {
    if (e.coeff.isZero())
    {
      continue;
    }
    const Complex c = e.coeff.at(x);
    if (space_.isLattice())
    {
      out.emplace_back(space_.add(x, e.offset), c);
    }
    else
    {
      for (auto &y : sphere(space_, x, e.offset[0]))
      {
        out.emplace_back(y, c);
      }
    }
  }
  return mergeRow(std::move(out));
}

SparseRow BandOperator::column(const Point &y) const
{
  SparseRow out;
  for (const auto &e : stencil_)
  {
    if (e.coeff.isZero())
    {
      continue;
    }
    if (space_.isLattice())
    {
      const Point x = space_.add(y, -e.offset);
      out.emplace_back(x, e.coeff.at(x));
    }
    else
    {
      for (auto &x : sphere(space_, y, e.offset[0]))
      {
        out.emplace_back(x, e.coeff.at(x));
      }
    }
  }
  return mergeRow(std::move(out));
}

double BandOperator::schurBound() const
{
  double b = 0;
  for (std::size_t i = 0; i < stencil_.size(); i++)
  {
    b += stencil_[i].coeff.bound() * static_cast<double>(classSize_[i]);
  }
  return b;
}

BandOperator BandOperator::mapFields(
    const std::function<CoefficientField(const CoefficientField &)> &f) const
{
  auto s = stencil_;
  for (auto &e : s)
  {
    e.coeff = f(e.coeff);
  }
  return BandOperator(space_, std::move(s));
}

struct OperatorExpr::Node
{
  ExprKind kind = ExprKind::Zero;
  Space space = Space::lattice(1);
  BandOperator band;
  CoefficientField field;
  Predicate predicate;
  Complex scalar = 0.0;
  std::vector<OperatorExpr> children;
  double prop = 0;
  double bound = 0;
};

namespace
{

const Space &commonSpace(const std::vector<OperatorExpr> &xs)
{
  if (xs.empty())
  {
    throw InputError("sum/product needs at least one operand");
  }
  for (const auto &x : xs)
  {
    if (!(x.space() == xs.front().space()))
    {
      throw InputError("operands live on different spaces");
    }
  }
  return xs.front().space();
}

}  // namespace

OperatorExpr::OperatorExpr() : node_(std::make_shared<const Node>()) {}

OperatorExpr OperatorExpr::band(BandOperator b)
{
  Node n;
  n.kind = ExprKind::Band;
  n.space = b.space();
  n.prop = b.omega();
  n.bound = b.schurBound();
  n.band = std::move(b);
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::multiplication(const Space &space, CoefficientField f)
{
  Node n;
  n.kind = ExprKind::Multiplication;
  n.space = space;
  n.bound = f.bound();
  n.field = std::move(f);
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::projection(const Space &space, Predicate y)
{
  Node n;
  n.kind = ExprKind::Projection;
  n.space = space;
  n.bound = y.kind() == PredicateKind::None ? 0 : 1;
  n.predicate = std::move(y);
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::identity(const Space &space)
{
  Node n;
  n.kind = ExprKind::Identity;
  n.space = space;
  n.bound = 1;
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::zero(const Space &space)
{
  Node n;
  n.kind = ExprKind::Zero;
  n.space = space;
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::sum(std::vector<OperatorExpr> terms)
{
  Node n;
  n.kind = ExprKind::Sum;
  n.space = commonSpace(terms);
  for (const auto &t : terms)
  {
    n.prop = std::max(n.prop, t.propagation());
    n.bound += t.normBound();
  }
  n.children = std::move(terms);
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::product(std::vector<OperatorExpr> factors)
{
  Node n;
  n.kind = ExprKind::Product;
  n.space = commonSpace(factors);
  n.bound = 1;
  for (const auto &f : factors)
  {
    n.prop += f.propagation();
    n.bound *= f.normBound();
  }
  n.children = std::move(factors);
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::adjoint(OperatorExpr a)
{
  Node n;
  n.kind = ExprKind::Adjoint;
  n.space = a.space();
  n.prop = a.propagation();
  n.bound = a.normBound();
  n.children = {std::move(a)};
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::minusScalar(OperatorExpr a, Complex z)
{
  Node n;
  n.kind = ExprKind::MinusScalar;
  n.space = a.space();
  n.prop = a.propagation();
  n.bound = a.normBound() + std::abs(z);
  n.scalar = z;
  n.children = {std::move(a)};
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

OperatorExpr OperatorExpr::scale(OperatorExpr a, Complex c)
{
  Node n;
  n.kind = ExprKind::Scale;
  n.space = a.space();
  n.prop = a.propagation();
  n.bound = a.normBound() * std::abs(c);
  n.scalar = c;
  n.children = {std::move(a)};
  return OperatorExpr(std::make_shared<const Node>(std::move(n)));
}

ExprKind OperatorExpr::kind() const { return node_->kind; }
const Space &OperatorExpr::space() const { return node_->space; }
const std::vector<OperatorExpr> &OperatorExpr::children() const { return node_->children; }
const BandOperator &OperatorExpr::bandOperator() const { return node_->band; }
const CoefficientField &OperatorExpr::field() const { return node_->field; }
const Predicate &OperatorExpr::predicate() const { return node_->predicate; }
Complex OperatorExpr::scalar() const { return node_->scalar; }
double OperatorExpr::propagation() const { return node_->prop; }
double OperatorExpr::normBound() const { return node_->bound; }

SparseRow OperatorExpr::row(const Point &x) const
{
  const Node &n = *node_;
  switch (n.kind)
  {
    case ExprKind::Band:
      return n.band.row(x);
    case ExprKind::Multiplication:
    {
      const Complex v = n.field.at(x);
      return v == Complex(0.0) ? SparseRow{} : SparseRow{{x, v}};
    }
    case ExprKind::Projection:
      return n.predicate.contains(x) ? SparseRow{{x, 1.0}} : SparseRow{};
    case ExprKind::Identity:
      return {{x, 1.0}};
    case ExprKind::Zero:
      return {};
    case ExprKind::Sum:
    {
      SparseRow acc;
      for (const auto &c : n.children)
      {
        auto r = c.row(x);
        acc.insert(acc.end(), r.begin(), r.end());
      }
      return mergeRow(std::move(acc));
    }
    case ExprKind::Product:
    {
      SparseRow cur = n.children.front().row(x);
      for (std::size_t i = 1; i < n.children.size(); i++)
      {
        SparseRow next;
        for (const auto &[z, a] : cur)
        {
          for (const auto &[y, b] : n.children[i].row(z))
          {
            next.emplace_back(y, a * b);
          }
        }
        cur = mergeRow(std::move(next));
      }
      return cur;
    }
    case ExprKind::Adjoint:
    {
      auto c = n.children.front().column(x);
      for (auto &e : c)
      {
        e.second = std::conj(e.second);
      }
      return c;
    }
    case ExprKind::MinusScalar:
    {
      auto r = n.children.front().row(x);
      r.emplace_back(x, -n.scalar);
      return mergeRow(std::move(r));
    }
    case ExprKind::Scale:
    {
      auto r = n.children.front().row(x);
      for (auto &e : r)
      {
        e.second *= n.scalar;
      }
      return mergeRow(std::move(r));
    }
  }
  return {};
}

SparseRow OperatorExpr::column(const Point &y) const
{
  const Node &n = *node_;
  switch (n.kind)
  {
    case ExprKind::Band:
      return n.band.column(y);
    case ExprKind::Multiplication:
    case ExprKind::Projection:
    case ExprKind::Identity:
    case ExprKind::Zero:
      return row(y);
    case ExprKind::Sum:
    {
      SparseRow acc;
      for (const auto &c : n.children)
      {
        auto r = c.column(y);
        acc.insert(acc.end(), r.begin(), r.end());
      }
      return mergeRow(std::move(acc));
    }
    case ExprKind::Product:
    {
      SparseRow cur = n.children.back().column(y);
      for (std::size_t i = n.children.size() - 1; i-- > 0;)
      {
        SparseRow next;
        for (const auto &[z, b] : cur)
        {
          for (const auto &[x, a] : n.children[i].column(z))
          {
            next.emplace_back(x, a * b);
          }
        }
        cur = mergeRow(std::move(next));
      }
      return cur;
    }
    case ExprKind::Adjoint:
    {
      auto r = n.children.front().row(y);
      for (auto &e : r)
      {
        e.second = std::conj(e.second);
      }
      return r;
    }
    case ExprKind::MinusScalar:
    {
      auto c = n.children.front().column(y);
      c.emplace_back(y, -n.scalar);
      return mergeRow(std::move(c));
    }
    case ExprKind::Scale:
    {
      auto c = n.children.front().column(y);
      for (auto &e : c)
      {
        e.second *= n.scalar;
      }
      return mergeRow(std::move(c));
    }
  }
  return {};
}

Complex OperatorExpr::entry(const Point &x, const Point &y) const
{
  for (const auto &[z, v] : row(x))
  {
    if (z == y)
    {
      return v;
    }
  }
  return 0.0;
}

OperatorExpr OperatorExpr::mapLeaves(
    const std::function<CoefficientField(const CoefficientField &)> &f,
    const std::function<Predicate(const Predicate &)> &g) const
{
  const Node &n = *node_;
  switch (n.kind)
  {
    case ExprKind::Band:
      return band(n.band.mapFields(f));
    case ExprKind::Multiplication:
      return multiplication(n.space, f(n.field));
    case ExprKind::Projection:
      return projection(n.space, g(n.predicate));
    case ExprKind::Identity:
    case ExprKind::Zero:
      return *this;
    case ExprKind::Sum:
    case ExprKind::Product:
    {
      std::vector<OperatorExpr> cs;
      for (const auto &c : n.children)
      {
        cs.push_back(c.mapLeaves(f, g));
      }
      return n.kind == ExprKind::Sum ? sum(std::move(cs)) : product(std::move(cs));
    }
    case ExprKind::Adjoint:
      return adjoint(n.children.front().mapLeaves(f, g));
    case ExprKind::MinusScalar:
      return minusScalar(n.children.front().mapLeaves(f, g), n.scalar);
    case ExprKind::Scale:
      return scale(n.children.front().mapLeaves(f, g), n.scalar);
  }
  return *this;
}

void OperatorExpr::visitLeaves(const std::function<void(const CoefficientField &)> &f,
                               const std::function<void(const Predicate &)> &g) const
{
  const Node &n = *node_;
  switch (n.kind)
  {
    case ExprKind::Band:
      for (const auto &e : n.band.stencil())
      {
        f(e.coeff);
      }
      return;
    case ExprKind::Multiplication:
      f(n.field);
      return;
    case ExprKind::Projection:
      g(n.predicate);
      return;
    default:
      for (const auto &c : n.children)
      {
        c.visitLeaves(f, g);
      }
  }
}

bool OperatorExpr::isTranslationInvariant() const
{
  bool ok = true;
  const int d = space().dim();
  // periodic fields with period 1 along every lattice axis may still vary over the fiber
  const auto invariant = [d](const CoefficientField &c)
  {
    if (c.kind() == FieldKind::Constant)
    {
      return true;
    }
    if (c.kind() != FieldKind::Periodic)
    {
      return false;
    }
    for (int i = 0; i < d && i < static_cast<int>(c.period().size()); i++)
    {
      if (c.period()[static_cast<std::size_t>(i)] != 1)
      {
        return false;
      }
    }
    return true;
  };
  visitLeaves([&](const CoefficientField &c) { ok = ok && invariant(c); },
              [&](const Predicate &p)
              {
                ok = ok && (p.kind() == PredicateKind::All || p.kind() == PredicateKind::None);
              });
  return ok;
}

bool OperatorExpr::isPeriodic() const
{
  bool ok = true;
  visitLeaves(
      [&](const CoefficientField &c)
      { ok = ok && (c.kind() == FieldKind::Constant || c.kind() == FieldKind::Periodic); },
      [&](const Predicate &p)
      { ok = ok && (p.kind() == PredicateKind::All || p.kind() == PredicateKind::None); });
  return ok;
}

OperatorExpr operator+(const OperatorExpr &a, const OperatorExpr &b)
{
  return OperatorExpr::sum({a, b});
}

OperatorExpr operator-(const OperatorExpr &a, const OperatorExpr &b)
{
  return OperatorExpr::sum({a, OperatorExpr::scale(b, -1.0)});
}

OperatorExpr operator*(const OperatorExpr &a, const OperatorExpr &b)
{
  return OperatorExpr::product({a, b});
}

double propagation(const OperatorExpr &a)
{
  return a.propagation();
}

OperatorExpr shiftOperator(const Space &space, int axis)
{
  if (!space.isLattice() || axis < 0 || axis >= space.dim())
  {
    throw UnsupportedError("shift operators need a lattice axis");
  }
  Point k = Point::zeros(space.coords());
  k[axis] = -1;
  return OperatorExpr::band(BandOperator(space, {{k, CoefficientField::constant(1.0)}}));
}

OperatorExpr laplacian(const Space &space)
{
  if (!space.isLattice())
  {
    throw UnsupportedError("laplacian needs a lattice");
  }
  std::vector<StencilEntry> s;
  for (int i = 0; i < space.dim(); i++)
  {
    Point k = Point::zeros(space.coords());
    k[i] = -1;
    s.push_back({k, CoefficientField::constant(1.0)});
    k[i] = 1;
    s.push_back({k, CoefficientField::constant(1.0)});
  }
  return OperatorExpr::band(BandOperator(space, std::move(s)));
}

OperatorExpr conjugate(const OperatorExpr &a, const Point &x)
{
  if (!a.space().isLattice())
  {
    throw UnsupportedError("conjugation needs a declared translation action; graphs have none");
  }
  const Space &s = a.space();
  if (x.size() != s.coords() || (s.fiber() > 1 && x[s.dim()] != 0))
  {
    throw InputError("shift " + x.str() + " must be a lattice vector with zero fiber part");
  }
  return a.mapLeaves([&](const CoefficientField &f) { return f.translated(x); },
                     [&](const Predicate &p) { return p.translated(x); });
}

}  // namespace limitops
