#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "limitops/field.hpp"
#include "limitops/point.hpp"
#include "limitops/predicate.hpp"
#include "limitops/space.hpp"

namespace limitops
{

// One kernel row or column: (point, value) pairs sorted by point, no duplicates.
using SparseRow = std::vector<std::pair<Point, Complex>>;

// a(x, x + offset) = coeff(x) on lattices. On graphs offset = {k} is a distance class:
// a(x, y) = coeff(x) for every y with d(x, y) = k.
struct StencilEntry
{
  Point offset;
  CoefficientField coeff;
};

class BandOperator
{
public:
  BandOperator() = default;
  BandOperator(Space space, std::vector<StencilEntry> stencil);

  const Space &space() const { return space_; }
  const std::vector<StencilEntry> &stencil() const { return stencil_; }
  // max displacement over entries whose field is not identically zero.
  double omega() const { return omega_; }

  SparseRow row(const Point &x) const;
  SparseRow column(const Point &x) const;
  // sum_k sup |c_k| times the class multiplicity (graphs).
  double schurBound() const;

  BandOperator mapFields(const std::function<CoefficientField(const CoefficientField &)> &f) const;

private:
  Space space_ = Space::lattice(1);
  std::vector<StencilEntry> stencil_;
  double omega_ = 0;
  std::vector<std::size_t> classSize_;  // graphs: max sphere size per entry
};

enum class ExprKind
{
  Band,
  Multiplication,
  Projection,
  Identity,
  Zero,
  Sum,
  Product,
  Adjoint,
  MinusScalar,  // A - zI
  Scale         // cA
};

// Immutable expression tree over band operators; every node is itself a band operator.
class OperatorExpr
{
public:
  OperatorExpr();

  static OperatorExpr band(BandOperator b);
  static OperatorExpr multiplication(const Space &space, CoefficientField f);
  static OperatorExpr projection(const Space &space, Predicate y);
  static OperatorExpr identity(const Space &space);
  static OperatorExpr zero(const Space &space);
  static OperatorExpr sum(std::vector<OperatorExpr> terms);
  static OperatorExpr product(std::vector<OperatorExpr> factors);  // factors[0] applied last
  static OperatorExpr adjoint(OperatorExpr a);
  static OperatorExpr minusScalar(OperatorExpr a, Complex z);
  static OperatorExpr scale(OperatorExpr a, Complex c);

  ExprKind kind() const;
  const Space &space() const;
  const std::vector<OperatorExpr> &children() const;
  const BandOperator &bandOperator() const;
  const CoefficientField &field() const;
  const Predicate &predicate() const;
  Complex scalar() const;

  // Structural propagation bound: exact for leaves, max for sums, sum for products.
  double propagation() const;
  // Schur-type bound on the l_p operator norm, valid for every p.
  double normBound() const;

  // Entries a(x, y) != 0 for fixed x (row) or fixed y (column).
  SparseRow row(const Point &x) const;
  SparseRow column(const Point &y) const;
  Complex entry(const Point &x, const Point &y) const;

  // Rewrites every coefficient field and predicate, keeping the tree shape.
  OperatorExpr mapLeaves(const std::function<CoefficientField(const CoefficientField &)> &f,
                         const std::function<Predicate(const Predicate &)> &g) const;
  void visitLeaves(const std::function<void(const CoefficientField &)> &f,
                   const std::function<void(const Predicate &)> &g) const;

  // All fields constant and all predicates All/None.
  bool isTranslationInvariant() const;
  // All fields constant or periodic and all predicates All/None.
  bool isPeriodic() const;

  struct Node;

private:
  explicit OperatorExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

OperatorExpr operator+(const OperatorExpr &a, const OperatorExpr &b);
OperatorExpr operator-(const OperatorExpr &a, const OperatorExpr &b);
OperatorExpr operator*(const OperatorExpr &a, const OperatorExpr &b);

double propagation(const OperatorExpr &a);

// Bilateral shift V on Z^d along axis (V e_0 = e_{axis}) and the lattice Laplacian-type
// sum of V_i + V_i^* over the axes.
OperatorExpr shiftOperator(const Space &space, int axis = 0);
OperatorExpr laplacian(const Space &space);

// U_x A U_x^{-1}: every field and predicate is translated, coeff'(y) = coeff(y + x).
OperatorExpr conjugate(const OperatorExpr &a, const Point &x);

SparseRow mergeRow(SparseRow row);

}  // namespace limitops
