#include "limitops/subspace.hpp"

namespace limitops
{

namespace
{

// Complement of Y as a predicate, for the closed forms that have one.
Predicate complement(const Predicate &y)
{
  switch (y.kind())
  {
    case PredicateKind::All:
      return Predicate::none();
    case PredicateKind::None:
      return Predicate::all();
    default:
      return y;
  }
}

}  // namespace

SubspaceProjection makeProjection(const Space &space, Predicate y)
{
  SubspaceProjection s;
  s.space = space;
  s.y = y;
  s.p = OperatorExpr::projection(space, y);
  const auto k = y.kind();
  if (k == PredicateKind::All || k == PredicateKind::None)
  {
    s.q = OperatorExpr::projection(space, complement(y));
  }
  else
  {
    s.q = OperatorExpr::identity(space) - s.p;
  }
  return s;
}

SubspaceProjection fullProjection(const Space &space)
{
  return makeProjection(space, Predicate::all());
}

OperatorExpr toeplitz(const CoefficientField &f, const SubspaceProjection &proj)
{
  return OperatorExpr::product({proj.p, OperatorExpr::multiplication(proj.space, f), proj.p});
}

OperatorExpr compress(const OperatorExpr &a, const SubspaceProjection &proj)
{
  return OperatorExpr::product({proj.p, a, proj.p});
}

OperatorExpr hat(const OperatorExpr &a, const SubspaceProjection &proj)
{
  return a * proj.p + proj.q;
}

}  // namespace limitops
