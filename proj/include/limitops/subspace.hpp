#pragma once

#include "limitops/field.hpp"
#include "limitops/operator.hpp"
#include "limitops/predicate.hpp"

namespace limitops
{

// P = M_{1_Y} and Q = I - P = M_{1_{Y^c}}.
struct SubspaceProjection
{
  Space space = Space::lattice(1);
  Predicate y;
  OperatorExpr p;
  OperatorExpr q;
};

SubspaceProjection makeProjection(const Space &space, Predicate y);
// Y = X.
SubspaceProjection fullProjection(const Space &space);

// T_f = P M_f P.
OperatorExpr toeplitz(const CoefficientField &f, const SubspaceProjection &proj);
// P A P.
OperatorExpr compress(const OperatorExpr &a, const SubspaceProjection &proj);
// AP + Q.
OperatorExpr hat(const OperatorExpr &a, const SubspaceProjection &proj);

}  // namespace limitops
