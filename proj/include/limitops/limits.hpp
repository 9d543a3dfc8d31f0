#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "limitops/operator.hpp"
#include "limitops/sequence.hpp"

namespace limitops
{

// Non-Cauchy witness: the shifted data at indices n1 and n2 differ by gap > tol on the
// window of the given radius around the basepoint.
struct DivergenceReport
{
  std::string label;
  std::string reason;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double radius = 0;
  double gap = 0;
  double tol = 0;
};

struct FieldLimit
{
  CoefficientField field;
  std::string method;  // constant, periodic-residue, table-tail, sampled-constant, sampled-window
  bool exact = true;
  double validRadius = INFINITY;
  std::int64_t index = 0;  // sequence index at which the limit was read off
};

struct PredicateLimit
{
  Predicate predicate;
  std::string method;
  bool exact = true;
  double validRadius = INFINITY;
  std::int64_t index = 0;
};

struct CertificateEntry
{
  double radius = 0;
  std::int64_t index = 0;
  double measuredGap = 0;
  double recordedGap = 0;  // max of measured gaps at this and larger radii
};

struct LimitOperator
{
  std::string label;
  OperatorExpr op;
  std::vector<CertificateEntry> certificate;
  bool exact = true;
  double validRadius = INFINITY;
  std::int64_t index = 0;
  Point point;  // x_index
  std::vector<std::string> methods;
};

using LimitResult = std::variant<LimitOperator, DivergenceReport>;
using FieldLimitResult = std::variant<FieldLimit, DivergenceReport>;
using PredicateLimitResult = std::variant<PredicateLimit, DivergenceReport>;

// Limit of f(x_n + .) sampled on the ball of radius sampleRadius about the origin.
FieldLimitResult limitField(const Space &space, const CoefficientField &f, const LimitSequence &seq,
                            double sampleRadius, double tol);

// Pointwise limit of 1_Y(x_n + .).
PredicateLimitResult limitSet(const Space &space, const Predicate &y, const LimitSequence &seq,
                              const std::vector<double> &radii, double tol);

LimitResult limitOperator(const OperatorExpr &a, const LimitSequence &seq,
                          const std::vector<double> &radii, double tol);

struct AlgebraDefect
{
  double radius = 0;
  double sumDefect = 0;
  double productDefect = 0;
  double limitWindowNorm = 0;  // ||A_x|| on the window
};

struct LimitAlgebraReport
{
  std::string label;
  std::vector<AlgebraDefect> defects;
  double normBound = 0;  // Schur bound of A
  double maxSumDefect = 0;
  double maxProductDefect = 0;
  bool normBoundRespected = true;
  bool withinTolerance = true;
};

std::variant<LimitAlgebraReport, DivergenceReport> limitAlgebraCheck(
    const OperatorExpr &a, const OperatorExpr &b, const LimitSequence &seq,
    const std::vector<double> &radii, double tol);

// ||M_{B[0,R]} (U_x A U_x^{-1} - lim) M_{B[0,R+omega]}||_2.
double certificateGap(const OperatorExpr &a, const OperatorExpr &lim, const Point &x, double radius);

}  // namespace limitops
