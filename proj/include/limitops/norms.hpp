#pragma once

#include <map>
#include <string>
#include <vector>

#include "limitops/linalg.hpp"
#include "limitops/operator.hpp"
#include "limitops/partition.hpp"
#include "limitops/predicate.hpp"

namespace limitops
{

using FiniteVector = std::map<Point, Complex>;

// Af on outWindow, in window order. Refuses (TruncationError) unless supp f + prop(A) lies
// inside outWindow, so the result is the exact image.
std::vector<Complex> apply(const OperatorExpr &a, const FiniteVector &f, const Window &outWindow);

// ||M_{1_K} A M_{1_K'}||_p. Exact for p = 2; an interval otherwise.
NormInterval windowNorm(const OperatorExpr &a, const std::vector<Point> &k,
                        const std::vector<Point> &kPrime, double p = 2);
NormInterval windowNorm(const OperatorExpr &a, const Window &k, const Window &kPrime, double p = 2);
// ||A M_{1_K'}||_p with every row kept.
NormInterval columnNorm(const OperatorExpr &a, const std::vector<Point> &kPrime, double p = 2);

// Norm of f -> ([A, M_{phi_j}] f)_j on f supported in scope, p taken from the partition.
// Refuses unless the partition scope contains scope + prop(A).
NormInterval commutatorStackNorm(const OperatorExpr &a, const PartitionOfUnity &phi,
                                 const Window &scope);

struct BdoDiagnostic
{
  std::vector<double> t;
  std::vector<NormInterval> values;
  std::vector<double> ratios;  // upper value / t^(1/p)
  double fittedC = 0;          // ratio at the largest t
  double fittedExponent = 0;   // least-squares slope of log value against log t
  double maxRatioSpread = 0;   // max ratio / min ratio
  std::string classification;  // "band-consistent" or "inconclusive"
};

BdoDiagnostic bdoDiagnostic(const OperatorExpr &a, const std::vector<double> &tGrid,
                            const Window &scope, double p = 2);

struct RestrictedNorm
{
  NormInterval norm;
  std::size_t columns = 0;
  std::size_t centers = 0;
  std::string warning;
};

// ||A|_F|| = ||A M_{1_{F n scope}}||.
RestrictedNorm restrictedNorm(const OperatorExpr &a, const Predicate &f, const Window &scope,
                              double p = 2);
// max over x in scope of ||A M_{1_{B[x, r_t] n F n scope}}||.
RestrictedNorm localizedNorm(const OperatorExpr &a, const Predicate &f, const PartitionOfUnity &phi,
                             const Window &scope);

std::vector<Point> intersect(const Predicate &f, const Window &scope);

// Column sets B[x, r] n F n scope over centers x in scope, duplicates removed, in first-seen order.
std::vector<std::vector<Point>> localizedSupports(const Space &space, const Predicate &f,
                                                  const Window &scope, double r);

}  // namespace limitops
