#pragma once

#include <string>
#include <vector>

#include "limitops/limits.hpp"
#include "limitops/norms.hpp"
#include "limitops/partition.hpp"
#include "limitops/subspace.hpp"

namespace limitops
{

inline const std::string kFamilyCaveat =
    "limit operators were extracted only along the declared sequence family, which is a subset "
    "of the boundary; verdicts cover that family only";

// inf over unit f supported in `support` of ||Bf||_p. Exact for p = 2 (smallest singular
// value of the block with every nonzero row kept); an upper bound otherwise.
double lowerNormWindow(const OperatorExpr &b, const std::vector<Point> &support, double p = 2);
double lowerNormWindow(const OperatorExpr &b, const Window &support, double p = 2);

struct LocalizedLowerNorm
{
  double value = INFINITY;
  std::size_t centers = 0;
  std::string warning;
};

// nu(B|_F) over F n scope.
LocalizedLowerNorm lowerNormRestricted(const OperatorExpr &b, const Predicate &f,
                                       const Window &scope, double p = 2);
// min over centers x in scope of nu on B[x, r_t] n F n scope.
LocalizedLowerNorm lowerNormLocalized(const OperatorExpr &b, const Predicate &f,
                                      const PartitionOfUnity &phi, const Window &scope);

enum class InvertibilityVerdict
{
  NotInvertibleAtLevel,
  EvidenceInvertible,
  Inconclusive
};

std::string toString(InvertibilityVerdict v);

struct InvertibilityStep
{
  double radius = 0;
  std::size_t columns = 0;
  double nu = 0;
  double nuStar = 0;
  double nuUpper = 0;      // running minimum
  double nuStarUpper = 0;  // running minimum
};

struct InvertibilityEstimate
{
  std::vector<InvertibilityStep> steps;
  double nuUpper = INFINITY;
  double nuStarUpper = INFINITY;
  double tau = 0;
  InvertibilityVerdict verdict = InvertibilityVerdict::Inconclusive;
  double margin = 0;
  double lastRelativeChange = INFINITY;
};

// Balls B[center, R] for R in the schedule; both nu(B) and nu(B^*) are tracked.
InvertibilityEstimate invertibilityEstimate(const OperatorExpr &b,
                                            const std::vector<double> &windowSchedule, double tau,
                                            double p = 2, const Point &center = {});

struct LimitOptions
{
  std::vector<double> radii = {4, 8, 16};
  double tol = 0.02;
};

struct CompactnessEntry
{
  std::string label;
  bool divergent = false;
  DivergenceReport divergence;
  LimitOperator limit;
  std::vector<double> gaps;  // ||A_x|| on each certified window
};

struct CompactnessReport
{
  std::string verdict;  // compact-consistent, not-compact, divergent
  std::vector<CompactnessEntry> entries;
  double maxGap = 0;
  std::string caveat = kFamilyCaveat;
};

CompactnessReport compactnessTest(const OperatorExpr &a, const std::vector<LimitSequence> &seqs,
                                  const LimitOptions &opts);

struct FredholmEntry
{
  std::string label;
  bool divergent = false;
  DivergenceReport divergence;
  LimitOperator limit;
  InvertibilityEstimate estimate;
  std::vector<double> schedule;  // windows actually used
  std::string note;
};

struct FredholmReport
{
  std::string verdict;  // Fredholm-consistent, notFredholm, inconclusive, divergent
  std::vector<FredholmEntry> entries;
  double minMargin = INFINITY;
  double inverseNormEstimate = 0;  // 1 / minMargin over the family
  std::string caveat = kFamilyCaveat;
  std::string rationale;
};

struct FredholmOptions
{
  std::vector<double> windowSchedule = {25, 50, 100, 200};
  double tau = 0.05;
  double p = 2;
  LimitOptions limits;
};

FredholmReport fredholmTest(const OperatorExpr &a, const SubspaceProjection &proj,
                            const std::vector<LimitSequence> &seqs, const FredholmOptions &opts);

struct EssNormEntry
{
  std::string label;
  bool divergent = false;
  DivergenceReport divergence;
  double lower = 0;
  double upper = 0;
};

struct EssNormReport
{
  NormInterval estimate;
  std::vector<EssNormEntry> entries;
  std::string caveat = kFamilyCaveat;
  bool anyDivergent = false;
};

EssNormReport essNormEstimate(const OperatorExpr &a, const SubspaceProjection &proj,
                              const std::vector<LimitSequence> &seqs,
                              const std::vector<double> &windowSchedule, const LimitOptions &opts);

}  // namespace limitops
