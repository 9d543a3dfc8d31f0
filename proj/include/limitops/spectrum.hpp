#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "limitops/fredholm.hpp"

namespace limitops
{

enum class SpectrumMethod
{
  Auto,
  SymbolOracle,
  Floquet,
  NuGrid
};

std::string toString(SpectrumMethod m);
SpectrumMethod spectrumMethodFromString(const std::string &s);

// {a(theta)} over a uniform theta grid: eigenvalues of the m x m matrix symbol when the
// space has a fiber of size m. Requires a translation-invariant operator on a lattice.
std::vector<Complex> symbolSpectrum(const OperatorExpr &op, int thetaGrid = 2048);

// Eigenvalues of the L x L Floquet matrices of a periodic operator on Z.
std::vector<Complex> floquetSpectrum(const OperatorExpr &op, int thetaGrid = 2048);

// z -> lower-norm indicator; must be 1-Lipschitz for grid pruning to be exact.
using Indicator = std::function<double(Complex)>;

// min_theta sigma_min(a(theta) - z).
Indicator symbolIndicator(const OperatorExpr &op, int thetaGrid = 2048);
Indicator floquetIndicator(const OperatorExpr &op, int thetaGrid = 2048);
// min(sigma_min(B - z), sigma_min(B^* - conj z)) on the block with columns window n Y and
// rows restricted to Y.
Indicator nuGridIndicator(const OperatorExpr &op, const Predicate &y, const Window &window);

struct SpectrumPoint
{
  Complex z;
  double indicator = 0;
  std::int64_t i = 0;  // z = (i + j i) * pitch
  std::int64_t j = 0;
  std::string source;
};

struct SpectrumEstimate
{
  std::string method;
  std::string limitLabel;
  double tau = 0.05;
  double pitch = 0.02;
  double halfWidth = 0;
  std::size_t evaluations = 0;
  std::vector<SpectrumPoint> points;  // indicator <= tau, sorted by (i, j)
};

// Grid points (i + j i) * pitch with |i|, |j| <= halfWidth / pitch whose indicator is <= tau.
// Blocks whose center value exceeds tau by more than their radius are skipped.
SpectrumEstimate gridCloud(const Indicator &ind, double pitch, double halfWidth, double tau);

struct SpectrumOptions
{
  SpectrumMethod method = SpectrumMethod::Auto;
  double tau = 0.05;
  double pitch = 0.02;
  double halfWidth = 0;  // 0: normBound of each limit operator + 0.1
  int thetaGrid = 2048;
  std::vector<double> windowSchedule = {25, 50, 100, 200};
  LimitOptions limits;
};

struct LimitSpectrumEntry
{
  std::string label;
  bool divergent = false;
  DivergenceReport divergence;
  bool skipped = false;
  std::string note;
  std::string method;
  std::vector<std::string> limitMethods;
  double windowRadius = 0;
  std::size_t cloudSize = 0;
  std::size_t evaluations = 0;
};

struct EssentialSpectrumReport
{
  SpectrumEstimate cloud;
  std::vector<LimitSpectrumEntry> entries;
  bool anyDivergent = false;
  std::string caveat = kFamilyCaveat;
};

// Union over the declared sequences of the spectra of the limits of PAP on the limit subspaces.
EssentialSpectrumReport essentialSpectrumEstimate(const OperatorExpr &a,
                                                  const SubspaceProjection &proj,
                                                  const std::vector<LimitSequence> &seqs,
                                                  const SpectrumOptions &opts);

// max over a of the distance to b.
double directedHausdorff(const std::vector<Complex> &a, const std::vector<Complex> &b);
double hausdorff(const std::vector<Complex> &a, const std::vector<Complex> &b);

}  // namespace limitops
