#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "limitops/operator.hpp"

namespace limitops
{

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

// A finite block M_{1_rows} A M_{1_cols} with rows and columns sorted lexicographically.
struct Block
{
  std::vector<Point> rows;
  std::vector<Point> cols;
  SparseMatrix m;
};

// Columns are `cols`; rows are every point with a nonzero entry in some column, intersected
// with rowFilter when given, plus the columns themselves when includeCols is set.
Block assembleBlock(const OperatorExpr &a, std::vector<Point> cols,
                    const std::function<bool(const Point &)> &rowFilter = nullptr,
                    bool includeCols = false);

// Windows up to this many columns use a dense SVD.
inline constexpr int kDenseColumnLimit = 256;

double largestSingularValue(const SparseMatrix &m);
// sqrt(lambda_min(m^* m)); zero when m has fewer rows than columns.
double smallestSingularValue(const SparseMatrix &m);

// Hermitian band matrix in LAPACK upper band storage.
class HermitianBand
{
public:
  HermitianBand() = default;
  HermitianBand(int n, int kd);
  // Dense or banded according to bandwidth; entries outside the band must be zero.
  static HermitianBand fromSparse(const SparseMatrix &g);

  int n() const { return n_; }
  int kd() const { return kd_; }
  Complex &at(int i, int j);  // i <= j, j - i <= kd
  Complex at(int i, int j) const;

  // True if this + shift * I is positive definite.
  bool positiveDefinite(double shift) const;
  // True if shift * I - this is positive definite.
  bool negativeShiftDefinite(double shift) const;
  double gershgorin() const;

  // For positive semidefinite matrices: 0 unless positive definite.
  double lambdaMin() const;
  double lambdaMax() const;

private:
  int n_ = 0;
  int kd_ = 0;
  std::vector<Complex> ab_;
};

int bandwidth(const SparseMatrix &g);

// sigma_min(B - zC) for a family of shifts, where C embeds the columns into the rows.
// Precomputes B^*B and C^*B so each evaluation is a banded factorization sequence.
class ShiftedPencil
{
public:
  explicit ShiftedPencil(const Block &b);
  double smallestSingularValue(Complex z) const;
  int columns() const { return n_; }

private:
  int n_ = 0;
  bool dense_ = false;
  DenseMatrix bDense_;
  DenseMatrix cDense_;
  HermitianBand g0_;
  std::vector<std::vector<std::pair<int, Complex>>> h_;  // h_[j] = column j of C^*B
};

struct NormInterval
{
  double lower = 0;
  double upper = 0;
  bool exact() const { return lower == upper; }
};

// ||m||_p for p != 2: Riesz-Thorin upper bound and a power-method lower bound.
NormInterval pNormInterval(const SparseMatrix &m, double p);
// Upper bound on inf ||m f||_p / ||f||_p from unit vectors and the p = 2 minimizer.
double lowerPNormUpper(const SparseMatrix &m, double p);

double vectorPNorm(const DenseVector &v, double p);

}  // namespace limitops
