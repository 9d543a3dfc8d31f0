#include "limitops/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

constexpr double kBisectionRelTol = 1e-15;
constexpr int kBisectionMaxIter = 200;

}  // namespace

Block assembleBlock(const OperatorExpr &a, std::vector<Point> cols,
                    const std::function<bool(const Point &)> &rowFilter, bool includeCols)
{
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());

  std::vector<SparseRow> columns(cols.size());
  std::vector<Point> rows;
  for (std::size_t j = 0; j < cols.size(); j++)
  {
    columns[j] = a.column(cols[j]);
    if (rowFilter)
    {
      std::erase_if(columns[j], [&](const auto &e) { return !rowFilter(e.first); });
    }
    for (const auto &e : columns[j])
    {
      rows.push_back(e.first);
    }
  }
  if (includeCols)
  {
    rows.insert(rows.end(), cols.begin(), cols.end());
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  std::unordered_map<Point, int, PointHash> rowIndex;
  rowIndex.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); i++)
  {
    rowIndex.emplace(rows[i], static_cast<int>(i));
  }
  std::vector<Eigen::Triplet<Complex>> trips;
  for (std::size_t j = 0; j < cols.size(); j++)
  {
    for (const auto &[y, v] : columns[j])
    {
      trips.emplace_back(rowIndex.at(y), static_cast<int>(j), v);
    }
  }
  Block b;
  b.m.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  b.m.setFromTriplets(trips.begin(), trips.end());
  b.m.makeCompressed();
  b.rows = std::move(rows);
  b.cols = std::move(cols);
  return b;
}

int bandwidth(const SparseMatrix &g)
{
  int kd = 0;
  for (int j = 0; j < g.outerSize(); j++)
  {
    for (SparseMatrix::InnerIterator it(g, j); it; ++it)
    {
      kd = std::max(kd, std::abs(static_cast<int>(it.row()) - j));
    }
  }
  return kd;
}

HermitianBand::HermitianBand(int n, int kd)
  : n_(n), kd_(kd), ab_(static_cast<std::size_t>(n) * static_cast<std::size_t>(kd + 1), 0.0)
{
}

HermitianBand HermitianBand::fromSparse(const SparseMatrix &g)
{
  HermitianBand b(static_cast<int>(g.cols()), bandwidth(g));
  for (int j = 0; j < g.outerSize(); j++)
  {
    for (SparseMatrix::InnerIterator it(g, j); it; ++it)
    {
      if (it.row() <= j)
      {
        b.at(static_cast<int>(it.row()), j) = it.value();
      }
    }
  }
  return b;
}

Complex &HermitianBand::at(int i, int j)
{
  return ab_[static_cast<std::size_t>(kd_ + i - j) + static_cast<std::size_t>(j) * (kd_ + 1)];
}

Complex HermitianBand::at(int i, int j) const
{
  return ab_[static_cast<std::size_t>(kd_ + i - j) + static_cast<std::size_t>(j) * (kd_ + 1)];
}

bool HermitianBand::positiveDefinite(double shift) const
{
  if (n_ == 0)
  {
    return true;
  }
  std::vector<Complex> work = ab_;
  for (int j = 0; j < n_; j++)
  {
    work[static_cast<std::size_t>(kd_) + static_cast<std::size_t>(j) * (kd_ + 1)] += shift;
  }
  const lapack_int info = LAPACKE_zpbtrf(LAPACK_COL_MAJOR, 'U', n_, kd_, work.data(), kd_ + 1);
  return info == 0;
}

bool HermitianBand::negativeShiftDefinite(double shift) const
{
  if (n_ == 0)
  {
    return true;
  }
  std::vector<Complex> work(ab_.size());
  for (std::size_t i = 0; i < ab_.size(); i++)
  {
    work[i] = -ab_[i];
  }
  for (int j = 0; j < n_; j++)
  {
    work[static_cast<std::size_t>(kd_) + static_cast<std::size_t>(j) * (kd_ + 1)] += shift;
  }
  const lapack_int info = LAPACKE_zpbtrf(LAPACK_COL_MAJOR, 'U', n_, kd_, work.data(), kd_ + 1);
  return info == 0;
}

double HermitianBand::gershgorin() const
{
  std::vector<double> rowSum(static_cast<std::size_t>(n_), 0.0);
  for (int j = 0; j < n_; j++)
  {
    for (int i = std::max(0, j - kd_); i <= j; i++)
    {
      const double v = std::abs(at(i, j));
      rowSum[static_cast<std::size_t>(i)] += v;
      if (i != j)
      {
        rowSum[static_cast<std::size_t>(j)] += v;
      }
    }
  }
  double m = 0;
  for (double s : rowSum)
  {
    m = std::max(m, s);
  }
  return m;
}

double HermitianBand::lambdaMin() const
{
  if (n_ == 0)
  {
    return std::numeric_limits<double>::infinity();
  }
  if (!positiveDefinite(0.0))
  {
    return 0.0;
  }
  double lo = 0;
  double hi = gershgorin();
  for (int it = 0; it < kBisectionMaxIter && hi - lo > kBisectionRelTol * hi; it++)
  {
    const double mid = 0.5 * (lo + hi);
    if (positiveDefinite(-mid))
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return lo;
}

double HermitianBand::lambdaMax() const
{
  if (n_ == 0)
  {
    return 0.0;
  }
  double lo = 0;
  double hi = gershgorin() * (1 + 1e-12) + std::numeric_limits<double>::min();
  for (int it = 0; it < kBisectionMaxIter && hi - lo > kBisectionRelTol * hi; it++)
  {
    const double mid = 0.5 * (lo + hi);
    if (negativeShiftDefinite(mid))
    {
      hi = mid;
    }
    else
    {
      lo = mid;
    }
  }
  return hi;
}

namespace
{

bool preferDense(int n, int kd)
{
  return n <= kDenseColumnLimit || 4 * kd > n;
}

}  // namespace

double largestSingularValue(const SparseMatrix &m)
{
  if (m.rows() == 0 || m.cols() == 0 || m.nonZeros() == 0)
  {
    return 0.0;
  }
  if (std::min(m.rows(), m.cols()) <= kDenseColumnLimit)
  {
    Eigen::BDCSVD<DenseMatrix> svd{DenseMatrix(m)};
    return svd.singularValues()(0);
  }
  const SparseMatrix g = m.cols() <= m.rows() ? SparseMatrix(m.adjoint() * m)
                                              : SparseMatrix(m * m.adjoint());
  const int kd = bandwidth(g);
  if (preferDense(static_cast<int>(g.cols()), kd))
  {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix(g), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  }
  return std::sqrt(HermitianBand::fromSparse(g).lambdaMax());
}

double smallestSingularValue(const SparseMatrix &m)
{
  if (m.cols() == 0)
  {
    return std::numeric_limits<double>::infinity();
  }
  if (m.rows() < m.cols())
  {
    return 0.0;
  }
  if (m.cols() <= kDenseColumnLimit)
  {
    Eigen::BDCSVD<DenseMatrix> svd{DenseMatrix(m)};
    return svd.singularValues()(m.cols() - 1);
  }
  const SparseMatrix g = m.adjoint() * m;
  const int kd = bandwidth(g);
  if (preferDense(static_cast<int>(g.cols()), kd))
  {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(DenseMatrix(g), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
  }
  return std::sqrt(HermitianBand::fromSparse(g).lambdaMin());
}

ShiftedPencil::ShiftedPencil(const Block &b) : n_(static_cast<int>(b.cols.size()))
{
  std::unordered_map<Point, int, PointHash> colIndex;
  for (int j = 0; j < n_; j++)
  {
    colIndex.emplace(b.cols[static_cast<std::size_t>(j)], j);
  }
  // rowToCol[r] = column index of row point r, or -1.
  std::vector<int> rowToCol(b.rows.size(), -1);
  for (std::size_t r = 0; r < b.rows.size(); r++)
  {
    auto it = colIndex.find(b.rows[r]);
    if (it != colIndex.end())
    {
      rowToCol[r] = it->second;
    }
  }
  for (int j = 0; j < n_; j++)
  {
    if (std::find(rowToCol.begin(), rowToCol.end(), j) == rowToCol.end())
    {
      throw InputError("pencil rows must contain every column point");
    }
  }
  h_.resize(static_cast<std::size_t>(n_));
  int kdH = 0;
  for (int j = 0; j < b.m.outerSize(); j++)
  {
    for (SparseMatrix::InnerIterator it(b.m, j); it; ++it)
    {
      const int i = rowToCol[static_cast<std::size_t>(it.row())];
      if (i >= 0)
      {
        h_[static_cast<std::size_t>(j)].emplace_back(i, it.value());
        kdH = std::max(kdH, std::abs(i - j));
      }
    }
  }
  const SparseMatrix g0 = b.m.adjoint() * b.m;
  const int kd = std::max(bandwidth(g0), kdH);
  dense_ = preferDense(n_, kd);
  if (dense_)
  {
    bDense_ = DenseMatrix(g0);
    cDense_ = DenseMatrix::Zero(n_, n_);
    for (int j = 0; j < n_; j++)
    {
      for (const auto &[i, v] : h_[static_cast<std::size_t>(j)])
      {
        cDense_(i, j) = v;
      }
    }
    return;
  }
  g0_ = HermitianBand(n_, kd);
  for (int j = 0; j < g0.outerSize(); j++)
  {
    for (SparseMatrix::InnerIterator it(g0, j); it; ++it)
    {
      if (it.row() <= j)
      {
        g0_.at(static_cast<int>(it.row()), j) = it.value();
      }
    }
  }
}

double ShiftedPencil::smallestSingularValue(Complex z) const
{
  if (n_ == 0)
  {
    return std::numeric_limits<double>::infinity();
  }
  const double z2 = std::norm(z);
  if (dense_)
  {
    DenseMatrix g = bDense_ - z * cDense_.adjoint() - std::conj(z) * cDense_;
    g.diagonal().array() += z2;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().minCoeff()));
  }
  HermitianBand g = g0_;
  for (int j = 0; j < n_; j++)
  {
    g.at(j, j) += z2;
    for (const auto &[i, v] : h_[static_cast<std::size_t>(j)])
    {
      if (i <= j)
      {
        g.at(i, j) -= std::conj(z) * v;
      }
      if (i >= j)
      {
        g.at(j, i) -= z * std::conj(v);
      }
    }
  }
  return std::sqrt(g.lambdaMin());
}

double vectorPNorm(const DenseVector &v, double p)
{
  double s = 0;
  for (Eigen::Index i = 0; i < v.size(); i++)
  {
    s += std::pow(std::abs(v(i)), p);
  }
  return std::pow(s, 1.0 / p);
}

namespace
{

// The norming functional of y in l_p, an element of l_q with unit norm.
DenseVector dualVector(const DenseVector &y, double p)
{
  const double n = vectorPNorm(y, p);
  DenseVector z = DenseVector::Zero(y.size());
  if (n == 0)
  {
    return z;
  }
  for (Eigen::Index i = 0; i < y.size(); i++)
  {
    const double a = std::abs(y(i));
    if (a > 0)
    {
      z(i) = std::pow(a / n, p - 1) * (y(i) / a);
    }
  }
  return z;
}

}  // namespace

NormInterval pNormInterval(const SparseMatrix &m, double p)
{
  if (m.nonZeros() == 0)
  {
    return {0, 0};
  }
  Eigen::VectorXd colSum = Eigen::VectorXd::Zero(m.cols());
  Eigen::VectorXd rowSum = Eigen::VectorXd::Zero(m.rows());
  double lower = 0;
  for (int j = 0; j < m.outerSize(); j++)
  {
    double colP = 0;
    for (SparseMatrix::InnerIterator it(m, j); it; ++it)
    {
      const double a = std::abs(it.value());
      colSum(j) += a;
      rowSum(it.row()) += a;
      colP += std::pow(a, p);
    }
    lower = std::max(lower, std::pow(colP, 1.0 / p));
  }
  const double upper =
      std::pow(colSum.maxCoeff(), 1.0 / p) * std::pow(rowSum.maxCoeff(), 1.0 - 1.0 / p);

  const double q = p / (p - 1);
  const SparseMatrix mt = m.adjoint();
  Eigen::Index best = 0;
  colSum.maxCoeff(&best);
  std::vector<DenseVector> starts = {DenseVector::Ones(m.cols()), DenseVector::Zero(m.cols())};
  starts[1](best) = 1.0;
  for (auto x : starts)
  {
    x /= vectorPNorm(x, p);
    for (int it = 0; it < 50; it++)
    {
      const DenseVector y = m * x;
      lower = std::max(lower, vectorPNorm(y, p));
      const DenseVector w = mt * dualVector(y, p);
      const DenseVector next = dualVector(w, q);
      if (next.size() == 0 || vectorPNorm(next, p) == 0)
      {
        break;
      }
      x = next / vectorPNorm(next, p);
    }
  }
  return {std::min(lower, upper), upper};
}

double lowerPNormUpper(const SparseMatrix &m, double p)
{
  if (m.cols() == 0)
  {
    return std::numeric_limits<double>::infinity();
  }
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m.outerSize(); j++)
  {
    double colP = 0;
    for (SparseMatrix::InnerIterator it(m, j); it; ++it)
    {
      colP += std::pow(std::abs(it.value()), p);
    }
    best = std::min(best, std::pow(colP, 1.0 / p));
  }
  if (m.cols() <= kDenseColumnLimit && m.rows() >= m.cols())
  {
    Eigen::JacobiSVD<DenseMatrix> svd(DenseMatrix(m), Eigen::ComputeThinV);
    const DenseVector v = svd.matrixV().col(m.cols() - 1);
    const double nv = vectorPNorm(v, p);
    if (nv > 0)
    {
      best = std::min(best, vectorPNorm(m * v, p) / nv);
    }
  }
  return best;
}

}  // namespace limitops
