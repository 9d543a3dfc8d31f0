#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "limitops/operator.hpp"

namespace limitops::testing
{

// Band operator on Z^d with random real coefficients in [-1, 1] on every offset of l-inf
// length <= omega.
inline OperatorExpr randomBand(const Space &space, int omega, std::uint64_t seed)
{
  std::vector<StencilEntry> st;
  const auto offsets = space.closedBall(Point::zeros(space.coords()), omega);
  std::uint64_t s = seed;
  for (const auto &o : offsets)
  {
    st.push_back({o, CoefficientField::random(s++, 1.0)});
  }
  return OperatorExpr::band(BandOperator(space, st));
}

// Dense matrix of entries a(x, y) read one at a time.
inline Eigen::MatrixXcd denseFromEntries(const OperatorExpr &a, const std::vector<Point> &rows,
                                         const std::vector<Point> &cols)
{
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); i++)
  {
    for (std::size_t j = 0; j < cols.size(); j++)
    {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a.entry(rows[i], cols[j]);
    }
  }
  return m;
}

inline double denseMaxSV(const Eigen::MatrixXcd &m)
{
  if (m.size() == 0)
  {
    return 0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

// sigma_min over the columns: 0 when there are fewer rows than columns.
inline double denseMinSV(const Eigen::MatrixXcd &m)
{
  if (m.cols() == 0)
  {
    return INFINITY;
  }
  if (m.rows() < m.cols())
  {
    return 0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(m.cols() - 1);
}

// Evenly spaced samples of the real segment [lo, hi].
inline std::vector<Complex> segment(double lo, double hi, double step)
{
  std::vector<Complex> out;
  const auto n = static_cast<int>(std::ceil((hi - lo) / step));
  for (int i = 0; i <= n; i++)
  {
    out.emplace_back(std::min(hi, lo + i * step), 0.0);
  }
  return out;
}

inline double bruteDirected(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
  double worst = 0;
  for (auto p : a)
  {
    double best = INFINITY;
    for (auto q : b)
    {
      best = std::min(best, std::abs(p - q));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace limitops::testing
