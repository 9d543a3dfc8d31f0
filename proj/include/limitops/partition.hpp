#pragma once

#include <cstdint>
#include <vector>

#include "limitops/space.hpp"

namespace limitops
{

struct PartitionTerm
{
  Point index;  // multi-index k of the function rho_k
  double rho = 0;
  double phi = 0;  // rho^(1/p)
};

// Product-of-hats partition of unity on a lattice.
//
// Per axis the bumps are h_k(s) = max(0, 1 - |s - kL|/L) on pitch L = floor(2d/t^2) + 1, and
// rho_k(x) = prod_i h_{k_i}(x_i). The fiber coordinate (if any) is ignored. Hats on adjacent
// nodes sum to one, so sum_k rho_k = 1 exactly, and the per-axis l1-variation is at most
// 2|x_i - y_i|/L, which keeps the total variation below t for d(x,y) <= 1/t.
class PartitionOfUnity
{
public:
  PartitionOfUnity() = default;
  PartitionOfUnity(const Space &space, double t, double p, Ball scope);

  double t() const { return t_; }
  double p() const { return p_; }
  std::int64_t pitch() const { return pitch_; }
  // sup_k diam(spt rho_k).
  double supportDiameter() const { return rt_; }
  const Ball &scope() const { return scope_; }
  // Margin by which the scope is shrunk before invariants are asserted.
  double margin() const { return rt_; }
  const Space &space() const { return space_; }

  // The nonzero functions at x (at most 2^d), ordered by index.
  std::vector<PartitionTerm> termsAt(const Point &x) const;
  double rho(const Point &k, const Point &x) const;
  double phi(const Point &k, const Point &x) const;

  // Indices of functions whose support meets B[center, radius], lexicographic.
  std::vector<Point> indicesMeeting(const Ball &b) const;

  // Support of rho_k intersected with b, in window order.
  std::vector<Point> supportWithin(const Point &k, const Window &w) const;

  // sum_k prod_i (L - |x_i - k_i L|) computed in integers; equals pitch()^d iff sum rho = 1.
  std::int64_t exactSumNumerator(const Point &x) const;
  std::int64_t exactDenominator() const;

private:
  Space space_ = Space::lattice(1);
  double t_ = 1;
  double p_ = 2;
  std::int64_t pitch_ = 1;
  double rt_ = 0;
  Ball scope_;
};

PartitionOfUnity buildPartition(const Space &space, double t, double p, const Ball &scope);

// sum_k |rho_k(x) - rho_k(y)| and sum_k |phi_k(x) - phi_k(y)|^p.
double rhoVariation(const PartitionOfUnity &part, const Point &x, const Point &y);
double phiVariation(const PartitionOfUnity &part, const Point &x, const Point &y);

}  // namespace limitops
