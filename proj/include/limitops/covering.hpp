#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "limitops/space.hpp"

namespace limitops
{

// Disjoint cells Q_j built around a maximal 2r-separated net x_j:
//   Q_j = B(x_j, 2r) \ (Q_1 u ... u Q_{j-1} u A_j),  A_j = union_{k != j} B(x_k, r),
// materialized on a finite scope. Open balls B(x, s) = {d < s}.
struct Covering
{
  double r = 0;
  Window scope;
  std::vector<Point> netPoints;
  std::vector<std::vector<Point>> cells;  // cells[j] in scope order
  std::unordered_map<Point, int, PointHash> cellOf;

  int cellIndex(const Point &x) const;
};

Covering buildCovering(const Space &space, const Window &scope, double r);

struct CoveringReport
{
  bool disjoint = false;
  bool covers = false;
  bool netInsideCells = false;  // B(x_j, r) n scope  <=  Q_j  <=  B(x_j, 2r)
  double maxDiameter = 0;
  // max_k |{j : dist(Q_j, Q_k) <= r}|, the empirical neighbor constant N.
  std::size_t maxNeighborCount = 0;
  // Bound from the construction: N_{6r}.
  std::size_t neighborBound = 0;
  // Boundary margin used for the neighbor count (cells meeting scope shrunk by 4r).
  double margin = 0;
};

CoveringReport checkCovering(const Space &space, const Covering &cov);

}  // namespace limitops
