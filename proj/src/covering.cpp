#include "limitops/covering.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "limitops/errors.hpp"

namespace limitops
{

int Covering::cellIndex(const Point &x) const
{
  auto it = cellOf.find(x);
  return it == cellOf.end() ? -1 : it->second;
}

Covering buildCovering(const Space &space, const Window &scope, double r)
{
  if (!(r >= 1))
  {
    throw InputError("covering radius must satisfy r >= 1");
  }
  Covering cov;
  cov.r = r;
  cov.scope = scope;
  cov.netPoints = separatedNet(space, scope, 2 * r);

  std::unordered_map<Point, int, PointHash> netIndex;
  for (std::size_t j = 0; j < cov.netPoints.size(); j++)
  {
    netIndex.emplace(cov.netPoints[j], static_cast<int>(j));
  }
  cov.cells.resize(cov.netPoints.size());

  // A point within distance < r of a net point x_o lies in A_j for every j != o, so it can
  // only belong to Q_o (at most one such o exists since the net is 2r-separated). Any other
  // point lies in no A_j and goes to the first j with d(x_j, y) < 2r.
  const double reach = std::ceil(2 * r) - 1;
  for (const auto &y : scope.points())
  {
    int owner = -1;
    int first = -1;
    for (const auto &z : space.closedBall(y, reach))
    {
      auto it = netIndex.find(z);
      if (it == netIndex.end())
      {
        continue;
      }
      const double d = space.dist(y, z);
      if (d < r)
      {
        owner = it->second;
      }
      if (d < 2 * r && (first < 0 || it->second < first))
      {
        first = it->second;
      }
    }
    const int j = owner >= 0 ? owner : first;
    if (j < 0)
    {
      throw std::logic_error("separated net is not maximal at " + y.str());
    }
    cov.cellOf.emplace(y, j);
    cov.cells[static_cast<std::size_t>(j)].push_back(y);
  }
  return cov;
}

CoveringReport checkCovering(const Space &space, const Covering &cov)
{
  CoveringReport rep;
  const double r = cov.r;

  std::size_t total = 0;
  std::set<Point> seen;
  rep.disjoint = true;
  for (const auto &cell : cov.cells)
  {
    for (const auto &y : cell)
    {
      total++;
      if (!seen.insert(y).second)
      {
        rep.disjoint = false;
      }
    }
  }
  rep.covers = total == cov.scope.size() && seen.size() == cov.scope.size();
  for (const auto &y : cov.scope.points())
  {
    if (!seen.count(y))
    {
      rep.covers = false;
    }
  }

  rep.netInsideCells = true;
  for (std::size_t j = 0; j < cov.cells.size(); j++)
  {
    const auto &xj = cov.netPoints[j];
    std::set<Point> cell(cov.cells[j].begin(), cov.cells[j].end());
    for (const auto &y : cov.cells[j])
    {
      if (!(space.dist(xj, y) < 2 * r))
      {
        rep.netInsideCells = false;
      }
    }
    for (const auto &y : space.closedBall(xj, std::ceil(r) - 1))
    {
      if (space.dist(xj, y) < r && cov.scope.contains(y) && !cell.count(y))
      {
        rep.netInsideCells = false;
      }
    }
    for (std::size_t a = 0; a < cov.cells[j].size(); a++)
    {
      for (std::size_t b = a + 1; b < cov.cells[j].size(); b++)
      {
        rep.maxDiameter = std::max(rep.maxDiameter, space.dist(cov.cells[j][a], cov.cells[j][b]));
      }
    }
  }

  // dist(Q_j, Q_k) <= r iff some y in Q_k has a point of Q_j in B[y, r].
  for (std::size_t k = 0; k < cov.cells.size(); k++)
  {
    std::set<int> nbrs;
    for (const auto &y : cov.cells[k])
    {
      for (const auto &z : space.closedBall(y, r))
      {
        const int j = cov.cellIndex(z);
        if (j >= 0)
        {
          nbrs.insert(j);
        }
      }
    }
    rep.maxNeighborCount = std::max(rep.maxNeighborCount, nbrs.size());
  }

  if (!cov.scope.empty())
  {
    rep.neighborBound = space.closedBall(cov.scope.center(), 6 * r).size();
    if (!space.isLattice())
    {
      for (const auto &x : cov.scope.points())
      {
        rep.neighborBound = std::max(rep.neighborBound, space.closedBall(x, 6 * r).size());
      }
    }
  }
  rep.margin = 0;
  return rep;
}

}  // namespace limitops
