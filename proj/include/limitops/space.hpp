#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "limitops/point.hpp"

namespace limitops
{

enum class Metric
{
  L1,
  LInf
};

enum class SpaceKind
{
  Lattice,
  Graph
};

struct GraphData;

// A uniformly discrete proper metric space of bounded geometry with counting measure.
//
// Lattice spaces are Z^d with the l1 or l-infinity metric, optionally times a cyclic fiber
// Z_m (the fiber coordinate is stored last and combined with the same metric). Graph spaces
// are finite connected-or-not graphs of bounded degree with the path metric; vertices are
// one-coordinate points.
class Space
{
public:
  static Space lattice(int dim, Metric metric = Metric::LInf, int fiber = 1);
  static Space graph(std::vector<std::vector<std::int64_t>> adjacency, std::int64_t basepoint = 0);

  SpaceKind kind() const { return kind_; }
  bool isLattice() const { return kind_ == SpaceKind::Lattice; }
  // Number of translatable lattice axes (0 for graphs).
  int dim() const { return dim_; }
  // Number of stored coordinates per point.
  int coords() const;
  Metric metric() const { return metric_; }
  int fiber() const { return fiber_; }
  const Point &basepoint() const { return basepoint_; }
  std::size_t vertexCount() const;
  int maxDegree() const;
  const std::vector<std::vector<std::int64_t>> &adjacency() const;

  // Throws InputError if x is not a valid point of this space.
  void validate(const Point &x) const;
  bool isValid(const Point &x) const;

  double dist(const Point &x, const Point &y) const;

  // Lattice translation x + v (fiber coordinate wraps). Throws UnsupportedError on graphs.
  Point add(const Point &x, const Point &v) const;

  // All points y with d(x,y) <= r, ordered by (d(x,y), lexicographic).
  std::vector<Point> closedBall(const Point &x, double r) const;

  bool operator==(const Space &o) const;

private:
  Space() = default;

  SpaceKind kind_ = SpaceKind::Lattice;
  int dim_ = 1;
  Metric metric_ = Metric::LInf;
  int fiber_ = 1;
  Point basepoint_;
  std::shared_ptr<const GraphData> graph_;
};

// Closed ball descriptor without materialized points.
struct Ball
{
  Point center;
  double radius = 0;
};

// The closed ball B[center, radius] with its points in deterministic order.
class Window
{
public:
  Window() = default;
  Window(const Space &space, Point center, double radius);

  const Point &center() const { return ball_.center; }
  double radius() const { return ball_.radius; }
  const Ball &ball() const { return ball_; }
  const std::vector<Point> &points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  bool contains(const Point &x) const { return index_.count(x) > 0; }
  // Position of x in points(), or -1.
  std::ptrdiff_t indexOf(const Point &x) const;

private:
  Ball ball_;
  std::vector<Point> points_;
  std::unordered_map<Point, std::ptrdiff_t, PointHash> index_;
};

double dist(const Space &space, const Point &x, const Point &y);
Window ball(const Space &space, const Point &x, double r);

// True if B[x, s] is contained in the closed ball b.
bool ballContains(const Space &space, const Ball &b, const Point &x, double s);

struct GeometryEntry
{
  int r = 0;
  std::size_t maxBallSize = 0;
};

// N_r = max_{x in probe} |B[x,r]| for integer r = 0..floor(rMax).
std::vector<GeometryEntry> geometryProfile(const Space &space, double rMax, const Window &probe);

// Greedy maximal sep-separated subset of scope in scope order: pairwise distances >= sep and
// every scope point is at distance < sep from a net point.
std::vector<Point> separatedNet(const Space &space, const std::vector<Point> &scope, double sep);
std::vector<Point> separatedNet(const Space &space, const Window &scope, double sep);

}  // namespace limitops
