#include "limitops/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <unordered_set>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

constexpr std::size_t kAllPairsLimit = 2048;
constexpr double kRadiusSlack = 1e-9;

std::int64_t cyclicDistance(std::int64_t a, std::int64_t b, std::int64_t m)
{
  const std::int64_t d = std::llabs(a - b) % m;
  return std::min(d, m - d);
}

std::int64_t floorMod(std::int64_t a, std::int64_t m)
{
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

struct GraphData
{
  std::vector<std::vector<std::int64_t>> adjacency;
  int maxDegree = 0;
  // Row-major all-pairs distances when the graph is small; -1 marks unreachable.
  std::vector<std::int32_t> allPairs;

  std::vector<std::int32_t> bfs(std::int64_t source, std::int32_t limit) const
  {
    std::vector<std::int32_t> d(adjacency.size(), -1);
    std::deque<std::int64_t> queue{source};
    d[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty())
    {
      const auto v = queue.front();
      queue.pop_front();
      const auto dv = d[static_cast<std::size_t>(v)];
      if (limit >= 0 && dv >= limit)
      {
        continue;
      }
      for (auto w : adjacency[static_cast<std::size_t>(v)])
      {
        if (d[static_cast<std::size_t>(w)] < 0)
        {
          d[static_cast<std::size_t>(w)] = dv + 1;
          queue.push_back(w);
        }
      }
    }
    return d;
  }
};

Space Space::lattice(int dim, Metric metric, int fiber)
{
  if (dim < 1 || dim + (fiber > 1 ? 1 : 0) > kMaxCoords)
  {
    throw InputError("lattice dimension must be in [1," + std::to_string(kMaxCoords) +
                     "] including the fiber coordinate");
  }
  if (fiber < 1)
  {
    throw InputError("fiber size must be >= 1");
  }
  Space s;
  s.kind_ = SpaceKind::Lattice;
  s.dim_ = dim;
  s.metric_ = metric;
  s.fiber_ = fiber;
  s.basepoint_ = Point::zeros(s.coords());
  return s;
}

Space Space::graph(std::vector<std::vector<std::int64_t>> adjacency, std::int64_t basepoint)
{
  const auto n = static_cast<std::int64_t>(adjacency.size());
  if (n == 0)
  {
    throw InputError("graph must have at least one vertex");
  }
  auto data = std::make_shared<GraphData>();
  for (std::int64_t v = 0; v < n; v++)
  {
    auto &nbrs = adjacency[static_cast<std::size_t>(v)];
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    for (auto w : nbrs)
    {
      if (w < 0 || w >= n || w == v)
      {
        throw InputError("invalid adjacency entry " + std::to_string(w) + " at vertex " +
                         std::to_string(v));
      }
    }
    data->maxDegree = std::max(data->maxDegree, static_cast<int>(nbrs.size()));
  }
  for (std::int64_t v = 0; v < n; v++)
  {
    for (auto w : adjacency[static_cast<std::size_t>(v)])
    {
      const auto &back = adjacency[static_cast<std::size_t>(w)];
      if (!std::binary_search(back.begin(), back.end(), v))
      {
        throw InputError("adjacency is not symmetric between " + std::to_string(v) + " and " +
                         std::to_string(w));
      }
    }
  }
  if (basepoint < 0 || basepoint >= n)
  {
    throw InputError("graph basepoint out of range");
  }
  data->adjacency = std::move(adjacency);
  if (static_cast<std::size_t>(n) <= kAllPairsLimit)
  {
    data->allPairs.resize(static_cast<std::size_t>(n * n));
    for (std::int64_t v = 0; v < n; v++)
    {
      auto d = data->bfs(v, -1);
      std::copy(d.begin(), d.end(), data->allPairs.begin() + v * n);
    }
  }
  Space s;
  s.kind_ = SpaceKind::Graph;
  s.dim_ = 0;
  s.metric_ = Metric::L1;
  s.fiber_ = 1;
  s.basepoint_ = Point{basepoint};
  s.graph_ = std::move(data);
  return s;
}

int Space::coords() const
{
  if (kind_ == SpaceKind::Graph)
  {
    return 1;
  }
  return dim_ + (fiber_ > 1 ? 1 : 0);
}

std::size_t Space::vertexCount() const
{
  return graph_ ? graph_->adjacency.size() : 0;
}

int Space::maxDegree() const
{
  if (graph_)
  {
    return graph_->maxDegree;
  }
  return -1;
}

const std::vector<std::vector<std::int64_t>> &Space::adjacency() const
{
  static const std::vector<std::vector<std::int64_t>> empty;
  return graph_ ? graph_->adjacency : empty;
}

bool Space::isValid(const Point &x) const
{
  if (x.size() != coords())
  {
    return false;
  }
  if (kind_ == SpaceKind::Graph)
  {
    return x[0] >= 0 && static_cast<std::size_t>(x[0]) < graph_->adjacency.size();
  }
  if (fiber_ > 1)
  {
    const auto f = x[dim_];
    return f >= 0 && f < fiber_;
  }
  return true;
}

void Space::validate(const Point &x) const
{
  if (!isValid(x))
  {
    throw InputError("invalid point " + x.str() + " for this space");
  }
}

double Space::dist(const Point &x, const Point &y) const
{
  validate(x);
  validate(y);
  if (kind_ == SpaceKind::Graph)
  {
    const auto n = static_cast<std::int64_t>(graph_->adjacency.size());
    std::int32_t d;
    if (!graph_->allPairs.empty())
    {
      d = graph_->allPairs[static_cast<std::size_t>(x[0] * n + y[0])];
    }
    else
    {
      d = graph_->bfs(x[0], -1)[static_cast<std::size_t>(y[0])];
    }
    if (d < 0)
    {
      throw InputError("points " + x.str() + " and " + y.str() + " are in different components");
    }
    return d;
  }
  std::int64_t acc = 0;
  for (int i = 0; i < dim_; i++)
  {
    const std::int64_t di = std::llabs(x[i] - y[i]);
    acc = metric_ == Metric::L1 ? acc + di : std::max(acc, di);
  }
  if (fiber_ > 1)
  {
    const auto df = cyclicDistance(x[dim_], y[dim_], fiber_);
    acc = metric_ == Metric::L1 ? acc + df : std::max(acc, df);
  }
  return static_cast<double>(acc);
}

Point Space::add(const Point &x, const Point &v) const
{
  if (kind_ == SpaceKind::Graph)
  {
    throw UnsupportedError("translation is not defined on graph spaces");
  }
  Point y = x + v;
  if (fiber_ > 1)
  {
    y[dim_] = floorMod(y[dim_], fiber_);
  }
  return y;
}

std::vector<Point> Space::closedBall(const Point &x, double r) const
{
  validate(x);
  if (r < 0)
  {
    throw InputError("ball radius must be nonnegative");
  }
  const auto R = static_cast<std::int64_t>(std::floor(r + kRadiusSlack));
  std::vector<std::pair<std::int64_t, Point>> found;
  if (kind_ == SpaceKind::Graph)
  {
    const auto d = graph_->bfs(x[0], static_cast<std::int32_t>(std::min<std::int64_t>(R, INT32_MAX)));
    for (std::size_t v = 0; v < d.size(); v++)
    {
      if (d[v] >= 0 && d[v] <= R)
      {
        found.emplace_back(d[v], Point{static_cast<std::int64_t>(v)});
      }
    }
  }
  else
  {
    const int n = coords();
    Point y = x;
    std::vector<std::int64_t> lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    for (int i = 0; i < dim_; i++)
    {
      lo[i] = x[i] - R;
      hi[i] = x[i] + R;
    }
    if (fiber_ > 1)
    {
      lo[dim_] = 0;
      hi[dim_] = fiber_ - 1;
    }
    for (int i = 0; i < n; i++)
    {
      y[i] = lo[i];
    }
    while (true)
    {
      const auto d = static_cast<std::int64_t>(dist(x, y));
      if (d <= R)
      {
        found.emplace_back(d, y);
      }
      int i = n - 1;
      while (i >= 0 && y[i] == hi[i])
      {
        y[i] = lo[i];
        i--;
      }
      if (i < 0)
      {
        break;
      }
      y[i]++;
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<Point> out;
  out.reserve(found.size());
  for (auto &f : found)
  {
    out.push_back(f.second);
  }
  return out;
}

bool Space::operator==(const Space &o) const
{
  if (kind_ != o.kind_)
  {
    return false;
  }
  if (kind_ == SpaceKind::Graph)
  {
    return graph_ == o.graph_ || graph_->adjacency == o.graph_->adjacency;
  }
  return dim_ == o.dim_ && metric_ == o.metric_ && fiber_ == o.fiber_;
}

Window::Window(const Space &space, Point center, double radius)
  : ball_{std::move(center), radius}
{
  points_ = space.closedBall(ball_.center, radius);
  index_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); i++)
  {
    index_.emplace(points_[i], static_cast<std::ptrdiff_t>(i));
  }
}

std::ptrdiff_t Window::indexOf(const Point &x) const
{
  auto it = index_.find(x);
  return it == index_.end() ? -1 : it->second;
}

double dist(const Space &space, const Point &x, const Point &y)
{
  return space.dist(x, y);
}

Window ball(const Space &space, const Point &x, double r)
{
  return Window(space, x, r);
}

bool ballContains(const Space &space, const Ball &b, const Point &x, double s)
{
  if (space.isLattice())
  {
    // Lattice metrics are geodesic on Z^d: B[x,s] reaches exactly distance d(c,x)+s. The
    // fiber is bounded, so only the lattice part can leave the ball.
    if (space.fiber() > 1)
    {
      for (const auto &y : space.closedBall(x, s))
      {
        if (space.dist(b.center, y) > b.radius + kRadiusSlack)
        {
          return false;
        }
      }
      return true;
    }
    return space.dist(b.center, x) + std::floor(s + kRadiusSlack) <= b.radius + kRadiusSlack;
  }
  for (const auto &y : space.closedBall(x, s))
  {
    if (space.dist(b.center, y) > b.radius + kRadiusSlack)
    {
      return false;
    }
  }
  return true;
}

std::vector<GeometryEntry> geometryProfile(const Space &space, double rMax, const Window &probe)
{
  if (probe.empty())
  {
    throw InputError("geometry probe window must be nonempty");
  }
  if (rMax < 0)
  {
    throw InputError("rMax must be nonnegative");
  }
  std::vector<GeometryEntry> out;
  const int R = static_cast<int>(std::floor(rMax + kRadiusSlack));
  // Lattices without fiber are translation invariant, so a single probe point suffices.
  const bool homogeneous = space.isLattice();
  for (int r = 0; r <= R; r++)
  {
    std::size_t best = 0;
    if (homogeneous)
    {
      best = space.closedBall(probe.center(), r).size();
    }
    else
    {
      for (const auto &x : probe.points())
      {
        best = std::max(best, space.closedBall(x, r).size());
      }
    }
    if (!out.empty())
    {
      best = std::max(best, out.back().maxBallSize);
    }
    out.push_back({r, best});
  }
  return out;
}

std::vector<Point> separatedNet(const Space &space, const std::vector<Point> &scope, double sep)
{
  if (!(sep > 0))
  {
    throw InputError("separation must be positive");
  }
  std::vector<Point> net;
  std::unordered_set<Point, PointHash> chosen;
  // Integer-valued metric: d < sep  <=>  d <= ceil(sep) - 1.
  const double reach = std::ceil(sep) - 1;
  for (const auto &y : scope)
  {
    bool free = true;
    if (reach >= 0)
    {
      if (chosen.size() < 64)
      {
        for (const auto &c : net)
        {
          if (space.dist(c, y) < sep)
          {
            free = false;
            break;
          }
        }
      }
      else
      {
        for (const auto &z : space.closedBall(y, reach))
        {
          if (chosen.count(z))
          {
            free = false;
            break;
          }
        }
      }
    }
    if (free)
    {
      net.push_back(y);
      chosen.insert(y);
    }
  }
  return net;
}

std::vector<Point> separatedNet(const Space &space, const Window &scope, double sep)
{
  return separatedNet(space, scope.points(), sep);
}

}  // namespace limitops
