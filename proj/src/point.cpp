#include "limitops/point.hpp"

#include <algorithm>
#include <sstream>

#include "limitops/errors.hpp"

namespace limitops
{

Point::Point(std::initializer_list<std::int64_t> coords)
  : Point(std::span<const std::int64_t>(coords.begin(), coords.size()))
{
}

Point::Point(std::span<const std::int64_t> coords)
{
  if (coords.size() > static_cast<std::size_t>(kMaxCoords))
  {
    throw InputError("point has more than " + std::to_string(kMaxCoords) + " coordinates");
  }
  std::copy(coords.begin(), coords.end(), c_.begin());
  n_ = static_cast<int>(coords.size());
}

Point Point::zeros(int n)
{
  if (n < 0 || n > kMaxCoords)
  {
    throw InputError("invalid point dimension " + std::to_string(n));
  }
  Point p;
  p.n_ = n;
  return p;
}

Point &Point::operator+=(const Point &o)
{
  if (o.n_ != n_)
  {
    throw InputError("point dimension mismatch: " + str() + " vs " + o.str());
  }
  for (int i = 0; i < n_; i++)
  {
    c_[i] += o.c_[i];
  }
  return *this;
}

Point &Point::operator-=(const Point &o)
{
  if (o.n_ != n_)
  {
    throw InputError("point dimension mismatch: " + str() + " vs " + o.str());
  }
  for (int i = 0; i < n_; i++)
  {
    c_[i] -= o.c_[i];
  }
  return *this;
}

Point Point::operator-() const
{
  Point p = *this;
  for (int i = 0; i < n_; i++)
  {
    p.c_[i] = -p.c_[i];
  }
  return p;
}

std::string Point::str() const
{
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < n_; i++)
  {
    os << (i ? "," : "") << c_[i];
  }
  os << ')';
  return os.str();
}

std::size_t PointHash::operator()(const Point &p) const noexcept
{
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(p.size());
  for (int i = 0; i < p.size(); i++)
  {
    h ^= static_cast<std::uint64_t>(p[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace limitops
