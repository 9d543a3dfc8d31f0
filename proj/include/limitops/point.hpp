#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace limitops
{

using Complex = std::complex<double>;

inline constexpr int kMaxCoords = 4;

// A point of a discrete space: integer coordinates for lattices (plus an optional fiber
// coordinate), or a single vertex id for graphs.
class Point
{
public:
  Point() = default;
  Point(std::initializer_list<std::int64_t> coords);
  explicit Point(std::span<const std::int64_t> coords);

  static Point zeros(int n);

  int size() const { return n_; }
  std::int64_t operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  std::int64_t &operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const std::int64_t> coords() const { return {c_.data(), static_cast<std::size_t>(n_)}; }
  std::vector<std::int64_t> toVector() const { return {c_.begin(), c_.begin() + n_}; }

  auto operator<=>(const Point &) const = default;
  bool operator==(const Point &) const = default;

  Point &operator+=(const Point &o);
  Point &operator-=(const Point &o);
  friend Point operator+(Point a, const Point &b) { return a += b; }
  friend Point operator-(Point a, const Point &b) { return a -= b; }
  Point operator-() const;

  std::string str() const;

private:
  // Coordinates first so the defaulted comparison is lexicographic for equal sizes.
  std::array<std::int64_t, kMaxCoords> c_{};
  int n_ = 0;
};

struct PointHash
{
  std::size_t operator()(const Point &p) const noexcept;
};

}  // namespace limitops
