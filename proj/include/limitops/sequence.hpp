#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "limitops/expression.hpp"
#include "limitops/point.hpp"

namespace limitops
{

inline constexpr std::int64_t kIndexBudget = std::int64_t{1} << 20;

enum class SequenceKind
{
  Ray,
  Explicit,
  Subsequence
};

struct SubsequenceRule
{
  enum class Kind
  {
    Indices,     // explicit increasing parent indices
    Arithmetic,  // n_k = a k + b
    Level        // per dyadic block [2^k, 2^(k+1)): argmin |expr(x_n) - target|
  };
  Kind kind = Kind::Indices;
  std::vector<std::int64_t> indices;
  std::int64_t a = 1;
  std::int64_t b = 0;
  Expression expr;
  Complex target = 0.0;
};

// A deterministic sequence x_n in a lattice with d(x_0, x_n) unbounded.
class LimitSequence
{
public:
  static LimitSequence ray(std::string label, Point v, Point w, std::int64_t budget = kIndexBudget);
  static LimitSequence explicitPoints(std::string label, std::vector<Point> points);
  static LimitSequence subsequence(std::string label, const LimitSequence &parent,
                                   SubsequenceRule rule);

  const std::string &label() const;
  SequenceKind kind() const;
  // Number of available indices; valid indices are 0..count()-1.
  std::int64_t count() const;
  Point at(std::int64_t n) const;

  // Indices sampled for Cauchy checks: every index for short sequences, otherwise
  // 1, 2, 4, ... plus the last index.
  std::vector<std::int64_t> schedule() const;

  // (v, w) when x_n = n v + w for all n, including arithmetic subsequences of rays.
  std::optional<std::pair<Point, Point>> asRay() const;

  // Ray fields.
  const Point &direction() const;
  const Point &offset() const;
  std::int64_t budget() const;
  const std::vector<Point> &points() const;
  LimitSequence parent() const;
  const SubsequenceRule &rule() const;
  // Resolved parent indices of a subsequence.
  const std::vector<std::int64_t> &parentIndices() const;

  std::string describe() const;

  struct Data;

private:
  explicit LimitSequence(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

}  // namespace limitops
