#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "limitops/expression.hpp"
#include "limitops/point.hpp"

namespace limitops
{

enum class PredicateKind
{
  All,
  None,
  Halfspace,   // normal . y >= offset
  Sublattice,  // y_i = residue_i (mod modulus_i) for every i
  Explicit,    // finite point list
  Expression   // Re expr(y) >= 0
};

// A subset Y of the space, used for indicator projections P = M_{1_Y}.
class Predicate
{
public:
  Predicate();

  static Predicate all();
  static Predicate none();
  static Predicate halfspace(std::vector<double> normal, double offset);
  static Predicate sublattice(std::vector<std::int64_t> modulus, std::vector<std::int64_t> residue);
  static Predicate explicitSet(std::set<Point> points);
  static Predicate expression(Expression e);

  PredicateKind kind() const;
  bool contains(const Point &y) const;
  // Y - x, i.e. contains'(y) = contains(y + x).
  Predicate translated(const Point &x) const;

  const std::vector<double> &normal() const;
  double halfspaceOffset() const;
  const std::vector<std::int64_t> &modulus() const;
  const std::vector<std::int64_t> &residue() const;
  const std::set<Point> &points() const;
  const Expression &expr() const;
  const Point &offset() const { return offset_; }

  bool operator==(const Predicate &o) const;

  struct Data;

private:
  explicit Predicate(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
  Point offset_;
};

}  // namespace limitops
