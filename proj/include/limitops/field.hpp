#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "limitops/expression.hpp"
#include "limitops/point.hpp"

namespace limitops
{

enum class FieldKind
{
  Constant,
  Periodic,
  Expression,
  Table,
  SeededRandom
};

// A total, deterministic, bounded coefficient function on lattice (or graph) points.
// Every field carries a translation offset so that translated(x) evaluates f(y + x).
class CoefficientField
{
public:
  CoefficientField();

  static CoefficientField constant(Complex c);
  // table is row-major over the period box [0,L_0) x ... x [0,L_{n-1}).
  static CoefficientField periodic(std::vector<std::int64_t> period, std::vector<Complex> table);
  static CoefficientField expression(Expression e, std::optional<double> bound = std::nullopt);
  static CoefficientField table(std::map<Point, Complex> entries, Complex tail = 0.0);
  // Real values uniform in [-bound, bound], a pure function of (seed, point).
  static CoefficientField random(std::uint64_t seed, double bound);

  FieldKind kind() const;
  Complex at(const Point &y) const;
  CoefficientField translated(const Point &x) const;
  const Point &offset() const { return offset_; }

  // Declared (or, for undeclared expressions, sampled) sup |f|.
  double bound() const;
  bool boundIsDeclared() const;
  bool isZero() const;

  // Variant accessors; throw if the kind does not match.
  Complex constantValue() const;
  const std::vector<std::int64_t> &period() const;
  const std::vector<Complex> &periodTable() const;
  const Expression &expr() const;
  std::optional<double> declaredBound() const;
  const std::map<Point, Complex> &tableEntries() const;
  Complex tail() const;
  std::uint64_t seed() const;

  bool operator==(const CoefficientField &o) const;

  struct Data;

private:
  explicit CoefficientField(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
  Point offset_;  // size 0 means no offset
};

// splitmix64 finalizer, also used by the random field.
std::uint64_t mix64(std::uint64_t x);

}  // namespace limitops
