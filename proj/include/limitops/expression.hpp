#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "limitops/point.hpp"

namespace limitops
{

// Arithmetic expression over point coordinates, compiled to a stack program.
//
// Grammar:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' unary)?
//   primary := number | symbol | func '(' expr (',' expr)* ')' | '(' expr ')'
// Symbols: n1..n4 (coordinates), n (= n1), pi, e, i (imaginary unit).
// Functions: sin cos tan sinh cosh tanh exp log sqrt abs re im conj floor ceil sign
//            mod(a,b) min(a,b) max(a,b) pow(a,b).
// Evaluation is complex-valued; floor/ceil/sign/mod/min/max act on real parts.
class Expression
{
public:
  Expression() = default;
  static Expression parse(const std::string &source);

  const std::string &source() const { return source_; }
  // Highest coordinate symbol referenced (0 if none).
  int arity() const { return arity_; }
  bool isConstant() const { return arity_ == 0; }

  Complex eval(const Point &x) const;

  struct Op
  {
    enum class Kind : std::uint8_t
    {
      Const,
      Coord,
      Add,
      Sub,
      Mul,
      Div,
      Pow,
      Neg,
      Func1,
      Func2
    };
    Kind kind;
    std::uint8_t fn = 0;
    int coord = 0;
    Complex value{};
  };

private:
  std::string source_;
  std::vector<Op> program_;
  int arity_ = 0;
  int maxStack_ = 0;

  friend class ExpressionParser;
};

}  // namespace limitops
