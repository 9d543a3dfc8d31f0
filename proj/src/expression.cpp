#include "limitops/expression.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string_view>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

enum Fn1 : std::uint8_t
{
  kSin,
  kCos,
  kTan,
  kSinh,
  kCosh,
  kTanh,
  kExp,
  kLog,
  kSqrt,
  kAbs,
  kRe,
  kIm,
  kConj,
  kFloor,
  kCeil,
  kSign,
  kFn1Count
};

enum Fn2 : std::uint8_t
{
  kMod,
  kMin,
  kMax,
  kPowFn,
  kFn2Count
};

constexpr std::array<std::string_view, kFn1Count> kFn1Names = {
    "sin", "cos", "tan", "sinh", "cosh", "tanh", "exp", "log",
    "sqrt", "abs", "re", "im", "conj", "floor", "ceil", "sign"};
constexpr std::array<std::string_view, kFn2Count> kFn2Names = {"mod", "min", "max", "pow"};

Complex apply1(std::uint8_t fn, Complex a)
{
  switch (fn)
  {
    case kSin:
      return std::sin(a);
    case kCos:
      return std::cos(a);
    case kTan:
      return std::tan(a);
    case kSinh:
      return std::sinh(a);
    case kCosh:
      return std::cosh(a);
    case kTanh:
      return std::tanh(a);
    case kExp:
      return std::exp(a);
    case kLog:
      return std::log(a);
    case kSqrt:
      // Real arguments stay on the real branch.
      if (a.imag() == 0 && a.real() >= 0)
      {
        return std::sqrt(a.real());
      }
      return std::sqrt(a);
    case kAbs:
      return std::abs(a);
    case kRe:
      return a.real();
    case kIm:
      return a.imag();
    case kConj:
      return std::conj(a);
    case kFloor:
      return std::floor(a.real());
    case kCeil:
      return std::ceil(a.real());
    case kSign:
      return a.real() > 0 ? 1.0 : (a.real() < 0 ? -1.0 : 0.0);
  }
  return 0.0;
}

Complex apply2(std::uint8_t fn, Complex a, Complex b)
{
  switch (fn)
  {
    case kMod:
    {
      const double m = b.real();
      if (m == 0)
      {
        return std::nan("");
      }
      double r = std::fmod(a.real(), m);
      if (r != 0 && ((r < 0) != (m < 0)))
      {
        r += m;
      }
      return r;
    }
    case kMin:
      return std::min(a.real(), b.real());
    case kMax:
      return std::max(a.real(), b.real());
    case kPowFn:
      break;
  }
  if (b.imag() == 0 && a.imag() == 0)
  {
    const double br = b.real();
    if (br == std::round(br) || a.real() >= 0)
    {
      return std::pow(a.real(), br);
    }
  }
  return std::pow(a, b);
}

}  // namespace

class ExpressionParser
{
public:
  explicit ExpressionParser(std::string_view s) : s_(s) {}

  Expression run()
  {
    Expression e;
    e.source_ = std::string(s_);
    out_ = &e;
    parseExpr();
    skipSpace();
    if (pos_ != s_.size())
    {
      fail("unexpected trailing input");
    }
    // Stack depth: simulate.
    int depth = 0;
    for (const auto &op : e.program_)
    {
      switch (op.kind)
      {
        case Expression::Op::Kind::Const:
        case Expression::Op::Kind::Coord:
          depth++;
          break;
        case Expression::Op::Kind::Neg:
        case Expression::Op::Kind::Func1:
          break;
        default:
          depth--;
      }
      e.maxStack_ = std::max(e.maxStack_, depth);
    }
    return e;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const
  {
    throw InputError("expression '" + std::string(s_) + "': " + msg + " at position " +
                     std::to_string(pos_));
  }

  void skipSpace()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
    {
      pos_++;
    }
  }

  bool accept(char c)
  {
    skipSpace();
    if (pos_ < s_.size() && s_[pos_] == c)
    {
      pos_++;
      return true;
    }
    return false;
  }

  void emit(Expression::Op::Kind k, std::uint8_t fn = 0)
  {
    out_->program_.push_back({k, fn, 0, {}});
  }

  void parseExpr()
  {
    parseTerm();
    while (true)
    {
      if (accept('+'))
      {
        parseTerm();
        emit(Expression::Op::Kind::Add);
      }
      else if (accept('-'))
      {
        parseTerm();
        emit(Expression::Op::Kind::Sub);
      }
      else
      {
        return;
      }
    }
  }

  void parseTerm()
  {
    parseUnary();
    while (true)
    {
      if (accept('*'))
      {
        parseUnary();
        emit(Expression::Op::Kind::Mul);
      }
      else if (accept('/'))
      {
        parseUnary();
        emit(Expression::Op::Kind::Div);
      }
      else
      {
        return;
      }
    }
  }

  void parseUnary()
  {
    if (accept('-'))
    {
      parseUnary();
      emit(Expression::Op::Kind::Neg);
    }
    else if (accept('+'))
    {
      parseUnary();
    }
    else
    {
      parsePower();
    }
  }

  void parsePower()
  {
    parsePrimary();
    if (accept('^'))
    {
      parseUnary();
      emit(Expression::Op::Kind::Pow);
    }
  }

  void parsePrimary()
  {
    skipSpace();
    if (pos_ >= s_.size())
    {
      fail("unexpected end of input");
    }
    const char c = s_[pos_];
    if (accept('('))
    {
      parseExpr();
      if (!accept(')'))
      {
        fail("expected ')'");
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
    {
      const char *begin = s_.data() + pos_;
      char *end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin)
      {
        fail("bad number");
      }
      pos_ += static_cast<std::size_t>(end - begin);
      out_->program_.push_back({Expression::Op::Kind::Const, 0, 0, Complex(v, 0)});
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
    {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      {
        pos_++;
      }
      const std::string_view name = s_.substr(start, pos_ - start);
      skipSpace();
      if (pos_ < s_.size() && s_[pos_] == '(')
      {
        pos_++;
        for (std::size_t f = 0; f < kFn1Names.size(); f++)
        {
          if (name == kFn1Names[f])
          {
            parseExpr();
            if (!accept(')'))
            {
              fail("expected ')' after argument of " + std::string(name));
            }
            emit(Expression::Op::Kind::Func1, static_cast<std::uint8_t>(f));
            return;
          }
        }
        for (std::size_t f = 0; f < kFn2Names.size(); f++)
        {
          if (name == kFn2Names[f])
          {
            parseExpr();
            if (!accept(','))
            {
              fail("expected ',' in " + std::string(name));
            }
            parseExpr();
            if (!accept(')'))
            {
              fail("expected ')' after arguments of " + std::string(name));
            }
            emit(Expression::Op::Kind::Func2, static_cast<std::uint8_t>(f));
            return;
          }
        }
        fail("unknown function '" + std::string(name) + "'");
      }
      if (name == "pi")
      {
        out_->program_.push_back({Expression::Op::Kind::Const, 0, 0, Complex(std::numbers::pi, 0)});
        return;
      }
      if (name == "e")
      {
        out_->program_.push_back({Expression::Op::Kind::Const, 0, 0, Complex(std::numbers::e, 0)});
        return;
      }
      if (name == "i")
      {
        out_->program_.push_back({Expression::Op::Kind::Const, 0, 0, Complex(0, 1)});
        return;
      }
      int coord = -1;
      if (name == "n")
      {
        coord = 0;
      }
      else if (name.size() == 2 && name[0] == 'n' && name[1] >= '1' && name[1] <= '0' + kMaxCoords)
      {
        coord = name[1] - '1';
      }
      if (coord < 0)
      {
        fail("unknown symbol '" + std::string(name) + "'");
      }
      out_->program_.push_back({Expression::Op::Kind::Coord, 0, coord, {}});
      out_->arity_ = std::max(out_->arity_, coord + 1);
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  Expression *out_ = nullptr;
};

Expression Expression::parse(const std::string &source)
{
  return ExpressionParser(source).run();
}

Complex Expression::eval(const Point &x) const
{
  if (arity_ > x.size())
  {
    throw InputError("expression '" + source_ + "' references coordinate n" +
                     std::to_string(arity_) + " but point has " + std::to_string(x.size()));
  }
  Complex stackBuf[64];
  std::vector<Complex> heap;
  Complex *stack = stackBuf;
  if (maxStack_ > 64)
  {
    heap.resize(static_cast<std::size_t>(maxStack_));
    stack = heap.data();
  }
  int top = 0;
  for (const auto &op : program_)
  {
    switch (op.kind)
    {
      case Op::Kind::Const:
        stack[top++] = op.value;
        break;
      case Op::Kind::Coord:
        stack[top++] = Complex(static_cast<double>(x[op.coord]), 0);
        break;
      case Op::Kind::Add:
        top--;
        stack[top - 1] += stack[top];
        break;
      case Op::Kind::Sub:
        top--;
        stack[top - 1] -= stack[top];
        break;
      case Op::Kind::Mul:
        top--;
        stack[top - 1] *= stack[top];
        break;
      case Op::Kind::Div:
        top--;
        stack[top - 1] /= stack[top];
        break;
      case Op::Kind::Pow:
        top--;
        stack[top - 1] = apply2(kPowFn, stack[top - 1], stack[top]);
        break;
      case Op::Kind::Neg:
        stack[top - 1] = -stack[top - 1];
        break;
      case Op::Kind::Func1:
        stack[top - 1] = apply1(op.fn, stack[top - 1]);
        break;
      case Op::Kind::Func2:
        top--;
        stack[top - 1] = apply2(op.fn, stack[top - 1], stack[top]);
        break;
    }
  }
  return stack[0];
}

}  // namespace limitops
