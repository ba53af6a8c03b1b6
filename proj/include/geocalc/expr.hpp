#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geocalc {

/// Thrown when an expression cannot be evaluated at a point (pole, log of a
/// non-positive number, division by zero).  NaN/Inf never escape as values.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by the parser; `pos` is a byte offset into the input text.
struct ParseError : std::runtime_error {
  std::size_t pos;
  ParseError(const std::string& msg, std::size_t p)
      : std::runtime_error(msg), pos(p) {}
};

enum class Fn { Sin, Cos, Tan, Cot, Sinh, Cosh, Exp, Ln, Sqrt, Abs };

const char* fn_name(Fn f);

/// Immutable symbolic scalar expression on a chart.  Nodes: exact rational
/// constants, coordinate/parameter symbols, sums, products, quotients,
/// integer powers, the unary functions above, and negation.  Construction
/// applies only cheap local rewrites (constant folding, 0*x, 1*x, x^0);
/// equality of values is decided numerically, never structurally.
class Expr {
 public:
  enum class Kind {
    Rational, Coord, Param, Sum, Product, Quotient, Power, Apply, Negate
  };

  Expr();  // zero

  static Expr rational(long long num, long long den = 1);
  static Expr integer(long long n) { return rational(n, 1); }
  static Expr coord(const std::string& name);
  static Expr param(const std::string& name);
  static Expr pi() { return param("pi"); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  static Expr pow(const Expr& base, long long k);
  static Expr apply(Fn f, const Expr& arg);

  static Expr sin(const Expr& e) { return apply(Fn::Sin, e); }
  static Expr cos(const Expr& e) { return apply(Fn::Cos, e); }
  static Expr tan(const Expr& e) { return apply(Fn::Tan, e); }
  static Expr cot(const Expr& e) { return apply(Fn::Cot, e); }
  static Expr sinh(const Expr& e) { return apply(Fn::Sinh, e); }
  static Expr cosh(const Expr& e) { return apply(Fn::Cosh, e); }
  static Expr exp(const Expr& e) { return apply(Fn::Exp, e); }
  static Expr ln(const Expr& e) { return apply(Fn::Ln, e); }
  static Expr sqrt(const Expr& e) { return apply(Fn::Sqrt, e); }
  static Expr abs(const Expr& e) { return apply(Fn::Abs, e); }

  Kind kind() const;
  /// True for the literal rational 0 (the pruning predicate for sparse
  /// multivector storage); numeric zero of a composite tree is not detected.
  bool is_zero() const;
  bool is_one() const;

  /// Exact partial derivative with respect to a coordinate symbol.
  Expr diff(const std::string& coord) const;

  /// Evaluate at a point binding coordinates and parameters by name.
  /// "pi" is always bound.  Throws EvalError on any non-finite intermediate.
  double eval(const std::map<std::string, double>& point) const;

  /// Render as parseable infix text (round-trips through parse_expr).
  std::string str() const;

  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

/// Per-coordinate closed sampling box; excludes chart singularities by
/// construction (e.g. the poles of S^2).
class Domain {
 public:
  Domain() = default;
  Domain(std::vector<std::string> names,
         std::vector<std::array<double, 2>> box);

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::array<double, 2>>& box() const { return box_; }
  std::size_t dim() const { return names_.size(); }

  /// k-th point of the fixed low-discrepancy sequence: coordinate i follows
  /// the van der Corput sequence in base prime(i) (2,3,5,7,...), index k+1,
  /// scaled into [lo_i, hi_i].  Deterministic, documented, reproducible.
  std::map<std::string, double> sample(std::size_t k) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::array<double, 2>> box_;
};

struct Tolerance {
  double rel = 1e-9;
  std::size_t samples = 16;
};

/// max over sample points of |a-b| / (1 + max(|a|,|b|))
double rel_residual(const Expr& a, const Expr& b, const Domain& dom,
                    const Tolerance& tol = {});

/// The engine's equality oracle: |a-b| <= rel*(1+max(|a|,|b|)) at every
/// sample point of the fixed sequence.
bool num_equal(const Expr& a, const Expr& b, const Domain& dom,
               const Tolerance& tol = {});

/// Symbol table for the parser: declared coordinate and parameter names.
struct SymbolTable {
  std::vector<std::string> coords;
  std::vector<std::string> params;  // "pi" is implicit
};

/// Recursive-descent parser for the documented expression grammar
/// (docs/expression-grammar.md).  Unknown identifiers and syntax errors
/// raise ParseError with a byte position.
Expr parse_expr(const std::string& text, const SymbolTable& symbols);

}  // namespace geocalc
