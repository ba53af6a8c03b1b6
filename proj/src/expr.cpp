#include "geocalc/expr.hpp"

#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace geocalc {

struct Expr::Node {
  Kind kind;
  long long num = 0, den = 1;    // Rational
  std::string name;              // Coord / Param
  std::vector<Expr> kids;        // Sum / Product / Quotient(2) / Negate(1) / Apply(1) / Power(1)
  Fn fn = Fn::Sin;               // Apply
  long long expo = 0;            // Power
};

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Tan: return "tan";
    case Fn::Cot: return "cot";
    case Fn::Sinh: return "sinh";
    case Fn::Cosh: return "cosh";
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
    case Fn::Sqrt: return "sqrt";
    case Fn::Abs: return "abs";
  }
  return "?";
}

namespace {

using Node = Expr::Node;

Expr make(std::shared_ptr<const Node> n) { return Expr(std::move(n)); }

std::shared_ptr<Node> make_node(Expr::Kind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

bool mul_overflows(long long a, long long b) {
  long long r;
  return __builtin_mul_overflow(a, b, &r);
}
bool add_overflows(long long a, long long b) {
  long long r;
  return __builtin_add_overflow(a, b, &r);
}

bool is_rational(const Expr& e) { return e.kind() == Expr::Kind::Rational; }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return true;
  if (a.kind() != b.kind()) return false;
  const auto& x = a.node();
  const auto& y = b.node();
  switch (a.kind()) {
    case Expr::Kind::Rational:
      return x.num == y.num && x.den == y.den;
    case Expr::Kind::Coord:
    case Expr::Kind::Param:
      return x.name == y.name;
    case Expr::Kind::Power:
      if (x.expo != y.expo) return false;
      break;
    case Expr::Kind::Apply:
      if (x.fn != y.fn) return false;
      break;
    default:
      break;
  }
  if (x.kids.size() != y.kids.size()) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!structurally_equal(x.kids[i], y.kids[i])) return false;
  return true;
}

std::vector<Expr> product_factors(const Expr& e) {
  if (e.kind() == Expr::Kind::Product) return e.node().kids;
  return {e};
}

Expr rebuild_product(const std::vector<Expr>& factors) {
  Expr p = Expr::integer(1);
  for (const auto& f : factors) p = p * f;
  return p;
}

}  // namespace

Expr::Expr() : node_([] {
  auto n = make_node(Kind::Rational);
  n->num = 0;
  n->den = 1;
  return n;
}()) {}

Expr Expr::rational(long long num, long long den) {
  if (den == 0) throw EvalError("rational with zero denominator");
  if (den < 0) { num = -num; den = -den; }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) { num /= g; den /= g; }
  auto n = make_node(Kind::Rational);
  n->num = num;
  n->den = den;
  return make(n);
}

Expr Expr::coord(const std::string& name) {
  auto n = make_node(Kind::Coord);
  n->name = name;
  return make(n);
}

Expr Expr::param(const std::string& name) {
  auto n = make_node(Kind::Param);
  n->name = name;
  return make(n);
}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_zero() const {
  return node_->kind == Kind::Rational && node_->num == 0;
}
bool Expr::is_one() const {
  return node_->kind == Kind::Rational && node_->num == 1 && node_->den == 1;
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // exact rational fold when safe
  if (is_rational(a) && is_rational(b)) {
    const auto& x = a.node();
    const auto& y = b.node();
    if (!mul_overflows(x.num, y.den) && !mul_overflows(y.num, x.den) &&
        !mul_overflows(x.den, y.den) &&
        !add_overflows(x.num * y.den, y.num * x.den))
      return Expr::rational(x.num * y.den + y.num * x.den, x.den * y.den);
  }
  auto n = make_node(Expr::Kind::Sum);
  long long rnum = 0, rden = 1;
  auto push = [&](const Expr& e) {
    auto take = [&](const Expr& k) {
      if (is_rational(k) && !mul_overflows(rnum, k.node().den) &&
          !mul_overflows(k.node().num, rden) &&
          !mul_overflows(rden, k.node().den) &&
          !add_overflows(rnum * k.node().den, k.node().num * rden)) {
        rnum = rnum * k.node().den + k.node().num * rden;
        rden *= k.node().den;
      } else {
        n->kids.push_back(k);
      }
    };
    if (e.kind() == Expr::Kind::Sum)
      for (const auto& k : e.node().kids) take(k);
    else
      take(e);
  };
  push(a);
  push(b);
  if (rnum != 0) n->kids.push_back(Expr::rational(rnum, rden));
  if (n->kids.empty()) return Expr();
  if (n->kids.size() == 1) return n->kids[0];
  return make(n);
}

Expr Expr::operator-() const {
  if (is_rational(*this)) return rational(-node_->num, node_->den);
  if (kind() == Kind::Negate) return node_->kids[0];
  auto n = make_node(Kind::Negate);
  n->kids.push_back(*this);
  return make(n);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (is_rational(a) && is_rational(b)) {
    const auto& x = a.node();
    const auto& y = b.node();
    if (!mul_overflows(x.num, y.num) && !mul_overflows(x.den, y.den))
      return Expr::rational(x.num * y.num, x.den * y.den);
  }
  // fold (-1)*x style double negations a little
  if (a.kind() == Expr::Kind::Negate) return -(a.node().kids[0] * b);
  if (b.kind() == Expr::Kind::Negate) return -(a * b.node().kids[0]);
  // lift quotients above products: (x/y)*z = (x*z)/y
  if (a.kind() == Expr::Kind::Quotient || b.kind() == Expr::Kind::Quotient) {
    Expr na = a, da = Expr::integer(1), nb = b, db = Expr::integer(1);
    if (a.kind() == Expr::Kind::Quotient) {
      na = a.node().kids[0];
      da = a.node().kids[1];
    }
    if (b.kind() == Expr::Kind::Quotient) {
      nb = b.node().kids[0];
      db = b.node().kids[1];
    }
    return (na * nb) / (da * db);
  }
  auto n = make_node(Expr::Kind::Product);
  long long rnum = 1, rden = 1;
  bool rat_ok = true;
  auto push = [&](const Expr& e) {
    auto take = [&](const Expr& k) {
      // collect rational factors into a single constant
      if (is_rational(k) && rat_ok && !mul_overflows(rnum, k.node().num) &&
          !mul_overflows(rden, k.node().den)) {
        rnum *= k.node().num;
        rden *= k.node().den;
      } else {
        n->kids.push_back(k);
      }
    };
    if (e.kind() == Expr::Kind::Product)
      for (const auto& k : e.node().kids) take(k);
    else
      take(e);
  };
  push(a);
  push(b);
  Expr coeff = Expr::rational(rnum, rden);
  if (n->kids.empty()) return coeff;
  if (coeff.node().num == -1 && coeff.node().den == 1) {
    // pull a bare minus out of the product
    Expr rest = n->kids[0];
    for (std::size_t i = 1; i < n->kids.size(); ++i) rest = rest * n->kids[i];
    return -rest;
  }
  if (!coeff.is_one()) n->kids.insert(n->kids.begin(), coeff);
  if (n->kids.size() == 1) return n->kids[0];
  return make(n);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_zero()) return Expr();
  if (b.is_one()) return a;
  if (is_rational(a) && is_rational(b)) {
    const auto& x = a.node();
    const auto& y = b.node();
    if (y.num != 0 && !mul_overflows(x.num, y.den) &&
        !mul_overflows(x.den, y.num))
      return Expr::rational(x.num * y.den, x.den * y.num);
  }
  if (a.kind() == Expr::Kind::Negate) return -(a.node().kids[0] / b);
  if (b.kind() == Expr::Kind::Negate) return -(a / b.node().kids[0]);
  // (x/y)/(u/v) = (x*v)/(y*u)
  if (a.kind() == Expr::Kind::Quotient || b.kind() == Expr::Kind::Quotient) {
    Expr na = a, da = Expr::integer(1), nb = b, db = Expr::integer(1);
    if (a.kind() == Expr::Kind::Quotient) {
      na = a.node().kids[0];
      da = a.node().kids[1];
    }
    if (b.kind() == Expr::Kind::Quotient) {
      nb = b.node().kids[0];
      db = b.node().kids[1];
    }
    return (na * db) / (da * nb);
  }
  // cancel syntactically identical factors (keeps derived trees small;
  // values agree wherever both sides were defined)
  auto num_f = product_factors(a);
  auto den_f = product_factors(b);
  bool cancelled = false;
  for (auto& nf : num_f) {
    if (nf.is_one()) continue;
    if (is_rational(nf)) continue;
    for (auto& df : den_f) {
      if (df.is_one() || is_rational(df)) continue;
      if (structurally_equal(nf, df)) {
        nf = Expr::integer(1);
        df = Expr::integer(1);
        cancelled = true;
        break;
      }
    }
  }
  if (cancelled) return rebuild_product(num_f) / rebuild_product(den_f);

  auto n = make_node(Expr::Kind::Quotient);
  n->kids = {a, b};
  return make(n);
}

Expr Expr::pow(const Expr& base, long long k) {
  if (k == 0) return integer(1);
  if (k == 1) return base;
  if (is_rational(base) && k > 1 && k <= 8) {
    long long num = 1, den = 1;
    bool ok = true;
    for (long long i = 0; i < k && ok; ++i) {
      ok = !mul_overflows(num, base.node().num) &&
           !mul_overflows(den, base.node().den);
      if (ok) { num *= base.node().num; den *= base.node().den; }
    }
    if (ok) return rational(num, den);
  }
  auto n = make_node(Kind::Power);
  n->kids = {base};
  n->expo = k;
  return make(n);
}

Expr Expr::apply(Fn f, const Expr& arg) {
  auto n = make_node(Kind::Apply);
  n->fn = f;
  n->kids = {arg};
  return make(n);
}

// ---------------------------------------------------------------------------
// differentiation

Expr Expr::diff(const std::string& coord) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Rational:
    case Kind::Param:
      return Expr();
    case Kind::Coord:
      return n.name == coord ? integer(1) : Expr();
    case Kind::Negate:
      return -n.kids[0].diff(coord);
    case Kind::Sum: {
      Expr s;
      for (const auto& k : n.kids) s = s + k.diff(coord);
      return s;
    }
    case Kind::Product: {
      Expr s;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        Expr term = n.kids[i].diff(coord);
        for (std::size_t j = 0; j < n.kids.size(); ++j)
          if (j != i) term = term * n.kids[j];
        s = s + term;
      }
      return s;
    }
    case Kind::Quotient: {
      const Expr& u = n.kids[0];
      const Expr& v = n.kids[1];
      return (u.diff(coord) * v - u * v.diff(coord)) / (v * v);
    }
    case Kind::Power: {
      const Expr& u = n.kids[0];
      return integer(n.expo) * pow(u, n.expo - 1) * u.diff(coord);
    }
    case Kind::Apply: {
      const Expr& u = n.kids[0];
      Expr du = u.diff(coord);
      switch (n.fn) {
        case Fn::Sin: return cos(u) * du;
        case Fn::Cos: return -(sin(u) * du);
        case Fn::Tan: return du / pow(cos(u), 2);
        case Fn::Cot: return -(du / pow(sin(u), 2));
        case Fn::Sinh: return cosh(u) * du;
        case Fn::Cosh: return sinh(u) * du;
        case Fn::Exp: return exp(u) * du;
        case Fn::Ln: return du / u;
        case Fn::Sqrt: return du / (integer(2) * sqrt(u));
        case Fn::Abs: return (u * du) / abs(u);  // valid away from u = 0
      }
      return Expr();
    }
  }
  return Expr();
}

// ---------------------------------------------------------------------------
// evaluation

namespace {
double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite value in ") + what);
  return v;
}
}  // namespace

double Expr::eval(const std::map<std::string, double>& point) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Rational:
      return static_cast<double>(n.num) / static_cast<double>(n.den);
    case Kind::Coord:
    case Kind::Param: {
      if (n.name == "pi") {
        auto it = point.find("pi");
        return it != point.end() ? it->second : M_PI;
      }
      auto it = point.find(n.name);
      if (it == point.end())
        throw EvalError("unbound symbol '" + n.name + "'");
      return it->second;
    }
    case Kind::Negate:
      return -n.kids[0].eval(point);
    case Kind::Sum: {
      double s = 0;
      for (const auto& k : n.kids) s += k.eval(point);
      return checked(s, "sum");
    }
    case Kind::Product: {
      double p = 1;
      for (const auto& k : n.kids) p *= k.eval(point);
      return checked(p, "product");
    }
    case Kind::Quotient: {
      double num = n.kids[0].eval(point);
      double den = n.kids[1].eval(point);
      if (den == 0.0) throw EvalError("division by zero");
      return checked(num / den, "quotient");
    }
    case Kind::Power:
      return checked(std::pow(n.kids[0].eval(point),
                              static_cast<double>(n.expo)), "power");
    case Kind::Apply: {
      double u = n.kids[0].eval(point);
      switch (n.fn) {
        case Fn::Sin: return std::sin(u);
        case Fn::Cos: return std::cos(u);
        case Fn::Tan: return checked(std::tan(u), "tan");
        case Fn::Cot: {
          double s = std::sin(u);
          if (s == 0.0) throw EvalError("cot at a pole");
          return checked(std::cos(u) / s, "cot");
        }
        case Fn::Sinh: return checked(std::sinh(u), "sinh");
        case Fn::Cosh: return checked(std::cosh(u), "cosh");
        case Fn::Exp: return checked(std::exp(u), "exp");
        case Fn::Ln:
          if (u <= 0.0) throw EvalError("ln of non-positive value");
          return std::log(u);
        case Fn::Sqrt:
          if (u < 0.0) throw EvalError("sqrt of negative value");
          return std::sqrt(u);
        case Fn::Abs: return std::fabs(u);
      }
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rendering (parseable infix, precedence-aware)

namespace {
enum Prec { P_SUM = 0, P_PROD = 1, P_UNARY = 2, P_POW = 3, P_ATOM = 4 };

void render(const Expr& e, std::ostream& os, int parent_prec);

void wrap(const Expr& e, std::ostream& os, int prec, int parent_prec) {
  if (prec < parent_prec) {
    os << '(';
    render(e, os, P_SUM);
    os << ')';
  } else {
    render(e, os, prec);
  }
}

void render(const Expr& e, std::ostream& os, int parent_prec) {
  const auto& n = e.node();
  switch (e.kind()) {
    case Expr::Kind::Rational:
      if (n.den == 1) {
        if (n.num < 0 && parent_prec > P_SUM) os << '(' << n.num << ')';
        else os << n.num;
      } else {
        os << '(' << n.num << '/' << n.den << ')';
      }
      return;
    case Expr::Kind::Coord:
    case Expr::Kind::Param:
      os << n.name;
      return;
    case Expr::Kind::Negate: {
      std::ostringstream inner;
      render(n.kids[0], inner, P_UNARY);
      if (parent_prec > P_SUM) os << "(-" << inner.str() << ')';
      else os << '-' << inner.str();
      return;
    }
    case Expr::Kind::Sum: {
      std::ostringstream inner;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        const Expr& kid = n.kids[i];
        bool neg_term =
            i > 0 && (kid.kind() == Expr::Kind::Negate ||
                      (kid.kind() == Expr::Kind::Rational && kid.node().num < 0));
        if (neg_term) {
          inner << " - ";
          if (kid.kind() == Expr::Kind::Negate)
            render(kid.node().kids[0], inner, P_SUM + 1);
          else
            render(Expr::rational(-kid.node().num, kid.node().den), inner,
                   P_SUM + 1);
        } else {
          if (i) inner << " + ";
          render(kid, inner, P_SUM + 1);
        }
      }
      if (parent_prec > P_SUM) os << '(' << inner.str() << ')';
      else os << inner.str();
      return;
    }
    case Expr::Kind::Product: {
      std::ostringstream inner;
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        if (i) inner << '*';
        render(n.kids[i], inner, P_PROD + 1);
      }
      if (parent_prec > P_PROD) os << '(' << inner.str() << ')';
      else os << inner.str();
      return;
    }
    case Expr::Kind::Quotient: {
      std::ostringstream inner;
      render(n.kids[0], inner, P_PROD + 1);
      inner << '/';
      render(n.kids[1], inner, P_PROD + 1);
      if (parent_prec > P_PROD) os << '(' << inner.str() << ')';
      else os << inner.str();
      return;
    }
    case Expr::Kind::Power: {
      wrap(n.kids[0], os, P_ATOM, P_POW + 1);
      os << '^';
      if (n.expo < 0) os << '(' << n.expo << ')';
      else os << n.expo;
      return;
    }
    case Expr::Kind::Apply:
      os << fn_name(n.fn) << '(';
      render(n.kids[0], os, P_SUM);
      os << ')';
      return;
  }
}
}  // namespace

std::string Expr::str() const {
  std::ostringstream os;
  render(*this, os, P_SUM);
  return os.str();
}

// ---------------------------------------------------------------------------
// Domain & sampling

Domain::Domain(std::vector<std::string> names,
               std::vector<std::array<double, 2>> box)
    : names_(std::move(names)), box_(std::move(box)) {
  if (names_.size() != box_.size())
    throw std::invalid_argument("domain: names/box size mismatch");
  for (const auto& b : box_) {
    if (!(b[0] < b[1]) || !std::isfinite(b[0]) || !std::isfinite(b[1]))
      throw std::invalid_argument("domain: interval must be finite and non-empty");
  }
}

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

double van_der_corput(std::size_t k, int base) {
  double r = 0.0, f = 1.0 / base;
  while (k) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f /= base;
  }
  return r;
}
}  // namespace

std::map<std::string, double> Domain::sample(std::size_t k) const {
  std::map<std::string, double> pt;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    int base = kPrimes[i % (sizeof(kPrimes) / sizeof(kPrimes[0]))];
    double u = van_der_corput(k + 1, base);
    pt[names_[i]] = box_[i][0] + u * (box_[i][1] - box_[i][0]);
  }
  return pt;
}

double rel_residual(const Expr& a, const Expr& b, const Domain& dom,
                    const Tolerance& tol) {
  double worst = 0.0;
  for (std::size_t k = 0; k < tol.samples; ++k) {
    auto pt = dom.sample(k);
    double x = a.eval(pt), y = b.eval(pt);
    double r = std::fabs(x - y) / (1.0 + std::max(std::fabs(x), std::fabs(y)));
    worst = std::max(worst, r);
  }
  return worst;
}

bool num_equal(const Expr& a, const Expr& b, const Domain& dom,
               const Tolerance& tol) {
  return rel_residual(a, b, dom, tol) <= tol.rel;
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
  const std::string& s;
  const SymbolTable& tab;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) { ++i; return true; }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, i); }

  Expr parse() {
    Expr e = sum();
    skip();
    if (i != s.size()) fail("unexpected trailing input");
    return e;
  }

  Expr sum() {
    Expr e = term();
    for (;;) {
      skip();
      if (eat('+')) e = e + term();
      else if (eat('-')) e = e - term();
      else return e;
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      skip();
      if (eat('*')) e = e * factor();
      else if (eat('/')) e = e / factor();
      else return e;
    }
  }

  Expr factor() {
    skip();
    if (eat('-')) return -factor();
    return power();
  }

  Expr power() {
    Expr base = atom();
    skip();
    if (eat('^')) return Expr::pow(base, exponent());
    return base;
  }

  long long exponent() {
    skip();
    bool paren = eat('(');
    skip();
    bool neg = eat('-');
    skip();
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == start) fail("expected integer exponent");
    long long v = std::stoll(s.substr(start, i - start));
    if (paren && !eat(')')) fail("expected ')' after exponent");
    return neg ? -v : v;
  }

  Expr atom() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    char c = s[i];
    if (c == '(') {
      ++i;
      Expr e = sum();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    long long whole = std::stoll(s.substr(start, i - start));
    if (i < s.size() && s[i] == '.') {
      ++i;
      std::size_t fs = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == fs) fail("expected digits after decimal point");
      std::string frac = s.substr(fs, i - fs);
      if (frac.size() > 12) fail("decimal literal too long");
      long long den = 1;
      for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
      return Expr::rational(whole * den + std::stoll(frac), den);
    }
    return Expr::integer(whole);
  }

  Expr identifier() {
    std::size_t start = i;
    while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) ||
                            s[i] == '_'))
      ++i;
    std::string name = s.substr(start, i - start);
    skip();
    if (i < s.size() && s[i] == '(') {
      static const std::pair<const char*, Fn> fns[] = {
          {"sin", Fn::Sin},   {"cos", Fn::Cos},  {"tan", Fn::Tan},
          {"cot", Fn::Cot},   {"sinh", Fn::Sinh},{"cosh", Fn::Cosh},
          {"exp", Fn::Exp},   {"ln", Fn::Ln},    {"sqrt", Fn::Sqrt},
          {"abs", Fn::Abs}};
      for (const auto& [fname, f] : fns) {
        if (name == fname) {
          ++i;  // '('
          Expr arg = sum();
          if (!eat(')')) fail("expected ')' after function argument");
          return Expr::apply(f, arg);
        }
      }
      i = start;
      fail("unknown function '" + name + "'");
    }
    for (const auto& cn : tab.coords)
      if (cn == name) return Expr::coord(name);
    if (name == "pi") return Expr::pi();
    for (const auto& pn : tab.params)
      if (pn == name) return Expr::param(name);
    i = start;
    fail("unknown identifier '" + name + "'");
  }
};

}  // namespace

Expr parse_expr(const std::string& text, const SymbolTable& symbols) {
  Parser p{text, symbols};
  return p.parse();
}

}  // namespace geocalc
