#include "geocalc/multivector.hpp"

#include <bit>
#include <sstream>

namespace geocalc {

int blade_reorder_sign(uint32_t a, uint32_t b) {
  int swaps = 0;
  a >>= 1;
  while (a) {
    swaps += std::popcount(a & b);
    a >>= 1;
  }
  return (swaps & 1) ? -1 : +1;
}

void Multivector::check_dim() const {
  if (sig_.n() < 0 || sig_.n() > 8)
    throw SignatureError("signature dimension must be in [0,8]");
}

void Multivector::check_same(const Multivector& o) const {
  if (!(sig_ == o.sig_))
    throw SignatureError("signature mismatch between multivectors");
}

Multivector Multivector::scalar(Signature s, const Expr& c) {
  return blade(s, 0u, c);
}

Multivector Multivector::basis(Signature s, int i) {
  if (i < 0 || i >= s.n()) throw SignatureError("basis index out of range");
  return blade(s, 1u << i, Expr::integer(1));
}

Multivector Multivector::blade(Signature s, uint32_t mask, const Expr& c) {
  Multivector m(s);
  m.accumulate(mask, c);
  return m;
}

Multivector Multivector::pseudoscalar(Signature s, int orientation) {
  return blade(s, (1u << s.n()) - 1u, Expr::integer(orientation));
}

Expr Multivector::coefficient(uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Expr() : it->second;
}

void Multivector::accumulate(uint32_t mask, const Expr& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(mask);
  if (it == terms_.end()) {
    terms_.emplace(mask, c);
  } else {
    Expr s = it->second + c;
    if (s.is_zero()) terms_.erase(it);
    else it->second = s;
  }
}

Multivector Multivector::operator+(const Multivector& o) const {
  check_same(o);
  Multivector r = *this;
  for (const auto& [m, c] : o.terms_) r.accumulate(m, c);
  return r;
}

Multivector Multivector::operator-(const Multivector& o) const {
  check_same(o);
  Multivector r = *this;
  for (const auto& [m, c] : o.terms_) r.accumulate(m, -c);
  return r;
}

Multivector Multivector::operator-() const {
  return map_coefficients([](const Expr& c, uint32_t) { return -c; });
}

Multivector Multivector::scaled(const Expr& c) const {
  return map_coefficients([&c](const Expr& x, uint32_t) { return c * x; });
}

Multivector Multivector::wedge(const Multivector& o) const {
  check_same(o);
  Multivector r(sig_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      if (ma & mb) continue;
      int sign = blade_reorder_sign(ma, mb);
      Expr c = ca * cb;
      r.accumulate(ma | mb, sign > 0 ? c : -c);
    }
  return r;
}

Multivector Multivector::clifford(const Multivector& o) const {
  check_same(o);
  Multivector r(sig_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      int sign = blade_reorder_sign(ma, mb);
      uint32_t common = ma & mb;
      for (int i = 0; i < sig_.n(); ++i)
        if (common & (1u << i)) sign *= sig_.eta(i);
      Expr c = ca * cb;
      r.accumulate(ma ^ mb, sign > 0 ? c : -c);
    }
  return r;
}

Multivector Multivector::left_contract(const Multivector& o) const {
  check_same(o);
  Multivector r(sig_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      if (ma & ~mb) continue;  // grade drops to |s-r| only when a subset of b
      int sign = blade_reorder_sign(ma, mb);
      for (int i = 0; i < sig_.n(); ++i)
        if (ma & (1u << i)) sign *= sig_.eta(i);
      Expr c = ca * cb;
      r.accumulate(ma ^ mb, sign > 0 ? c : -c);
    }
  return r;
}

Multivector Multivector::right_contract(const Multivector& o) const {
  check_same(o);
  Multivector r(sig_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      if (mb & ~ma) continue;
      int sign = blade_reorder_sign(ma, mb);
      for (int i = 0; i < sig_.n(); ++i)
        if (mb & (1u << i)) sign *= sig_.eta(i);
      Expr c = ca * cb;
      r.accumulate(ma ^ mb, sign > 0 ? c : -c);
    }
  return r;
}

Expr Multivector::scalar_product(const Multivector& o) const {
  check_same(o);
  // A_r . B_r = <reversion(A) B>_0, zero across different grades.
  Expr s;
  for (const auto& [ma, ca] : terms_) {
    auto it = o.terms_.find(ma);
    if (it == o.terms_.end()) continue;
    int r = std::popcount(ma);
    int sign = (r * (r - 1) / 2) % 2 ? -1 : +1;  // reversion of the left blade
    int self = blade_reorder_sign(ma, ma);
    for (int i = 0; i < sig_.n(); ++i)
      if (ma & (1u << i)) self *= sig_.eta(i);
    sign *= self;
    Expr c = ca * it->second;
    s = s + (sign > 0 ? c : -c);
  }
  return s;
}

Multivector Multivector::reversion() const {
  return map_coefficients([](const Expr& c, uint32_t m) {
    int r = std::popcount(m);
    return (r * (r - 1) / 2) % 2 ? -c : c;
  });
}

Multivector Multivector::grade_involution() const {
  return map_coefficients([](const Expr& c, uint32_t m) {
    return std::popcount(m) % 2 ? -c : c;
  });
}

Multivector Multivector::grade_project(int r) const {
  Multivector out(sig_);
  for (const auto& [m, c] : terms_)
    if (std::popcount(m) == r) out.accumulate(m, c);
  return out;
}

std::vector<int> Multivector::grades() const {
  std::vector<int> gs;
  for (const auto& [m, c] : terms_) {
    int g = std::popcount(m);
    bool seen = false;
    for (int x : gs) seen |= (x == g);
    if (!seen) gs.push_back(g);
  }
  return gs;
}

bool Multivector::homogeneous(int* grade_out) const {
  auto gs = grades();
  if (gs.size() > 1) return false;
  if (grade_out) *grade_out = gs.empty() ? 0 : gs[0];
  return true;
}

Multivector Multivector::hodge_star(const Multivector& tau) const {
  int g = 0;
  if (!tau.homogeneous(&g) || g != sig_.n())
    throw SignatureError("hodge_star: tau must be the grade-n volume element");
  return reversion().clifford(tau);
}

Multivector Multivector::hodge_inverse(const Multivector& tau) const {
  // star^{-1} = (-1)^{r(n-r)} sgn(g) star on the grade-(n-r) part, where r is
  // the grade of the result.
  Multivector out(sig_);
  int n = sig_.n();
  for (int s = 0; s <= n; ++s) {
    Multivector part = grade_project(s);
    if (part.is_structural_zero()) continue;
    int r = n - s;
    int sign = sig_.sign_g() * (((r * (n - r)) % 2) ? -1 : +1);
    Multivector h = part.hodge_star(tau);
    out = out + (sign > 0 ? h : -h);
  }
  return out;
}

std::string Multivector::blade_str(uint32_t mask, int label_base) {
  if (mask == 0) return "1";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (mask & (1u << i)) {
      if (!first) os << "^";
      os << "\xce\xb8" << (i + label_base);  // UTF-8 theta
      first = false;
    }
  return os.str();
}

std::string Multivector::str(int label_base) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (m == 0) {
      os << c.str();
    } else if (c.is_one()) {
      os << blade_str(m, label_base);
    } else {
      os << "(" << c.str() << ") " << blade_str(m, label_base);
    }
  }
  return os.str();
}

double mv_max_residual(const Multivector& a, const Multivector& b,
                       const Domain& dom, const Tolerance& tol) {
  double worst = 0.0;
  std::map<uint32_t, std::pair<Expr, Expr>> merged;
  for (const auto& [m, c] : a.terms()) merged[m].first = c;
  for (const auto& [m, c] : b.terms()) merged[m].second = c;
  for (const auto& [m, pair] : merged)
    worst = std::max(worst, rel_residual(pair.first, pair.second, dom, tol));
  return worst;
}

bool mv_num_equal(const Multivector& a, const Multivector& b,
                  const Domain& dom, const Tolerance& tol) {
  return mv_max_residual(a, b, dom, tol) <= tol.rel;
}

}  // namespace geocalc
