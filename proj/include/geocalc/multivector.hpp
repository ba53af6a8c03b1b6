#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "geocalc/expr.hpp"

namespace geocalc {

struct SignatureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Metric signature (p,q): eta = diag(+1 x p, -1 x q).  n = p+q <= 8 so the
/// 2^n blade table stays small.
struct Signature {
  int p = 0;
  int q = 0;

  int n() const { return p + q; }
  int eta(int i) const { return i < p ? +1 : -1; }           // eta_ii
  int sign_g() const { return (q % 2 == 0) ? +1 : -1; }      // det eta / |det eta|

  bool operator==(const Signature& o) const { return p == o.p && q == o.q; }
};

/// Element of Cl(p,q) over Expr coefficients.  Blades are bitmasks over the
/// orthonormal coframe directions theta^0..theta^{n-1} (bit i set <=> theta^i
/// present, factors in ascending index order).  Structural zeros are never
/// stored.
class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(Signature s) : sig_(s) { check_dim(); }

  static Multivector scalar(Signature s, const Expr& c);
  static Multivector basis(Signature s, int i);             // theta^i
  static Multivector blade(Signature s, uint32_t mask, const Expr& c);
  /// Unit pseudoscalar theta^0...theta^{n-1} times `orientation`.
  static Multivector pseudoscalar(Signature s, int orientation = +1);

  const Signature& signature() const { return sig_; }
  const std::map<uint32_t, Expr>& terms() const { return terms_; }
  bool is_structural_zero() const { return terms_.empty(); }
  Expr coefficient(uint32_t mask) const;
  Expr scalar_part() const { return coefficient(0); }

  Multivector operator+(const Multivector& o) const;
  Multivector operator-(const Multivector& o) const;
  Multivector operator-() const;
  Multivector scaled(const Expr& c) const;

  Multivector wedge(const Multivector& o) const;
  Multivector clifford(const Multivector& o) const;
  Multivector left_contract(const Multivector& o) const;    // this _| o
  Multivector right_contract(const Multivector& o) const;   // this |_ o
  Expr scalar_product(const Multivector& o) const;

  Multivector reversion() const;
  Multivector grade_involution() const;
  Multivector grade_project(int r) const;
  std::vector<int> grades() const;
  bool homogeneous(int* grade_out = nullptr) const;

  /// Hodge dual *A = reversion(A) tau (Clifford product by the volume
  /// element); tau must be grade n.
  Multivector hodge_star(const Multivector& tau) const;
  Multivector hodge_inverse(const Multivector& tau) const;

  /// Apply f to every coefficient, keeping blades fixed.
  template <typename F>
  Multivector map_coefficients(F&& f) const {
    Multivector r(sig_);
    for (const auto& [m, c] : terms_) r.accumulate(m, f(c, m));
    return r;
  }

  void accumulate(uint32_t mask, const Expr& c);

  /// Render in the orthonormal coframe, labels starting at `label_base`.
  std::string str(int label_base = 1) const;
  static std::string blade_str(uint32_t mask, int label_base);

 private:
  void check_dim() const;
  void check_same(const Multivector& o) const;

  Signature sig_;
  std::map<uint32_t, Expr> terms_;
};

/// Sign of reordering the concatenation of two ascending blades into
/// canonical ascending order.
int blade_reorder_sign(uint32_t a, uint32_t b);

double mv_max_residual(const Multivector& a, const Multivector& b,
                       const Domain& dom, const Tolerance& tol = {});
bool mv_num_equal(const Multivector& a, const Multivector& b,
                  const Domain& dom, const Tolerance& tol = {});

}  // namespace geocalc
