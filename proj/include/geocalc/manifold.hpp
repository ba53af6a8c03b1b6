#pragma once

#include <memory>
#include <string>
#include <vector>

#include "geocalc/multivector.hpp"

namespace geocalc {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Coordinate chart: names, sampling domain, orientation of the volume
/// element, and the first frame-index label used for printing (1 for
/// Riemannian examples, 0 for spacetimes).
struct Chart {
  std::vector<std::string> coords;
  Domain domain;
  int orientation = +1;
  int frame_label_base = 1;

  std::size_t dim() const { return coords.size(); }
};

using ExprMatrix = std::vector<std::vector<Expr>>;

/// Chart + cotetrad q^a_mu (theta^a = q^a_mu dx^mu) and everything derived
/// from it: the inverse tetrad, metric, inverse metric, structure
/// coefficients c^a_{bc} of the orthonormal frame, and the volume element.
/// Immutable after build_geometry.
class Geometry {
 public:
  Chart chart;
  Signature sig;
  ExprMatrix q;      // q[a][mu]
  ExprMatrix qinv;   // qinv[mu][a] = q^mu_a
  ExprMatrix g;      // g[mu][nu]
  ExprMatrix ginv;   // g[mu][nu] upper
  std::vector<ExprMatrix> c;  // c[a][b][cc]: [e_b, e_c] = c^a_{bc} e_a
  Expr det_q;
  Expr sqrt_abs_det_g;  // |det q|

  int n() const { return sig.n(); }

  /// e_a f = q^mu_a d_mu f  (the Pfaff derivative on scalars).
  Expr pfaff(const Expr& f, int a) const;
  /// Pfaff derivative of a multivector: acts on coefficients, blades fixed.
  Multivector pfaff_mv(const Multivector& A, int a) const;

  Multivector tau() const;         // unit pseudoscalar (orientation applied)
  Multivector theta(int a) const;  // coframe 1-form theta^a
  /// Reciprocal coframe theta_a = eta_{ab} theta^b.
  Multivector theta_lower(int a) const;
  Multivector dtheta(int a) const;  // via structure coefficients

  Multivector mv_scalar(const Expr& e) const {
    return Multivector::scalar(sig, e);
  }

  /// Expand theta-blades into the coordinate coframe dx^mu (presentation
  /// only): returns blade-mask -> Expr over dx wedges, plus a printer.
  std::map<uint32_t, Expr> coordinate_form(const Multivector& A) const;
  std::string coordinate_str(const Multivector& A) const;
};

using GeometryPtr = std::shared_ptr<const Geometry>;

/// Validates invertibility of the cotetrad numerically on the domain
/// (throws GeometryError when |det q| vanishes at a sample point) and
/// populates every derived field.
GeometryPtr build_geometry(const Chart& chart, Signature sig,
                           const ExprMatrix& cotetrad);

/// Exact matrix helpers over Expr (cofactor expansion; n <= 8).
Expr matrix_det(const ExprMatrix& m);
ExprMatrix matrix_inverse(const ExprMatrix& m, const Expr& det);

}  // namespace geocalc
