#pragma once

#include "geocalc/manifold.hpp"

namespace geocalc {

struct ConnectionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ConnKind { LeviCivita, General };

/// Which slot the Ricci contraction uses.  The default contracts the second
/// upper slot with the fourth (R_ab = R_a{}^c{}_{bc}); the alternative
/// contracts with the third (R_ab = R_a{}^c{}_{cb}), which flips the sign.
enum class RicciSlot { Fourth, Third };

using Expr3 = std::vector<ExprMatrix>;  // [a][b][c]

/// Metric-compatible (or arbitrary) connection in the orthonormal frame.
/// Coefficients omega[a][c][b] = w^a_{cb}, meaning D_{e_c} theta^a =
/// -w^a_{cb} theta^b and connection 1-forms w^a_b = w^a_{cb} theta^c.
///
/// Torsion 2-forms follow the sign convention of the paper's worked sphere
/// examples: T^a = -(d theta^a + w^a_b ^ theta^b), i.e. the torsion operator
/// is tau(u,v) = D_v u - D_u v + [u,v].  With this choice the navigator
/// connection on the sphere has T^2 = -cot(t) theta^1^theta^2 and the
/// d/delta decompositions below hold with their printed signs.
class Connection {
 public:
  GeometryPtr geo;
  Expr3 omega;
  ConnKind kind = ConnKind::General;

  int n() const { return geo->n(); }

  Multivector omega_form(int a, int b) const;  // w^a_b
  /// The 2-form omega_a = 1/2 w_a^{bc} theta_b ^ theta_c driving the
  /// Clifford covariant derivative D_{e_a} = pfaff_a + 1/2 [omega_a, .].
  Multivector omega_bivector(int a) const;

  Multivector torsion_form(int a) const;
  Multivector curvature_form(int a, int b) const;

  /// T^a_{bc} with T^a = 1/2 T^a_{bc} theta^b ^ theta^c (extracted).
  Expr3 torsion_components() const;
  /// Same components from the frame formula
  /// T^a_{bc} = w^a_{cb} - w^a_{bc} + c^a_{bc} (no 2-form involved).
  Expr3 torsion_components_direct() const;

  /// R_b{}^a{}_{cd} with R^a_b = 1/2 R_b{}^a{}_{cd} theta^c ^ theta^d.
  std::vector<Expr3> curvature_components() const;  // [b][a][c][d]
  std::vector<Expr3> curvature_components_direct() const;

  /// max relative residual of w_{acb} + w_{bca} over the domain
  /// (zero iff metric compatible).
  double metric_compat_residual(const Tolerance& tol = {}) const;
};

using ConnectionPtr = std::shared_ptr<const Connection>;

ConnectionPtr levi_civita(const GeometryPtr& g);
ConnectionPtr from_coefficients(const GeometryPtr& g, const Expr3& omega);
/// Build the unique metric-compatible connection whose torsion components
/// equal the given T^a_{bc} (in the engine convention above).  Input must be
/// antisymmetric in the lower pair.
ConnectionPtr from_contorsion(const GeometryPtr& g, const Expr3& torsion);

struct CurvatureData {
  ConnectionPtr conn;
  std::vector<Multivector> torsion;          // [a]
  std::vector<Multivector> curvature;        // [a*n + b]
  Expr3 torsion_comp;                        // [a][b][c]
  std::vector<Expr3> curvature_comp;         // [b][a][c][d]
  ExprMatrix ricci;                          // R_{ab}
  std::vector<Multivector> ricci_forms;      // R^a = eta^{ab} R_{bc} theta^c
  Expr scalar;                               // R = eta^{ab} R_{ab}
  std::vector<Multivector> einstein_forms;   // G^a = R^a - 1/2 R theta^a
  RicciSlot slot = RicciSlot::Fourth;
};

CurvatureData ricci_data(const ConnectionPtr& c,
                         RicciSlot slot = RicciSlot::Fourth);

/// Difference data between a connection and the Levi-Civita connection of
/// its geometry: contorsion K, the curvature difference J (4-index and
/// 2-form), and the Ricci-level split.
struct JData {
  Expr3 contorsion;                       // K[a][c][b], omega = lc + K
  std::vector<Expr3> j4;                  // J[b][a][c][d] (pre-antisymmetrization)
  std::vector<Multivector> j_forms;       // frak{J}^a_b 2-forms [a*n+b]
  ExprMatrix j_ricci;                     // J_{ab}
  double curvature_split_residual = 0.0;  // R = R0 + (J_cd - J_dc)
  double ricci_split_residual = 0.0;      // R_ab = R0_ab + J_ab
};

JData curvature_difference(const ConnectionPtr& c, const Tolerance& tol = {});

struct TetradReport {
  double identity_residual;   // max |d_mu q^a_nu + w^a_{mu b} q^b_nu - G^r_{mu nu} q^a_r|
  double dminus_max;          // max |D^-_mu q^a_nu| at the probe point
  double dplus_max;           // max |D^+_mu q^a_nu| at the probe point
  std::string detail;
};

/// Checks the frame/coordinate compatibility identity and evaluates the
/// naive D+/D- misreadings at a probe point.
TetradReport tetrad_identity_check(const ConnectionPtr& c,
                                   const std::map<std::string, double>& probe,
                                   const Tolerance& tol = {});

/// Coordinate coefficients G^rho_{mu nu} of the same connection, derived
/// through the cotetrad.
Expr3 coordinate_coefficients(const Connection& c);

}  // namespace geocalc
