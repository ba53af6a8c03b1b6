#pragma once

#include "geocalc/calculus.hpp"
#include "geocalc/report.hpp"

namespace geocalc {

// ---- fixture geometries and connections -----------------------------------

GeometryPtr sphere_geometry();        // unit sphere, coords (t,p), q = diag(1, sin t)
GeometryPtr polar_geometry();         // flat plane, coords (r,p), q = diag(1, r)
GeometryPtr euclidean_geometry();     // flat plane, identity cotetrad
GeometryPtr minkowski_geometry();     // signature (1,3), identity cotetrad
GeometryPtr spherical_r3_geometry();  // flat R^3 in spherical coordinates

ConnectionPtr sphere_nunes();         // all frame coefficients zero
/// Torsion components of the navigator connection (T^2_{21} = cot t).
Expr3 nunes_torsion_components(const GeometryPtr& s2);
/// Smooth fixed torsion on the Euclidean plane (deterministic fixture).
ConnectionPtr euclidean_contorsion_connection();
/// Minkowski metric with constant torsion T^0_{12} = k.
ConnectionPtr minkowski_constant_torsion(const Expr& k);
/// Minkowski metric with position-dependent torsion (nonzero curvature).
ConnectionPtr minkowski_variable_torsion();

// ---- Maxwell fixtures and reports ------------------------------------------

struct MaxwellFixture {
  std::string name;
  Multivector F;  // grade 2
  Multivector J;  // grade 1
};
/// Three fixtures on Minkowski spacetime: constant field, null plane wave
/// (closed and coclosed by construction), and a linear field with constant
/// charge density.
std::vector<MaxwellFixture> maxwell_fixtures();

struct MaxwellLorentzianReport {
  double d_f;          // |dF|
  double delta_f;      // |delta F + J|
  double dirac_f;      // |dirac F - J|
  double divergence;   // |(1/sqrt|g|) d_r (sqrt|g| F^{r nu}) - J^nu|
  double worst() const;
};
MaxwellLorentzianReport maxwell_lorentzian(const GeometryPtr& g,
                                           const Multivector& F,
                                           const Multivector& J,
                                           const Tolerance& tol = {});

struct MaxwellRCReport {
  double df10;          // cyclic D F + F T terms
  double d19;           // divergence form with torsion traces
  double merc;          // Clifford form, terms arranged per d/delta split
  double merc_printed;  // the arrangement as printed in the source text
  double worst() const; // excludes merc_printed (diagnostic only)
};
MaxwellRCReport maxwell_rc(const ConnectionPtr& rc, const Multivector& F,
                           const Multivector& J, const Tolerance& tol = {});

// ---- builtin scenario runner ------------------------------------------------

std::vector<std::string> builtin_names();
bool is_builtin(const std::string& name);
Report run_builtin(const std::string& name, const Tolerance& tol = {});

/// Generic check battery used both by builtins and spec files.
void append_geometry_checks(Report& rep, const GeometryPtr& g,
                            const Tolerance& tol);
void append_connection_checks(Report& rep, const ConnectionPtr& c,
                              const Tolerance& tol);
void append_bianchi_checks(Report& rep, const ConnectionPtr& c,
                           const Tolerance& tol);
void append_evans_checks(Report& rep, const ConnectionPtr& c,
                         const Tolerance& tol, const std::string& suffix = "");
void append_tetrad_checks(Report& rep, const ConnectionPtr& c,
                          const Tolerance& tol);
void append_wave_checks(Report& rep, const ConnectionPtr& lc,
                        const Tolerance& tol);
void append_d_delta_rc_checks(Report& rep, const ConnectionPtr& c,
                              const Tolerance& tol, int cases = 20);
void append_discrepancy_records(Report& rep);

/// Deterministic pseudo-random homogeneous form fields for property checks.
Multivector random_form(const GeometryPtr& g, int grade, unsigned seed);
Multivector random_multivector(const GeometryPtr& g, unsigned seed);

}  // namespace geocalc
