#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Pins every sign convention the engine commits to.  Each case states the
// choice, shows the committed form holding, and shows the rejected
// alternative failing, so an accidental flip anywhere breaks loudly here.

#include "geocalc/scenarios.hpp"

using namespace geocalc;

namespace {
Expr P(const std::string& s, const GeometryPtr& g) {
  SymbolTable tab{g->chart.coords, {}};
  return parse_expr(s, tab);
}
}  // namespace

TEST_CASE("structure coefficients: [e_b, e_c] = c^a_{bc} e_a") {
  auto g = sphere_geometry();
  CHECK(num_equal(g->c[1][0][1], P("-cot(t)", g), g->chart.domain));
  // paired with d theta^a = -1/2 c^a_{bc} theta^b ^ theta^c
  CHECK(mv_num_equal(ext_d(g, g->theta(1)),
                     g->theta(0).wedge(g->theta(1)).scaled(P("cot(t)", g)),
                     g->chart.domain));
}

TEST_CASE("torsion sign: navigator connection has T^2 = -cot t theta^12") {
  auto nunes = sphere_nunes();
  auto g = nunes->geo;
  const Domain& dom = g->chart.domain;
  Multivector minus_cot =
      g->theta(0).wedge(g->theta(1)).scaled(P("-cot(t)", g));
  CHECK(mv_num_equal(nunes->torsion_form(1), minus_cot, dom));
  // the opposite (structure-equation) sign is the negative of the stored form
  Multivector structure_eq = ext_d(g, g->theta(1));
  for (int b = 0; b < 2; ++b)
    structure_eq = structure_eq + nunes->omega_form(1, b).wedge(g->theta(b));
  CHECK(mv_num_equal(structure_eq, -nunes->torsion_form(1), dom));
  CHECK_FALSE(mv_num_equal(structure_eq, nunes->torsion_form(1), dom));
}

TEST_CASE("d/delta decomposition signs, all grades, 2d and 4d") {
  auto rc = minkowski_constant_torsion(Expr::rational(3, 10));
  auto g = rc->geo;
  const Domain& dom = g->chart.domain;
  for (int grade = 0; grade <= 4; ++grade) {
    auto A = random_form(g, grade, 90 + grade);
    auto pair = d_delta_via_rc(rc, A);
    CHECK(mv_num_equal(pair.d, ext_d(g, A), dom));
    CHECK(mv_num_equal(pair.delta, codifferential(g, A), dom));

    // committed: dA = dirac^ A - T^a^(theta_a _| A),
    //            deltaA = -dirac_| A + T^a _| (theta_a ^ A).
    // flipped-torsion-term variants must fail on some grade
    Multivector t_wedge(g->sig), t_contract(g->sig);
    for (int a = 0; a < 4; ++a) {
      auto t = rc->torsion_form(a);
      t_wedge = t_wedge + t.wedge(g->theta_lower(a).left_contract(A));
      t_contract = t_contract + t.left_contract(g->theta_lower(a).wedge(A));
    }
    if (grade == 1)
      CHECK_FALSE(
          mv_num_equal(dirac_wedge(rc, A) + t_wedge, ext_d(g, A), dom));
    if (grade == 2)
      CHECK_FALSE(mv_num_equal(-dirac_contract(rc, A) - t_contract,
                               codifferential(g, A), dom));
  }
}

TEST_CASE("first structure identity reads D T^a = -R^a_b ^ theta^b") {
  // only visible where 3-forms survive and curvature is nonzero
  auto rc = minkowski_variable_torsion();
  auto g = rc->geo;
  const Domain& dom = g->chart.domain;
  auto dt = ext_cov_d(rc, torsion_family(rc));
  bool some_nonzero = false;
  for (int a = 0; a < 4; ++a) {
    Multivector rt(g->sig);
    for (int b = 0; b < 4; ++b)
      rt = rt + rc->curvature_form(a, b).wedge(g->theta(b));
    CHECK(mv_num_equal(dt.at({a}), -rt, dom));
    some_nonzero = some_nonzero || !rt.is_structural_zero();
  }
  CHECK(some_nonzero);  // the identity is not vacuous on this fixture
}

TEST_CASE("hodge star convention: *A = reversion(A) tau") {
  auto g = sphere_geometry();
  const Domain& dom = g->chart.domain;
  CHECK(mv_num_equal(star(*g, g->theta(0)), g->theta(1), dom));
  CHECK(mv_num_equal(star(*g, g->theta(1)), -g->theta(0), dom));
  // codifferential drops grade with delta = (-1)^r star^-1 d star
  auto eu = euclidean_geometry();
  CHECK(mv_num_equal(codifferential(eu, eu->theta(0).scaled(P("x1", eu))),
                     eu->mv_scalar(Expr::integer(-1)), eu->chart.domain));
}

TEST_CASE("ricci slot conventions differ by sign") {
  auto lc = levi_civita(sphere_geometry());
  auto dom = lc->geo->chart.domain;
  auto a = ricci_data(lc, RicciSlot::Fourth);
  auto b = ricci_data(lc, RicciSlot::Third);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(num_equal(a.ricci[i][j], -b.ricci[i][j], dom));
  // the default slot is the one for which the wedge square of the Dirac
  // operator reproduces the Ricci 1-forms
  for (int i = 0; i < 2; ++i)
    CHECK(mv_num_equal(square_split(lc, lc->geo->theta(i)).wedge,
                       a.ricci_forms[i], dom));
}

TEST_CASE("hodge identity with r+s=n carries (-1)^{rs}") {
  Signature s2{2, 0};
  auto tau = Multivector::pseudoscalar(s2);
  auto t1 = Multivector::basis(s2, 0), t2 = Multivector::basis(s2, 1);
  Domain dom({"t"}, {{{0.2, 1.0}}});
  Expr lhs = t1.scalar_product(t2.hodge_star(tau));  // -1
  Expr rhs = t2.scalar_product(t1.hodge_star(tau));  // +1
  CHECK(num_equal(lhs, -rhs, dom));
  CHECK(num_equal(lhs, Expr::integer(-1), dom));
}

TEST_CASE("exterior covariant derivative Leibniz sign is (-1)^r") {
  // with X of odd grade and Y of even grade, (-1)^r = -1 while (-1)^{rs} = +1,
  // so the two candidate signs separate
  auto rc = minkowski_constant_torsion(Expr::rational(3, 10));
  auto g = rc->geo;
  IndexedForms X(g, 1, 0), Y(g, 1, 0);
  for (int a = 0; a < 4; ++a) {
    X.at({a}) = random_form(g, 1, 61 + a);
    Y.at({a}) = random_form(g, 2, 71 + a);
  }
  auto dX = ext_cov_d(rc, X);
  auto dY = ext_cov_d(rc, Y);
  IndexedForms XY(g, 2, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) XY.at({i, j}) = X.at({i}).wedge(Y.at({j}));
  auto dXY = ext_cov_d(rc, XY);
  bool minus_holds = true, plus_holds = true;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      auto with_minus = dX.at({i}).wedge(Y.at({j})) - X.at({i}).wedge(dY.at({j}));
      auto with_plus = dX.at({i}).wedge(Y.at({j})) + X.at({i}).wedge(dY.at({j}));
      minus_holds = minus_holds &&
                    mv_num_equal(dXY.at({i, j}), with_minus, g->chart.domain);
      plus_holds = plus_holds &&
                   mv_num_equal(dXY.at({i, j}), with_plus, g->chart.domain);
    }
  CHECK(minus_holds);
  CHECK_FALSE(plus_holds);
}
