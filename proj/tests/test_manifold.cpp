#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geocalc/scenarios.hpp"

using namespace geocalc;

namespace {
Expr P(const std::string& s, const GeometryPtr& g) {
  SymbolTable tab{g->chart.coords, {}};
  return parse_expr(s, tab);
}
}  // namespace

TEST_CASE("sphere geometry") {
  auto g = sphere_geometry();
  const Domain& dom = g->chart.domain;
  // metric: diag(1, sin^2 t)
  CHECK(num_equal(g->g[0][0], Expr::integer(1), dom));
  CHECK(num_equal(g->g[1][1], P("sin(t)^2", g), dom));
  CHECK(g->g[0][1].is_zero());
  // inverse metric and tetrad duality
  CHECK(num_equal(g->ginv[1][1], P("1/sin(t)^2", g), dom));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Expr acc;
      for (int mu = 0; mu < 2; ++mu) acc = acc + g->q[a][mu] * g->qinv[mu][b];
      CHECK(num_equal(acc, Expr::integer(a == b ? 1 : 0), dom));
    }
  // c^2_12 = -cot t, everything else zero up to antisymmetry
  CHECK(num_equal(g->c[1][0][1], P("-cot(t)", g), dom));
  CHECK(num_equal(g->c[1][1][0], P("cot(t)", g), dom));
  CHECK(g->c[0][0][1].is_zero());
  CHECK(num_equal(g->sqrt_abs_det_g, P("abs(sin(t))", g), dom));
}

TEST_CASE("polar and euclidean structure coefficients") {
  auto pol = polar_geometry();
  CHECK(num_equal(pol->c[1][0][1], P("-1/r", pol), pol->chart.domain));
  auto eu = euclidean_geometry();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) CHECK(eu->c[a][b][c].is_zero());
}

TEST_CASE("metric reconstruction on every fixture") {
  for (auto g : {sphere_geometry(), polar_geometry(), minkowski_geometry(),
                 spherical_r3_geometry()}) {
    const Domain& dom = g->chart.domain;
    int n = g->n();
    for (int mu = 0; mu < n; ++mu)
      for (int rho = 0; rho < n; ++rho) {
        Expr acc;
        for (int nu = 0; nu < n; ++nu) acc = acc + g->ginv[mu][nu] * g->g[nu][rho];
        CHECK(num_equal(acc, Expr::integer(mu == rho ? 1 : 0), dom));
      }
  }
}

TEST_CASE("dtheta two ways (oracle)") {
  for (auto g : {sphere_geometry(), polar_geometry(), spherical_r3_geometry()}) {
    const Domain& dom = g->chart.domain;
    int n = g->n();
    for (int a = 0; a < n; ++a) {
      auto via_c = g->coordinate_form(g->dtheta(a));
      for (int mu = 0; mu < n; ++mu)
        for (int nu = mu + 1; nu < n; ++nu) {
          Expr direct = g->q[a][nu].diff(g->chart.coords[mu]) -
                        g->q[a][mu].diff(g->chart.coords[nu]);
          auto it = via_c.find((1u << mu) | (1u << nu));
          Expr got = it == via_c.end() ? Expr() : it->second;
          CHECK(num_equal(got, direct, dom));
        }
    }
  }
}

TEST_CASE("pfaff derivative examples") {
  auto g = sphere_geometry();
  const Domain& dom = g->chart.domain;
  // e_1 = d_t on sin(t) theta^2
  auto A = g->theta(1).scaled(P("sin(t)", g));
  CHECK(mv_num_equal(g->pfaff_mv(A, 0), g->theta(1).scaled(P("cos(t)", g)), dom));
  // e_2 kills p-free coefficients
  auto B = g->theta(0).scaled(P("cot(t)", g));
  CHECK(mv_num_equal(g->pfaff_mv(B, 1), Multivector(g->sig), dom));
  // e_2 = (1/sin t) d_p
  auto C = g->theta(0).scaled(P("p", g));
  CHECK(mv_num_equal(g->pfaff_mv(C, 1), g->theta(0).scaled(P("1/sin(t)", g)),
                     dom));
}

TEST_CASE("volume elements") {
  auto s2 = sphere_geometry();
  CHECK(mv_num_equal(s2->tau(), s2->theta(0).wedge(s2->theta(1)),
                     s2->chart.domain));
  CHECK(s2->coordinate_str(s2->tau()).find("sin(t)") != std::string::npos);
  auto mink = minkowski_geometry();
  Multivector want = mink->theta(0);
  for (int a = 1; a < 4; ++a) want = want.wedge(mink->theta(a));
  CHECK(mv_num_equal(mink->tau(), want, mink->chart.domain));
  auto pol = polar_geometry();
  auto cf = pol->coordinate_form(pol->tau());
  CHECK(num_equal(cf.at(0b11u), Expr::coord("r"), pol->chart.domain));
}

TEST_CASE("singular cotetrad is rejected") {
  Chart chart;
  chart.coords = {"x", "y"};
  chart.domain = Domain({"x", "y"}, {{{-1.0, 1.0}}, {{-1.0, 1.0}}});
  SymbolTable tab{chart.coords, {}};
  ExprMatrix q = {{parse_expr("x", tab), parse_expr("0", tab)},
                  {parse_expr("0", tab), parse_expr("1", tab)}};
  CHECK_THROWS_AS(build_geometry(chart, Signature{2, 0}, q), GeometryError);
  // dimension mismatch
  Chart c1 = chart;
  c1.coords = {"x"};
  CHECK_THROWS_AS(build_geometry(c1, Signature{2, 0}, q), GeometryError);
}

TEST_CASE("symbolic matrix inverse on a dense matrix") {
  SymbolTable tab{{"t"}, {}};
  ExprMatrix m = {{parse_expr("1", tab), parse_expr("sin(t)", tab)},
                  {parse_expr("cos(t)", tab), parse_expr("2", tab)}};
  Expr det = matrix_det(m);
  Domain dom({"t"}, {{{0.2, 1.2}}});
  CHECK(num_equal(det, parse_expr("2 - sin(t)*cos(t)", tab), dom));
  auto inv = matrix_inverse(m, det);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Expr acc;
      for (int k = 0; k < 2; ++k) acc = acc + m[i][k] * inv[k][j];
      CHECK(num_equal(acc, Expr::integer(i == j ? 1 : 0), dom));
    }
}
