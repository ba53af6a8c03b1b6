// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Tolerances are pinned here, not configurable.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "geocalc/scenarios.hpp"
#include "geocalc/specfile.hpp"

using namespace geocalc;

namespace {

int g_failures = 0;
const Tolerance kTol{1e-9, 16};

void verdict(const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(),
              detail.c_str());
  if (!ok) ++g_failures;
}

Expr P(const std::string& s, const GeometryPtr& g) {
  SymbolTable tab{g->chart.coords, {}};
  return parse_expr(s, tab);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_1_sphere_goldens() {
  auto g = sphere_geometry();
  auto lc = levi_civita(g);
  const Domain& dom = g->chart.domain;
  double worst = 0.0;
  worst = std::max(worst, rel_residual(g->c[1][0][1], P("-cot(t)", g), dom, kTol));
  worst = std::max(worst,
                   mv_max_residual(lc->omega_form(1, 0),
                                   g->theta(1).scaled(P("cot(t)", g)), dom, kTol));
  worst = std::max(worst,
                   mv_max_residual(lc->curvature_form(0, 1),
                                   g->theta(0).wedge(g->theta(1)), dom, kTol));
  worst = std::max(worst, mv_max_residual(star(*g, lc->curvature_form(0, 1)),
                                          g->mv_scalar(Expr::integer(1)), dom,
                                          kTol));
  Multivector rhs(g->sig);
  for (int b = 0; b < 2; ++b)
    rhs = rhs + star(*g, lc->curvature_form(0, b)).wedge(g->theta(b));
  worst = std::max(worst, mv_max_residual(rhs, g->theta(1), dom, kTol));
  verdict("criterion-1 sphere golden values",
          worst <= kTol.rel,
          "c^2_12=-cot t, omega^2_1=cot t theta^2, R^1_2=theta^12, *R^1_2=1, "
          "*R^1_b^theta^b=theta^2; max residual " + fmt(worst));
}

void criterion_2_nunes_goldens() {
  auto nunes = sphere_nunes();
  auto g = nunes->geo;
  const Domain& dom = g->chart.domain;
  double worst = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      worst = std::max(worst, mv_max_residual(nunes->curvature_form(a, b),
                                              Multivector(g->sig), dom, kTol));
  worst = std::max(
      worst, mv_max_residual(nunes->torsion_form(1),
                             g->theta(0).wedge(g->theta(1)).scaled(
                                 P("-cot(t)", g)),
                             dom, kTol));
  worst = std::max(worst, mv_max_residual(nunes->torsion_form(0),
                                          Multivector(g->sig), dom, kTol));
  worst = std::max(worst, nunes->metric_compat_residual(kTol));
  verdict("criterion-2 navigator golden values", worst <= kTol.rel,
          "curvature=0, T^2=-cot t theta^12, metric-compatible; max residual " +
              fmt(worst));
}

void criterion_3_evans_refutation() {
  auto g = sphere_geometry();
  auto lc = levi_civita(g);
  auto nunes = sphere_nunes();
  const Domain& dom = g->chart.domain;

  auto ev_lc = evans_check(lc, kTol);
  bool lhs_zero = mv_num_equal(ev_lc.lhs[0], Multivector(g->sig), dom, kTol);
  bool rhs_theta2 = mv_num_equal(ev_lc.rhs[0], g->theta(1), dom, kTol);
  Domain band({"t", "p"}, {{{0.4, 2.7}}, {{0.2, 6.0}}});
  double min_gap = 1e300;
  for (std::size_t k = 0; k < kTol.samples; ++k) {
    auto pt = band.sample(k);
    double biggest = 0.0;
    for (const auto& [mask, coeff] : ev_lc.difference[0].terms())
      biggest = std::max(biggest, std::fabs(coeff.eval(pt)));
    min_gap = std::min(min_gap, biggest);
  }

  auto ev_n = evans_check(nunes, kTol);
  bool rhs_zero = true;
  for (int a = 0; a < 2; ++a)
    rhs_zero = rhs_zero &&
               mv_num_equal(ev_n.rhs[a], Multivector(g->sig), dom, kTol);
  bool lhs_value = mv_num_equal(
      ev_n.lhs[1], g->theta(0).scaled(P("1/sin(t)^2", g)), dom, kTol);

  // report statuses from the builtin scenario
  auto rep = run_builtin("evans", kTol);
  const auto* e24 = rep.find("evans-24-levi-civita");
  const auto* du6a = rep.find("du6-two-route-levi-civita");
  const auto* du6b = rep.find("du6-two-route-nunes");
  bool statuses = e24 && e24->status == CheckStatus::Fail && du6a &&
                  du6a->status == CheckStatus::Pass && du6b &&
                  du6b->status == CheckStatus::Pass;

  bool ok = lhs_zero && rhs_theta2 && min_gap >= 0.5 && !ev_lc.equation_holds &&
            rhs_zero && lhs_value && !ev_n.equation_holds && statuses &&
            ev_lc.du6_agreement <= kTol.rel && ev_n.du6_agreement <= kTol.rel;
  verdict("criterion-3 refutation of the claimed dual-torsion identity", ok,
          "sphere: lhs=0, rhs=theta^2, pointwise gap >= " + fmt(min_gap) +
              "; navigator: rhs=0, lhs=(1/sin^2 t) theta^1; check reports "
              "fail for the claimed identity, pass for the two-route "
              "decomposition (residuals " + fmt(ev_lc.du6_agreement) + ", " +
              fmt(ev_n.du6_agreement) + ")");
}

void criterion_4_bianchi() {
  std::vector<std::pair<std::string, ConnectionPtr>> fixtures = {
      {"s2-levi-civita", levi_civita(sphere_geometry())},
      {"s2-nunes", sphere_nunes()},
      {"flat-polar", levi_civita(polar_geometry())},
      {"euclidean-contorsion", euclidean_contorsion_connection()}};
  double worst = 0.0;
  std::string notes;
  for (const auto& [name, conn] : fixtures) {
    auto g = conn->geo;
    const Domain& dom = g->chart.domain;
    auto dtorsion = ext_cov_d(conn, torsion_family(conn));
    for (int a = 0; a < g->n(); ++a) {
      Multivector rt(g->sig);
      for (int b = 0; b < g->n(); ++b)
        rt = rt + conn->curvature_form(a, b).wedge(g->theta(b));
      // the criterion's literal arrangement (D T - R ^ theta)
      worst = std::max(worst, mv_max_residual(dtorsion.at({a}) - rt,
                                              Multivector(g->sig), dom, kTol));
    }
    auto rep = bianchi_reports(conn, kTol);
    worst = std::max({worst, rep.first_frame, rep.second_frame,
                      rep.first_coord, rep.second_coord});
  }
  verdict("criterion-4 bianchi identity suites", worst <= kTol.rel,
          "frame and cyclic coordinate residuals on four structures; max " +
              fmt(worst));
}

struct PropertyCounter {
  int cases = 0;
  double worst = 0.0;
  void tally(double r) {
    ++cases;
    worst = std::max(worst, r);
  }
};

void criterion_5_operator_identities() {
  PropertyCounter pc;
  std::vector<GeometryPtr> geoms = {sphere_geometry(), spherical_r3_geometry(),
                                    minkowski_geometry()};

  // algebraic suites per signature
  for (const auto& g : geoms) {
    const Domain& dom = g->chart.domain;
    auto tau = Multivector::pseudoscalar(g->sig);
    int n = g->n();
    for (unsigned seed = 0; seed < 3; ++seed) {
      auto a = random_form(g, 1, 900 + seed);
      for (int r = 0; r <= n; ++r)
        for (int s = 0; s <= n; ++s) {
          auto A = random_form(g, r, seed * 37 + 11 * r + 1);
          auto B = random_form(g, s, seed * 53 + 17 * s + 5);
          // Clifford split of a vector times a homogeneous form
          auto aB = a.clifford(B);
          pc.tally(mv_max_residual(aB, a.left_contract(B) + a.wedge(B), dom,
                                   kTol));
          auto Ba = B.clifford(a);
          auto signedBa = (s % 2) ? -Ba : Ba;
          pc.tally(mv_max_residual(
              a.left_contract(B),
              (aB - signedBa).scaled(Expr::rational(1, 2)), dom, kTol));
          pc.tally(mv_max_residual(
              a.wedge(B), (aB + signedBa).scaled(Expr::rational(1, 2)), dom,
              kTol));
          // contraction duality
          if (r <= s) {
            auto lhs = A.left_contract(B);
            auto rhs = B.right_contract(A);
            pc.tally(mv_max_residual(lhs, (r * (s - r)) % 2 ? -rhs : rhs, dom,
                                     kTol));
          }
          // scalar product through reversion
          if (r == s)
            pc.tally(rel_residual(A.scalar_product(B),
                                  A.reversion().clifford(B).scalar_part(), dom,
                                  kTol));
          // T54 / T50
          if (r + s + 1 <= n + 2) {
            auto lhs = a.left_contract(A.wedge(B));
            auto rhs = a.left_contract(A).wedge(B) +
                       A.grade_involution().wedge(a.left_contract(B));
            pc.tally(mv_max_residual(lhs, rhs, dom, kTol));
          }
          auto C = random_form(g, std::min(n, 3), seed + 77);
          pc.tally(mv_max_residual(A.left_contract(B.left_contract(C)),
                                   A.wedge(B).left_contract(C), dom, kTol));
          // Hodge identities
          if (r == s)
            pc.tally(mv_max_residual(A.wedge(B.hodge_star(tau)),
                                     B.wedge(A.hodge_star(tau)), dom, kTol));
          if (r + s == n) {
            Expr lhs = A.scalar_product(B.hodge_star(tau));
            Expr rhs = B.scalar_product(A.hodge_star(tau));
            pc.tally(rel_residual(lhs, (r * s) % 2 ? -rhs : rhs, dom, kTol));
          }
          if (r <= s) {
            auto lhs = A.wedge(B.hodge_star(tau));
            auto rhs = A.reversion().left_contract(B).hodge_star(tau);
            pc.tally(mv_max_residual(lhs, (r * (s - 1)) % 2 ? -rhs : rhs, dom,
                                     kTol));
          }
          if (r + s <= n) {
            auto lhs = A.left_contract(B.hodge_star(tau));
            auto rhs = A.reversion().wedge(B).hodge_star(tau);
            pc.tally(
                mv_max_residual(lhs, (r * s) % 2 ? -rhs : rhs, dom, kTol));
          }
        }
    }
  }

  // differential suites per geometry
  for (const auto& g : geoms) {
    const Domain& dom = g->chart.domain;
    auto lc = levi_civita(g);
    Multivector zero(g->sig);
    for (unsigned seed = 0; seed < 2; ++seed) {
      auto A = random_multivector(g, 7000 + seed);
      pc.tally(mv_max_residual(ext_d(g, ext_d(g, A)), zero, dom, kTol));
      pc.tally(mv_max_residual(codifferential(g, codifferential(g, A)), zero,
                               dom, kTol));
      pc.tally(mv_max_residual(dirac_wedge(lc, A), ext_d(g, A), dom, kTol));
      pc.tally(mv_max_residual(dirac_contract(lc, A), -codifferential(g, A),
                               dom, kTol));
      auto split = square_split(lc, A);
      auto dsq = dirac(lc, dirac(lc, A));
      pc.tally(mv_max_residual(split.dot + split.wedge, dsq, dom, kTol));
      pc.tally(mv_max_residual(dsq, hodge_dalembertian(g, A), dom, kTol));
      for (int r = 0; r <= g->n(); ++r) {
        auto H = random_form(g, r, 8000 + 13 * seed + r);
        auto lhs = codifferential(g, star(*g, H));
        auto rhs = star(*g, ext_d(g, H));
        pc.tally(mv_max_residual(lhs, (r + 1) % 2 ? -rhs : rhs, dom, kTol));
        auto lhs2 = star(*g, codifferential(g, H));
        auto rhs2 = ext_d(g, star(*g, H));
        pc.tally(mv_max_residual(lhs2, r % 2 ? -rhs2 : rhs2, dom, kTol));
      }
    }
  }

  // wedge square on the coframe = Ricci 1-forms (curved and flat)
  for (const auto& g : {sphere_geometry(), polar_geometry()}) {
    auto lc = levi_civita(g);
    auto data = ricci_data(lc);
    for (int a = 0; a < g->n(); ++a) {
      pc.tally(mv_max_residual(square_split(lc, g->theta(a)).wedge,
                               data.ricci_forms[a], g->chart.domain, kTol));
      ++pc.cases;
    }
  }

  bool ok = pc.cases >= 200 && pc.worst <= kTol.rel;
  verdict("criterion-5 operator identity property suite", ok,
          std::to_string(pc.cases) + " randomized cases across Cl(2,0), "
          "Cl(3,0), Cl(1,3); zero failures; max residual " + fmt(pc.worst) +
          " (the r+s=n star-symmetry carries its graded sign)");
}

void criterion_6_connection_independence() {
  auto nunes = sphere_nunes();
  auto g = nunes->geo;
  const Domain& dom = g->chart.domain;
  double worst = 0.0;
  int cases = 0;
  for (unsigned seed = 0; seed < 24; ++seed) {
    auto A = random_multivector(g, 100 + seed);
    auto pair = d_delta_via_rc(nunes, A);
    worst = std::max(worst, mv_max_residual(pair.d, ext_d(g, A), dom, kTol));
    worst = std::max(
        worst, mv_max_residual(pair.delta, codifferential(g, A), dom, kTol));
    ++cases;
  }
  verdict("criterion-6 connection independence of d and delta",
          cases >= 20 && worst <= kTol.rel,
          std::to_string(cases) + " random fields through the navigator "
          "connection; max residual " + fmt(worst) +
          " (delta's torsion term carries the sign fixed by the derivation)");
}

void criterion_7_maxwell() {
  auto g = minkowski_geometry();
  auto rc = minkowski_constant_torsion(Expr::rational(3, 10));
  double worst_lor = 0.0, worst_rc = 0.0;
  for (const auto& fx : maxwell_fixtures()) {
    auto lor = maxwell_lorentzian(g, fx.F, fx.J, kTol);
    worst_lor = std::max(worst_lor, lor.worst());
    auto rcrep = maxwell_rc(rc, fx.F, fx.J, kTol);
    worst_rc = std::max(worst_rc, rcrep.worst());
  }
  verdict("criterion-7 maxwell equivalences",
          worst_lor <= kTol.rel && worst_rc <= kTol.rel,
          "dF, deltaF+J, diracF-J, divergence form: max " + fmt(worst_lor) +
              "; torsion-coupled cyclic/divergence/Clifford forms: max " +
              fmt(worst_rc));
}

void criterion_8_discrepancy_records() {
  auto rep = run_builtin("s2-levi-civita", kTol);
  const auto* a = rep.find("discrepancy-curvature-normalization");
  const auto* b = rep.find("discrepancy-ricci-contraction-slot");
  bool ok = a && a->status == CheckStatus::DiscrepancyNoted &&
            a->note.find("1/2") != std::string::npos &&
            a->note.find("-2") != std::string::npos && b &&
            b->status == CheckStatus::DiscrepancyNoted &&
            b->note.find("R_a^c_bc") != std::string::npos &&
            b->note.find("R_a^c_cb") != std::string::npos;
  verdict("criterion-8 discrepancy records", ok,
          "curvature-normalization and ricci-contraction-slot records "
          "present, each quoting both conventions");
}

void criterion_9_tetrad_identity() {
  std::map<std::string, double> probe{{"t", M_PI / 4}, {"p", 1.0}};
  auto lc = levi_civita(sphere_geometry());
  auto nunes = sphere_nunes();
  auto r1 = tetrad_identity_check(lc, probe, kTol);
  auto r2 = tetrad_identity_check(nunes, probe, kTol);
  bool ok = r1.identity_residual <= kTol.rel &&
            r2.identity_residual <= kTol.rel && r1.dminus_max >= 0.1 &&
            r1.dplus_max >= 0.1;
  verdict("criterion-9 frame/coordinate compatibility identity", ok,
          "residual 0 on both sphere structures; naive misreadings nonzero "
          "at t=pi/4: max |D-q| = " + fmt(r1.dminus_max) + ", max |D+q| = " +
          fmt(r1.dplus_max) +
          " (the nonzero components are D-_p q^2_t and D+_t q^2_p)");
}

}  // namespace

int main() {
  criterion_1_sphere_goldens();
  criterion_2_nunes_goldens();
  criterion_3_evans_refutation();
  criterion_4_bianchi();
  criterion_5_operator_identities();
  criterion_6_connection_independence();
  criterion_7_maxwell();
  criterion_8_discrepancy_records();
  criterion_9_tetrad_identity();
  if (g_failures == 0)
    std::printf("all acceptance criteria pass\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
