#include "geocalc/connection.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "geocalc/calculus.hpp"

namespace geocalc {

namespace {
Expr3 zero3(int n) {
  return Expr3(n, ExprMatrix(n, std::vector<Expr>(n)));
}
}  // namespace

Multivector Connection::omega_form(int a, int b) const {
  Multivector f(geo->sig);
  for (int c = 0; c < n(); ++c) f.accumulate(1u << c, omega[a][c][b]);
  return f;
}

Multivector Connection::omega_bivector(int a) const {
  // omega_a = 1/2 w_a^{bc} theta_b ^ theta_c ; with diagonal eta this is
  // 1/2 eta_{bb} w^b_{ac} theta^b ^ theta^c.
  Multivector f(geo->sig);
  Expr half = Expr::rational(1, 2);
  for (int b = 0; b < n(); ++b)
    for (int c = 0; c < n(); ++c) {
      if (b == c) continue;
      Expr coeff = half * Expr::integer(geo->sig.eta(b)) * omega[b][a][c];
      if (coeff.is_zero()) continue;
      int sign = blade_reorder_sign(1u << b, 1u << c);
      if (b > c)  // store on the canonical ascending blade
        f.accumulate((1u << b) | (1u << c), sign > 0 ? coeff : -coeff);
      else
        f.accumulate((1u << b) | (1u << c), coeff);
    }
  return f;
}

Multivector Connection::torsion_form(int a) const {
  Multivector s = geo->dtheta(a);
  for (int b = 0; b < n(); ++b)
    s = s + omega_form(a, b).wedge(geo->theta(b));
  return -s;
}

Multivector Connection::curvature_form(int a, int b) const {
  Multivector r = ext_d(geo, omega_form(a, b));
  for (int c = 0; c < n(); ++c)
    r = r + omega_form(a, c).wedge(omega_form(c, b));
  return r;
}

namespace {
// pull T^a_{bc} (or R-block analogues) out of a 2-form with the 1/2
// convention: F = 1/2 F_{bc} theta^b ^ theta^c.
ExprMatrix extract2(const Multivector& f, int n) {
  ExprMatrix out(n, std::vector<Expr>(n));
  for (int b = 0; b < n; ++b)
    for (int c = b + 1; c < n; ++c) {
      Expr coeff = f.coefficient((1u << b) | (1u << c));
      out[b][c] = coeff;
      out[c][b] = -coeff;
    }
  return out;
}
}  // namespace

Expr3 Connection::torsion_components() const {
  Expr3 t(n());
  for (int a = 0; a < n(); ++a) t[a] = extract2(torsion_form(a), n());
  return t;
}

Expr3 Connection::torsion_components_direct() const {
  Expr3 t = zero3(n());
  for (int a = 0; a < n(); ++a)
    for (int b = 0; b < n(); ++b)
      for (int c = 0; c < n(); ++c)
        t[a][b][c] = omega[a][c][b] - omega[a][b][c] + geo->c[a][b][c];
  return t;
}

std::vector<Expr3> Connection::curvature_components() const {
  std::vector<Expr3> r(n(), zero3(n()));
  for (int b = 0; b < n(); ++b)
    for (int a = 0; a < n(); ++a)
      r[b][a] = extract2(curvature_form(a, b), n());
  return r;
}

std::vector<Expr3> Connection::curvature_components_direct() const {
  // R_b{}^a{}_{cd} = e_c(w^a_{db}) - e_d(w^a_{cb})
  //                + w^a_{cs} w^s_{db} - w^a_{ds} w^s_{cb} - c^s_{cd} w^a_{sb}
  std::vector<Expr3> r(n(), zero3(n()));
  for (int b = 0; b < n(); ++b)
    for (int a = 0; a < n(); ++a)
      for (int c = 0; c < n(); ++c)
        for (int d = 0; d < n(); ++d) {
          Expr v = geo->pfaff(omega[a][d][b], c) - geo->pfaff(omega[a][c][b], d);
          for (int s = 0; s < n(); ++s) {
            v = v + omega[a][c][s] * omega[s][d][b] -
                omega[a][d][s] * omega[s][c][b] -
                geo->c[s][c][d] * omega[a][s][b];
          }
          r[b][a][c][d] = v;
        }
  return r;
}

double Connection::metric_compat_residual(const Tolerance& tol) const {
  double worst = 0.0;
  for (int a = 0; a < n(); ++a)
    for (int c = 0; c < n(); ++c)
      for (int b = 0; b < n(); ++b) {
        Expr lhs = Expr::integer(geo->sig.eta(a)) * omega[a][c][b];
        Expr rhs = -(Expr::integer(geo->sig.eta(b)) * omega[b][c][a]);
        worst = std::max(worst, rel_residual(lhs, rhs, geo->chart.domain, tol));
      }
  return worst;
}

ConnectionPtr levi_civita(const GeometryPtr& g) {
  const int n = g->n();
  auto conn = std::make_shared<Connection>();
  conn->geo = g;
  conn->kind = ConnKind::LeviCivita;
  conn->omega = zero3(n);
  // w^{cd} = 1/2 (-c^c_{jk} eta^{dj} + c^d_{jk} eta^{cj}
  //               - eta^{ca} eta_{bk} eta^{dj} c^b_{ja}) theta^k,
  // specialized to diagonal eta; then w^c_{kd} = eta_{dd} w^{cd}_k.
  Expr half = Expr::rational(1, 2);
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < n; ++d) {
      if (c == d) continue;  // w^{cc} = 0 for metric-compatible
      for (int k = 0; k < n; ++k) {
        Expr v = half * (Expr::integer(-g->sig.eta(d)) * g->c[c][d][k] +
                         Expr::integer(g->sig.eta(c)) * g->c[d][c][k] +
                         Expr::integer(-g->sig.eta(c) * g->sig.eta(k) *
                                       g->sig.eta(d)) *
                             g->c[k][d][c]);
        conn->omega[c][k][d] = Expr::integer(g->sig.eta(d)) * v;
      }
    }
  return conn;
}

ConnectionPtr from_coefficients(const GeometryPtr& g, const Expr3& omega) {
  const int n = g->n();
  if (static_cast<int>(omega.size()) != n)
    throw ConnectionError("omega must be n x n x n");
  for (const auto& m : omega) {
    if (static_cast<int>(m.size()) != n)
      throw ConnectionError("omega must be n x n x n");
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != n)
        throw ConnectionError("omega must be n x n x n");
  }
  auto conn = std::make_shared<Connection>();
  conn->geo = g;
  conn->omega = omega;
  conn->kind = ConnKind::General;
  return conn;
}

ConnectionPtr from_contorsion(const GeometryPtr& g, const Expr3& torsion) {
  const int n = g->n();
  if (static_cast<int>(torsion.size()) != n)
    throw ConnectionError("torsion must be n x n x n");
  Tolerance tol;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (rel_residual(torsion[a][b][c], -torsion[a][c][b],
                         g->chart.domain, tol) > tol.rel)
          throw ConnectionError(
              "torsion components must be antisymmetric in the lower pair");

  // Work with the structure-equation components t = -T (the engine stores
  // torsion with the worked-example sign; the contorsion algebra below is
  // the classical one).  Lower the upper index, solve
  //   K_{g|ab} = 1/2 (t_{g|ab} - t_{a|bg} + t_{b|ga}),
  // which is the unique solution of K^r_{ab} - K^r_{ba} = t^r_{ab} with
  // K_{g|ab} = -K_{b|ag} (metric compatibility).
  auto eta = [&](int i) { return Expr::integer(g->sig.eta(i)); };
  auto t1 = [&](int up, int lo1, int lo2) {
    return -(eta(up) * torsion[up][lo1][lo2]);  // structure-equation sign, lowered
  };
  Expr3 K = zero3(n);
  for (int gg = 0; gg < n; ++gg)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Expr lowered = Expr::rational(1, 2) *
                       (t1(gg, a, b) - t1(a, b, gg) + t1(b, gg, a));
        K[gg][a][b] = eta(gg) * lowered;
      }

  auto lc = levi_civita(g);
  Expr3 omega = lc->omega;
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int b = 0; b < n; ++b) omega[a][c][b] = omega[a][c][b] + K[a][c][b];
  auto conn = std::make_shared<Connection>();
  conn->geo = g;
  conn->omega = omega;
  conn->kind = ConnKind::General;
  return conn;
}

CurvatureData ricci_data(const ConnectionPtr& c, RicciSlot slot) {
  const int n = c->n();
  CurvatureData out;
  out.conn = c;
  out.slot = slot;
  out.torsion.reserve(n);
  for (int a = 0; a < n; ++a) out.torsion.push_back(c->torsion_form(a));
  out.curvature.reserve(n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out.curvature.push_back(c->curvature_form(a, b));
  out.torsion_comp = c->torsion_components();
  out.curvature_comp = c->curvature_components();

  out.ricci.assign(n, std::vector<Expr>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Expr v;
      for (int s = 0; s < n; ++s)
        v = v + (slot == RicciSlot::Fourth ? out.curvature_comp[a][s][b][s]
                                           : out.curvature_comp[a][s][s][b]);
      out.ricci[a][b] = v;
    }

  Expr scalar;
  for (int a = 0; a < n; ++a)
    scalar = scalar + Expr::integer(c->geo->sig.eta(a)) * out.ricci[a][a];
  out.scalar = scalar;

  for (int a = 0; a < n; ++a) {
    Multivector f(c->geo->sig);
    for (int b = 0; b < n; ++b)
      f.accumulate(1u << b,
                   Expr::integer(c->geo->sig.eta(a)) * out.ricci[a][b]);
    out.ricci_forms.push_back(f);
  }
  for (int a = 0; a < n; ++a) {
    Multivector g_form = out.ricci_forms[a] -
        c->geo->theta(a).scaled(Expr::rational(1, 2) * scalar);
    out.einstein_forms.push_back(g_form);
  }
  return out;
}

namespace {
// D0_c K^a_{db}: frame covariant derivative of the (1,2) tensor K using the
// Levi-Civita coefficients w0.
Expr cov_deriv_K(const Geometry& g, const Expr3& w0, const Expr3& K,
                 int a, int c, int d, int b) {
  Expr v = g.pfaff(K[a][d][b], c);
  for (int s = 0; s < g.n(); ++s)
    v = v + w0[a][c][s] * K[s][d][b] - w0[s][c][d] * K[a][s][b] -
        w0[s][c][b] * K[a][d][s];
  return v;
}
}  // namespace

JData curvature_difference(const ConnectionPtr& c, const Tolerance& tol) {
  const int n = c->n();
  const auto& g = *c->geo;
  auto lc = levi_civita(c->geo);
  JData out;
  out.contorsion = zero3(n);
  for (int a = 0; a < n; ++a)
    for (int cc = 0; cc < n; ++cc)
      for (int b = 0; b < n; ++b)
        out.contorsion[a][cc][b] = c->omega[a][cc][b] - lc->omega[a][cc][b];

  const Expr3& K = out.contorsion;
  out.j4.assign(n, zero3(n));
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          Expr v = cov_deriv_K(g, lc->omega, K, a, cc, d, b);
          for (int s = 0; s < n; ++s) v = v - K[a][d][s] * K[s][cc][b];
          out.j4[b][a][cc][d] = v;
        }

  auto r_full = c->curvature_components();
  auto r_lc = lc->curvature_components();
  double worst = 0.0;
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          Expr rhs = r_lc[b][a][cc][d] + out.j4[b][a][cc][d] -
                     out.j4[b][a][d][cc];
          worst = std::max(worst, rel_residual(r_full[b][a][cc][d], rhs,
                                               g.chart.domain, tol));
        }
  out.curvature_split_residual = worst;

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.j_forms.push_back(c->curvature_form(a, b) - lc->curvature_form(a, b));

  // Ricci-level difference J_{ab} (same contraction slot as ricci_data's
  // default): J_ab = D0_b K^c_{ca} - D0_c K^c_{ba} + K^c_{bs}K^s_{ca}
  //                 - K^c_{cs}K^s_{ba}
  out.j_ricci.assign(n, std::vector<Expr>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Expr v;
      for (int cc = 0; cc < n; ++cc) {
        v = v + cov_deriv_K(g, lc->omega, K, cc, b, cc, a) -
            cov_deriv_K(g, lc->omega, K, cc, cc, b, a);
        for (int s = 0; s < n; ++s)
          v = v + K[cc][b][s] * K[s][cc][a] - K[cc][cc][s] * K[s][b][a];
      }
      out.j_ricci[a][b] = v;
    }

  auto rd_full = ricci_data(c);
  auto rd_lc = ricci_data(lc);
  worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      worst = std::max(
          worst, rel_residual(rd_full.ricci[a][b],
                              rd_lc.ricci[a][b] + out.j_ricci[a][b],
                              g.chart.domain, tol));
  out.ricci_split_residual = worst;
  return out;
}

Expr3 coordinate_coefficients(const Connection& c) {
  const auto& g = *c.geo;
  const int n = g.n();
  // G^r_{mu nu} = q^r_a (d_mu q^a_nu + w^a_{mu b} q^b_nu),
  // w^a_{mu b} = w^a_{cb} q^c_mu.
  Expr3 gamma = zero3(n);
  for (int r = 0; r < n; ++r)
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        Expr v;
        for (int a = 0; a < n; ++a) {
          Expr inner = g.q[a][nu].diff(g.chart.coords[mu]);
          for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc)
              inner = inner + c.omega[a][cc][b] * g.q[cc][mu] * g.q[b][nu];
          v = v + g.qinv[r][a] * inner;
        }
        gamma[r][mu][nu] = v;
      }
  return gamma;
}

TetradReport tetrad_identity_check(const ConnectionPtr& c,
                                   const std::map<std::string, double>& probe,
                                   const Tolerance& tol) {
  const auto& g = *c->geo;
  const int n = g.n();
  Expr3 gamma = coordinate_coefficients(*c);
  TetradReport rep{0.0, 0.0, 0.0, ""};

  for (int mu = 0; mu < n; ++mu)
    for (int a = 0; a < n; ++a)
      for (int nu = 0; nu < n; ++nu) {
        Expr omega_mu_b_q;
        for (int b = 0; b < n; ++b)
          for (int cc = 0; cc < n; ++cc)
            omega_mu_b_q = omega_mu_b_q +
                c->omega[a][cc][b] * g.q[cc][mu] * g.q[b][nu];
        Expr dplus = g.q[a][nu].diff(g.chart.coords[mu]) + omega_mu_b_q;
        Expr gamma_q;
        for (int r = 0; r < n; ++r)
          gamma_q = gamma_q + gamma[r][mu][nu] * g.q[a][r];
        Expr dminus = g.q[a][nu].diff(g.chart.coords[mu]) - gamma_q;
        Expr residual = dplus - gamma_q;

        rep.identity_residual = std::max(
            rep.identity_residual,
            rel_residual(residual, Expr(), g.chart.domain, tol));
        rep.dminus_max = std::max(rep.dminus_max, std::fabs(dminus.eval(probe)));
        rep.dplus_max = std::max(rep.dplus_max, std::fabs(dplus.eval(probe)));
      }

  std::ostringstream os;
  os << "identity residual " << rep.identity_residual
     << "; max |D-q| at probe " << rep.dminus_max << "; max |D+q| at probe "
     << rep.dplus_max;
  rep.detail = os.str();
  return rep;
}

}  // namespace geocalc
