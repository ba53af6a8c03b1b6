#include "geocalc/manifold.hpp"

#include <bit>
#include <cmath>
#include <sstream>

namespace geocalc {

namespace {

// Laplace expansion along the first remaining row; rows/cols given by mask.
Expr det_rec(const ExprMatrix& m, uint32_t rows, uint32_t cols) {
  int n = std::popcount(rows);
  if (n == 0) return Expr::integer(1);
  int r = std::countr_zero(rows);
  Expr acc;
  int sign = +1;
  for (int c = 0; c < static_cast<int>(m.size()); ++c) {
    if (!(cols & (1u << c))) continue;
    if (!m[r][c].is_zero()) {
      Expr minor = det_rec(m, rows & ~(1u << r), cols & ~(1u << c));
      Expr term = m[r][c] * minor;
      acc = acc + (sign > 0 ? term : -term);
    }
    sign = -sign;
  }
  return acc;
}

}  // namespace

Expr matrix_det(const ExprMatrix& m) {
  uint32_t full = (1u << m.size()) - 1u;
  return det_rec(m, full, full);
}

ExprMatrix matrix_inverse(const ExprMatrix& m, const Expr& det) {
  const std::size_t n = m.size();
  ExprMatrix inv(n, std::vector<Expr>(n));
  uint32_t full = (1u << n) - 1u;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Expr minor = det_rec(m, full & ~(1u << j), full & ~(1u << i));
      int sign = ((i + j) % 2) ? -1 : +1;
      inv[i][j] = (sign > 0 ? minor : -minor) / det;
    }
  return inv;
}

Expr Geometry::pfaff(const Expr& f, int a) const {
  Expr acc;
  for (int mu = 0; mu < n(); ++mu)
    acc = acc + qinv[mu][a] * f.diff(chart.coords[mu]);
  return acc;
}

Multivector Geometry::pfaff_mv(const Multivector& A, int a) const {
  return A.map_coefficients(
      [this, a](const Expr& c, uint32_t) { return pfaff(c, a); });
}

Multivector Geometry::tau() const {
  return Multivector::pseudoscalar(sig, chart.orientation);
}

Multivector Geometry::theta(int a) const { return Multivector::basis(sig, a); }

Multivector Geometry::theta_lower(int a) const {
  return Multivector::blade(sig, 1u << a, Expr::integer(sig.eta(a)));
}

Multivector Geometry::dtheta(int a) const {
  // d theta^a = -1/2 c^a_{bc} theta^b ^ theta^c
  Multivector out(sig);
  for (int b = 0; b < n(); ++b)
    for (int cc = b + 1; cc < n(); ++cc)
      out.accumulate((1u << b) | (1u << cc), -c[a][b][cc]);
  return out;
}

std::map<uint32_t, Expr> Geometry::coordinate_form(const Multivector& A) const {
  // substitute theta^a = q^a_mu dx^mu blade by blade
  std::map<uint32_t, Expr> out;
  auto add = [&out](uint32_t m, const Expr& e) {
    if (e.is_zero()) return;
    auto it = out.find(m);
    if (it == out.end()) out.emplace(m, e);
    else it->second = it->second + e;
  };
  for (const auto& [mask, coeff] : A.terms()) {
    // expand the wedge of substituted 1-forms
    std::map<uint32_t, Expr> acc{{0u, coeff}};
    for (int a = 0; a < n(); ++a) {
      if (!(mask & (1u << a))) continue;
      std::map<uint32_t, Expr> next;
      for (const auto& [pm, pc] : acc)
        for (int mu = 0; mu < n(); ++mu) {
          if (pm & (1u << mu)) continue;
          if (q[a][mu].is_zero()) continue;
          int sign = blade_reorder_sign(pm, 1u << mu);
          Expr term = pc * q[a][mu];
          Expr signed_term = sign > 0 ? term : -term;
          auto it = next.find(pm | (1u << mu));
          if (it == next.end()) next.emplace(pm | (1u << mu), signed_term);
          else it->second = it->second + signed_term;
        }
      acc = std::move(next);
    }
    for (const auto& [m, e] : acc) add(m, e);
  }
  return out;
}

std::string Geometry::coordinate_str(const Multivector& A) const {
  auto cf = coordinate_form(A);
  if (cf.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, e] : cf) {
    if (!first) os << " + ";
    first = false;
    std::ostringstream blade;
    bool bfirst = true;
    for (int mu = 0; mu < n(); ++mu)
      if (m & (1u << mu)) {
        if (!bfirst) blade << "^";
        blade << "d" << chart.coords[mu];
        bfirst = false;
      }
    if (m == 0) os << e.str();
    else os << "(" << e.str() << ") " << blade.str();
  }
  return os.str();
}

GeometryPtr build_geometry(const Chart& chart, Signature sig,
                           const ExprMatrix& cotetrad) {
  const int n = sig.n();
  if (static_cast<int>(chart.coords.size()) != n)
    throw GeometryError("chart dimension does not match signature");
  if (static_cast<int>(cotetrad.size()) != n)
    throw GeometryError("cotetrad must be n x n");
  for (const auto& row : cotetrad)
    if (static_cast<int>(row.size()) != n)
      throw GeometryError("cotetrad must be n x n");
  if (chart.domain.dim() != static_cast<std::size_t>(n))
    throw GeometryError("domain dimension does not match chart");

  auto geo = std::make_shared<Geometry>();
  geo->chart = chart;
  geo->sig = sig;
  geo->q = cotetrad;
  geo->det_q = matrix_det(cotetrad);

  // singularity scan on the sampling domain
  for (std::size_t k = 0; k < 16; ++k) {
    auto pt = chart.domain.sample(k);
    double d;
    try {
      d = geo->det_q.eval(pt);
    } catch (const EvalError& e) {
      throw GeometryError(std::string("cotetrad not evaluable on domain: ") +
                          e.what());
    }
    if (std::fabs(d) < 1e-12)
      throw GeometryError("singular cotetrad: det q vanishes on the domain");
  }

  geo->qinv = matrix_inverse(cotetrad, geo->det_q);
  geo->sqrt_abs_det_g = Expr::abs(geo->det_q);

  geo->g.assign(n, std::vector<Expr>(n));
  geo->ginv.assign(n, std::vector<Expr>(n));
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      Expr lower, upper;
      for (int a = 0; a < n; ++a) {
        lower = lower + Expr::integer(sig.eta(a)) * geo->q[a][mu] * geo->q[a][nu];
        upper = upper +
                Expr::integer(sig.eta(a)) * geo->qinv[mu][a] * geo->qinv[nu][a];
      }
      geo->g[mu][nu] = lower;
      geo->ginv[mu][nu] = upper;
    }

  // structure coefficients from the frame commutators:
  // [e_b, e_c] = (e_b q^mu_c - e_c q^mu_b) d_mu, c^a_{bc} = q^a_mu [...]^mu
  geo->c.assign(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (int b = 0; b < n; ++b)
    for (int cc = b + 1; cc < n; ++cc) {
      std::vector<Expr> comm(n);
      for (int mu = 0; mu < n; ++mu) {
        Expr eb, ec;
        for (int nu = 0; nu < n; ++nu) {
          eb = eb + geo->qinv[nu][b] * geo->qinv[mu][cc].diff(chart.coords[nu]);
          ec = ec + geo->qinv[nu][cc] * geo->qinv[mu][b].diff(chart.coords[nu]);
        }
        comm[mu] = eb - ec;
      }
      for (int a = 0; a < n; ++a) {
        Expr cabc;
        for (int mu = 0; mu < n; ++mu) cabc = cabc + geo->q[a][mu] * comm[mu];
        geo->c[a][b][cc] = cabc;
        geo->c[a][cc][b] = -cabc;
      }
    }

  return geo;
}

}  // namespace geocalc
