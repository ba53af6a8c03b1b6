#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geocalc/specfile.hpp"

namespace py = pybind11;
using namespace geocalc;

namespace {

SymbolTable table_for(const std::vector<std::string>& coords) {
  return SymbolTable{coords, {}};
}

Domain make_domain(const std::vector<std::string>& coords,
                   const std::vector<std::pair<double, double>>& box) {
  std::vector<std::array<double, 2>> b;
  for (const auto& [lo, hi] : box) b.push_back({lo, hi});
  return Domain(coords, b);
}

Expr3 parse_cube(const GeometryPtr& g,
                 const std::vector<std::vector<std::vector<std::string>>>& c) {
  const int n = g->n();
  SymbolTable tab = table_for(g->chart.coords);
  Expr3 out(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[a][i][j] = parse_expr(c[a][i][j], tab);
  return out;
}

struct PyGeometry {
  GeometryPtr geo;

  PyGeometry(const std::vector<std::string>& coords,
             const std::vector<std::pair<double, double>>& box, int p, int q,
             const std::vector<std::vector<std::string>>& cotetrad,
             int orientation, int frame_label_base) {
    Chart chart;
    chart.coords = coords;
    chart.domain = make_domain(coords, box);
    chart.orientation = orientation;
    chart.frame_label_base = frame_label_base;
    SymbolTable tab = table_for(coords);
    ExprMatrix q_mat(coords.size(), std::vector<Expr>(coords.size()));
    for (std::size_t a = 0; a < coords.size(); ++a)
      for (std::size_t mu = 0; mu < coords.size(); ++mu)
        q_mat[a][mu] = parse_expr(cotetrad[a][mu], tab);
    geo = build_geometry(chart, Signature{p, q}, q_mat);
  }

  int dimension() const { return geo->n(); }
  std::string metric(int mu, int nu) const { return geo->g[mu][nu].str(); }
  std::string inverse_metric(int mu, int nu) const {
    return geo->ginv[mu][nu].str();
  }
  std::string structure_coefficient(int a, int b, int c) const {
    return geo->c[a][b][c].str();
  }
  std::string volume_element() const {
    return geo->tau().str(geo->chart.frame_label_base);
  }
  std::string volume_element_coordinates() const {
    return geo->coordinate_str(geo->tau());
  }
};

struct PyConnection {
  ConnectionPtr conn;

  int label_base() const { return conn->geo->chart.frame_label_base; }
  std::string omega(int a, int c, int b) const {
    return conn->omega[a][c][b].str();
  }
  std::string omega_form(int a, int b) const {
    return conn->omega_form(a, b).str(label_base());
  }
  std::string torsion_form(int a) const {
    return conn->torsion_form(a).str(label_base());
  }
  std::string curvature_form(int a, int b) const {
    return conn->curvature_form(a, b).str(label_base());
  }
  std::string torsion_component(int a, int b, int c) const {
    return conn->torsion_components()[a][b][c].str();
  }
  std::string curvature_component(int b, int a, int c, int d) const {
    return conn->curvature_components()[b][a][c][d].str();
  }
  double metric_compat_residual() const {
    return conn->metric_compat_residual();
  }
  std::string ricci_scalar() const { return ricci_data(conn).scalar.str(); }

  py::dict bianchi() const {
    auto rep = bianchi_reports(conn);
    py::dict d;
    d["first_frame"] = rep.first_frame;
    d["second_frame"] = rep.second_frame;
    d["first_coordinate"] = rep.first_coord;
    d["second_coordinate"] = rep.second_coord;
    d["dual_first"] = rep.dual_first;
    return d;
  }

  double dual_torsion_agreement() const { return dual_torsion_D(conn).agreement; }

  py::dict evans() const {
    auto rep = evans_check(conn);
    py::dict d;
    d["equation_holds"] = rep.equation_holds;
    d["du6_agreement"] = rep.du6_agreement;
    py::list lhs, rhs;
    for (int a = 0; a < conn->n(); ++a) {
      lhs.append(rep.lhs[a].str(label_base()));
      rhs.append(rep.rhs[a].str(label_base()));
    }
    d["lhs"] = lhs;
    d["rhs"] = rhs;
    return d;
  }
};

PyConnection py_levi_civita(const PyGeometry& g) {
  return PyConnection{levi_civita(g.geo)};
}
PyConnection py_from_coefficients(
    const PyGeometry& g,
    const std::vector<std::vector<std::vector<std::string>>>& omega) {
  return PyConnection{from_coefficients(g.geo, parse_cube(g.geo, omega))};
}
PyConnection py_from_contorsion(
    const PyGeometry& g,
    const std::vector<std::vector<std::vector<std::string>>>& torsion) {
  return PyConnection{from_contorsion(g.geo, parse_cube(g.geo, torsion))};
}

}  // namespace

PYBIND11_MODULE(_geocalc, m) {
  m.doc() =
      "exterior/Clifford calculus on Riemannian and Riemann-Cartan "
      "structures: connections, torsion, curvature, Hodge/Dirac operators "
      "and their identity checks";

  py::register_exception<ParseError>(m, "ExprParseError");
  py::register_exception<EvalError>(m, "EvalError");
  py::register_exception<GeometryError>(m, "GeometryError");
  py::register_exception<ConnectionError>(m, "ConnectionError");
  py::register_exception<SpecError>(m, "SpecFileError");

  m.def(
      "diff",
      [](const std::string& text, const std::string& coord,
         const std::vector<std::string>& coords) {
        return parse_expr(text, table_for(coords)).diff(coord).str();
      },
      py::arg("text"), py::arg("coord"), py::arg("coords"),
      "exact derivative of an expression, returned as text");

  m.def(
      "eval_expr",
      [](const std::string& text, const std::map<std::string, double>& point,
         const std::vector<std::string>& coords) {
        return parse_expr(text, table_for(coords)).eval(point);
      },
      py::arg("text"), py::arg("point"), py::arg("coords"));

  m.def(
      "num_equal",
      [](const std::string& a, const std::string& b,
         const std::vector<std::string>& coords,
         const std::vector<std::pair<double, double>>& box) {
        SymbolTable tab = table_for(coords);
        return num_equal(parse_expr(a, tab), parse_expr(b, tab),
                         make_domain(coords, box));
      },
      py::arg("a"), py::arg("b"), py::arg("coords"), py::arg("box"),
      "numeric equality on 16 low-discrepancy sample points, 1e-9 relative");

  py::class_<PyGeometry>(m, "Geometry")
      .def(py::init<const std::vector<std::string>&,
                    const std::vector<std::pair<double, double>>&, int, int,
                    const std::vector<std::vector<std::string>>&, int, int>(),
           py::arg("coords"), py::arg("box"), py::arg("p"), py::arg("q"),
           py::arg("cotetrad"), py::arg("orientation") = 1,
           py::arg("frame_label_base") = 1)
      .def_property_readonly("dimension", &PyGeometry::dimension)
      .def("metric", &PyGeometry::metric)
      .def("inverse_metric", &PyGeometry::inverse_metric)
      .def("structure_coefficient", &PyGeometry::structure_coefficient)
      .def("volume_element", &PyGeometry::volume_element)
      .def("volume_element_coordinates",
           &PyGeometry::volume_element_coordinates);

  py::class_<PyConnection>(m, "Connection")
      .def("omega", &PyConnection::omega)
      .def("omega_form", &PyConnection::omega_form)
      .def("torsion_form", &PyConnection::torsion_form)
      .def("curvature_form", &PyConnection::curvature_form)
      .def("torsion_component", &PyConnection::torsion_component)
      .def("curvature_component", &PyConnection::curvature_component)
      .def("metric_compat_residual", &PyConnection::metric_compat_residual)
      .def("ricci_scalar", &PyConnection::ricci_scalar)
      .def("bianchi", &PyConnection::bianchi)
      .def("dual_torsion_agreement", &PyConnection::dual_torsion_agreement)
      .def("evans", &PyConnection::evans);

  m.def("levi_civita", &py_levi_civita, py::arg("geometry"));
  m.def("from_coefficients", &py_from_coefficients, py::arg("geometry"),
        py::arg("omega"));
  m.def("from_contorsion", &py_from_contorsion, py::arg("geometry"),
        py::arg("torsion"));

  m.def("builtin_names", &builtin_names);
  m.def(
      "run_builtin_json",
      [](const std::string& name) {
        Report rep = run_builtin(name);
        return py::make_tuple(rep.to_json(), rep.passed());
      },
      py::arg("name"));
  m.def(
      "run_spec_file_json",
      [](const std::string& path) {
        Report rep = run_spec(parse_spec_file(path));
        return py::make_tuple(rep.to_json(), rep.passed());
      },
      py::arg("path"));
}
