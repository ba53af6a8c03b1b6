#include "geocalc/specfile.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace geocalc {

using nlohmann::json;

namespace {

constexpr const char* kSchemaId = "geocalc-manifold-spec/1";

[[noreturn]] void bad(const std::string& msg) { throw SpecError(msg); }

std::vector<std::vector<std::vector<std::string>>> cube_of_strings(
    const json& j, int n, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    bad(what + " must be an n x n x n array of expression strings");
  std::vector<std::vector<std::vector<std::string>>> out;
  for (const auto& plane : j) {
    if (!plane.is_array() || static_cast<int>(plane.size()) != n)
      bad(what + " must be an n x n x n array of expression strings");
    std::vector<std::vector<std::string>> p;
    for (const auto& row : plane) {
      if (!row.is_array() || static_cast<int>(row.size()) != n)
        bad(what + " must be an n x n x n array of expression strings");
      std::vector<std::string> r;
      for (const auto& cell : row) {
        if (!cell.is_string()) bad(what + " entries must be strings");
        r.push_back(cell.get<std::string>());
      }
      p.push_back(std::move(r));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_check_names() {
  static const std::vector<std::string> names = {
      "geometry", "connection", "bianchi",    "tetrad",
      "evans",    "du6",        "wave",       "d-delta-rc",
      "discrepancies"};
  return names;
}

ManifoldSpec parse_spec_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("spec must be a JSON object");
  if (!j.contains("schema") || j["schema"] != kSchemaId)
    bad(std::string("missing or unsupported schema field (expected \"") +
        kSchemaId + "\")");

  ManifoldSpec spec;
  spec.name = j.value("name", std::string("unnamed"));

  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    bad("missing integer field 'dimension'");
  spec.dimension = j["dimension"].get<int>();
  if (spec.dimension < 1 || spec.dimension > 8)
    bad("dimension must be between 1 and 8");

  if (!j.contains("signature")) bad("missing field 'signature'");
  const auto& sg = j["signature"];
  if (sg.is_array() && sg.size() == 2 && sg[0].is_number_integer() &&
      sg[1].is_number_integer()) {
    spec.sig = Signature{sg[0].get<int>(), sg[1].get<int>()};
  } else if (sg.is_object() && sg.contains("p") && sg.contains("q")) {
    spec.sig = Signature{sg["p"].get<int>(), sg["q"].get<int>()};
  } else {
    bad("signature must be [p,q] or {\"p\":..,\"q\":..}");
  }
  if (spec.sig.n() != spec.dimension)
    bad("signature p+q must equal dimension");

  if (!j.contains("coordinates") || !j["coordinates"].is_array() ||
      static_cast<int>(j["coordinates"].size()) != spec.dimension)
    bad("'coordinates' must list exactly 'dimension' names");
  for (const auto& c : j["coordinates"]) {
    if (!c.is_string()) bad("coordinate names must be strings");
    spec.coordinates.push_back(c.get<std::string>());
  }
  for (std::size_t i = 0; i < spec.coordinates.size(); ++i)
    for (std::size_t k = i + 1; k < spec.coordinates.size(); ++k)
      if (spec.coordinates[i] == spec.coordinates[k])
        bad("coordinate names must be distinct");

  if (!j.contains("domain") || !j["domain"].is_object())
    bad("missing object field 'domain'");
  std::vector<std::array<double, 2>> box;
  for (const auto& name : spec.coordinates) {
    if (!j["domain"].contains(name))
      bad("domain missing interval for coordinate '" + name + "'");
    const auto& iv = j["domain"][name];
    if (!iv.is_array() || iv.size() != 2 || !iv[0].is_number() ||
        !iv[1].is_number())
      bad("domain intervals must be [lo, hi]");
    box.push_back({iv[0].get<double>(), iv[1].get<double>()});
    if (!(box.back()[0] < box.back()[1]))
      bad("domain interval for '" + name + "' is empty");
  }
  spec.domain = Domain(spec.coordinates, box);

  spec.orientation = j.value("orientation", 1);
  if (spec.orientation != 1 && spec.orientation != -1)
    bad("orientation must be +1 or -1");
  spec.frame_label_base = j.value("frame_label_base",
                                  (spec.sig.p == 1 && spec.sig.q == 3) ? 0 : 1);

  if (!j.contains("cotetrad") || !j["cotetrad"].is_array() ||
      static_cast<int>(j["cotetrad"].size()) != spec.dimension)
    bad("'cotetrad' must be an n x n array of expression strings");
  for (const auto& row : j["cotetrad"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != spec.dimension)
      bad("'cotetrad' must be an n x n array of expression strings");
    std::vector<std::string> r;
    for (const auto& cell : row) {
      if (!cell.is_string()) bad("cotetrad entries must be strings");
      r.push_back(cell.get<std::string>());
    }
    spec.cotetrad.push_back(std::move(r));
  }

  if (!j.contains("connection")) bad("missing field 'connection'");
  const auto& cj = j["connection"];
  if (cj.is_string()) {
    if (cj != "levi-civita")
      bad("string connection must be \"levi-civita\"");
    spec.levi_civita_connection = true;
  } else if (cj.is_object() && cj.contains("omega")) {
    spec.levi_civita_connection = false;
    spec.omega = cube_of_strings(cj["omega"], spec.dimension, "connection.omega");
  } else if (cj.is_object() && cj.contains("torsion")) {
    spec.levi_civita_connection = false;
    spec.torsion =
        cube_of_strings(cj["torsion"], spec.dimension, "connection.torsion");
  } else {
    bad("connection must be \"levi-civita\", {\"omega\": ...} or {\"torsion\": ...}");
  }

  if (j.contains("checks")) {
    if (!j["checks"].is_array()) bad("'checks' must be an array of names");
    for (const auto& c : j["checks"]) {
      if (!c.is_string()) bad("check names must be strings");
      std::string name = c.get<std::string>();
      const auto& known = known_check_names();
      if (std::find(known.begin(), known.end(), name) == known.end())
        bad("unknown check '" + name + "'");
      spec.checks.push_back(name);
    }
  }
  return spec;
}

ManifoldSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read spec file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

Report run_spec(const ManifoldSpec& spec, const Tolerance& tol) {
  SymbolTable tab{spec.coordinates, {}};
  auto parse = [&](const std::string& text, const std::string& what) {
    try {
      return parse_expr(text, tab);
    } catch (const ParseError& e) {
      bad(what + ": " + e.what() + " at position " + std::to_string(e.pos) +
          " in \"" + text + "\"");
    }
  };

  Chart chart;
  chart.coords = spec.coordinates;
  chart.domain = spec.domain;
  chart.orientation = spec.orientation;
  chart.frame_label_base = spec.frame_label_base;

  ExprMatrix q(spec.dimension, std::vector<Expr>(spec.dimension));
  for (int a = 0; a < spec.dimension; ++a)
    for (int mu = 0; mu < spec.dimension; ++mu)
      q[a][mu] = parse(spec.cotetrad[a][mu], "cotetrad entry");

  GeometryPtr geo;
  try {
    geo = build_geometry(chart, spec.sig, q);
  } catch (const GeometryError& e) {
    bad(e.what());
  }

  ConnectionPtr conn;
  if (spec.levi_civita_connection) {
    conn = levi_civita(geo);
  } else if (spec.omega) {
    Expr3 om(spec.dimension,
             ExprMatrix(spec.dimension, std::vector<Expr>(spec.dimension)));
    for (int a = 0; a < spec.dimension; ++a)
      for (int c = 0; c < spec.dimension; ++c)
        for (int b = 0; b < spec.dimension; ++b)
          om[a][c][b] = parse((*spec.omega)[a][c][b], "omega entry");
    conn = from_coefficients(geo, om);
  } else {
    Expr3 t(spec.dimension,
            ExprMatrix(spec.dimension, std::vector<Expr>(spec.dimension)));
    for (int a = 0; a < spec.dimension; ++a)
      for (int c = 0; c < spec.dimension; ++c)
        for (int b = 0; b < spec.dimension; ++b)
          t[a][c][b] = parse((*spec.torsion)[a][c][b], "torsion entry");
    try {
      conn = from_contorsion(geo, t);
    } catch (const ConnectionError& e) {
      bad(e.what());
    }
  }

  std::vector<std::string> checks = spec.checks;
  if (checks.empty()) {
    checks = {"geometry", "connection", "bianchi", "tetrad", "du6",
              "d-delta-rc", "discrepancies"};
    if (spec.levi_civita_connection) checks.push_back("wave");
  }

  Report rep;
  rep.subject = spec.name;
  for (const auto& name : checks) {
    if (name == "geometry") append_geometry_checks(rep, geo, tol);
    else if (name == "connection") append_connection_checks(rep, conn, tol);
    else if (name == "bianchi") append_bianchi_checks(rep, conn, tol);
    else if (name == "tetrad") append_tetrad_checks(rep, conn, tol);
    else if (name == "evans") append_evans_checks(rep, conn, tol);
    else if (name == "du6") {
      if (rep.find("du6-two-route")) continue;
      auto dual = dual_torsion_D(conn, tol);
      CheckResult r;
      r.name = "du6-two-route";
      r.max_residual = dual.agreement;
      r.status = dual.agreement <= tol.rel ? CheckStatus::Pass
                                           : CheckStatus::Fail;
      rep.add(r);
    } else if (name == "wave") {
      if (conn->kind == ConnKind::LeviCivita) append_wave_checks(rep, conn, tol);
    } else if (name == "d-delta-rc") {
      append_d_delta_rc_checks(rep, conn, tol);
    } else if (name == "discrepancies") {
      append_discrepancy_records(rep);
    }
  }
  rep.sort_by_name();
  return rep;
}

}  // namespace geocalc
