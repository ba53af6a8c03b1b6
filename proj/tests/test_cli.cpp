#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geocalc/specfile.hpp"

using namespace geocalc;

namespace {

const char* kSphereSpec = R"json({
  "schema": "geocalc-manifold-spec/1",
  "name": "unit-sphere",
  "dimension": 2,
  "signature": [2, 0],
  "coordinates": ["t", "p"],
  "domain": {"t": [0.2, 2.9], "p": [0.2, 6.0]},
  "cotetrad": [["1", "0"], ["0", "sin(t)"]],
  "connection": "levi-civita",
  "checks": ["geometry", "connection", "bianchi", "du6", "discrepancies"]
})json";

const char* kNunesSpec = R"json({
  "schema": "geocalc-manifold-spec/1",
  "name": "nunes",
  "dimension": 2,
  "signature": {"p": 2, "q": 0},
  "coordinates": ["t", "p"],
  "domain": {"t": [0.2, 2.9], "p": [0.2, 6.0]},
  "cotetrad": [["1", "0"], ["0", "sin(t)"]],
  "connection": {"omega": [[["0","0"],["0","0"]], [["0","0"],["0","0"]]]}
})json";

}  // namespace

TEST_CASE("spec parsing accepts the documented format") {
  auto spec = parse_spec_text(kSphereSpec);
  CHECK(spec.name == "unit-sphere");
  CHECK(spec.dimension == 2);
  CHECK(spec.sig.p == 2);
  CHECK(spec.levi_civita_connection);
  CHECK(spec.checks.size() == 5);
}

TEST_CASE("schema violations carry messages") {
  CHECK_THROWS_AS(parse_spec_text("{ not json"), SpecError);
  CHECK_THROWS_AS(parse_spec_text("{\"schema\": \"other/9\"}"), SpecError);
  // missing cotetrad
  CHECK_THROWS_AS(parse_spec_text(R"json({
    "schema": "geocalc-manifold-spec/1", "name": "x", "dimension": 2,
    "signature": [2,0], "coordinates": ["a","b"],
    "domain": {"a": [0,1], "b": [0,1]}, "connection": "levi-civita"
  })json"),
                  SpecError);
  // duplicate coordinates
  CHECK_THROWS_AS(parse_spec_text(R"json({
    "schema": "geocalc-manifold-spec/1", "name": "x", "dimension": 2,
    "signature": [2,0], "coordinates": ["a","a"],
    "domain": {"a": [0,1]},
    "cotetrad": [["1","0"],["0","1"]], "connection": "levi-civita"
  })json"),
                  SpecError);
  // unknown check name
  CHECK_THROWS_AS(parse_spec_text(R"json({
    "schema": "geocalc-manifold-spec/1", "name": "x", "dimension": 2,
    "signature": [2,0], "coordinates": ["a","b"],
    "domain": {"a": [0.1,1], "b": [0.1,1]},
    "cotetrad": [["1","0"],["0","1"]], "connection": "levi-civita",
    "checks": ["everything"]
  })json"),
                  SpecError);
}

TEST_CASE("expression grammar errors in a spec surface as spec errors") {
  auto spec = parse_spec_text(kSphereSpec);
  spec.cotetrad[1][1] = "sin(t";
  CHECK_THROWS_AS(run_spec(spec), SpecError);
  spec.cotetrad[1][1] = "sinh(q)";
  CHECK_THROWS_AS(run_spec(spec), SpecError);
}

TEST_CASE("singular cotetrad in a spec is a spec error") {
  auto spec = parse_spec_text(kSphereSpec);
  spec.cotetrad = {{"t - t", "0"}, {"0", "1"}};
  CHECK_THROWS_AS(run_spec(spec), SpecError);
}

TEST_CASE("running a spec produces the requested checks") {
  auto rep = run_spec(parse_spec_text(kSphereSpec));
  CHECK(rep.passed());
  CHECK(rep.find("geometry-inverses") != nullptr);
  CHECK(rep.find("du6-two-route") != nullptr);
  CHECK(rep.find("discrepancy-curvature-normalization") != nullptr);
  CHECK(rep.find("cotetrad-wave-equation") == nullptr);  // not requested
  // default battery adds the wave check for Levi-Civita specs
  auto spec = parse_spec_text(kSphereSpec);
  spec.checks.clear();
  auto rep2 = run_spec(spec);
  CHECK(rep2.find("cotetrad-wave-equation") != nullptr);
}

TEST_CASE("omega-coefficient connection specs work") {
  auto rep = run_spec(parse_spec_text(kNunesSpec));
  CHECK(rep.passed());
  CHECK(rep.find("connection-metric-compatibility")->status ==
        CheckStatus::Pass);
}

TEST_CASE("reports are byte-stable and machine readable") {
  auto r1 = run_spec(parse_spec_text(kSphereSpec));
  auto r2 = run_spec(parse_spec_text(kSphereSpec));
  CHECK(r1.to_json() == r2.to_json());
  CHECK(r1.to_text() == r2.to_text());
  auto j = r1.to_json();
  CHECK(j.find("\"tool\": \"geocalc\"") != std::string::npos);
  CHECK(j.find("\"subject\": \"unit-sphere\"") != std::string::npos);
  CHECK(j.find("\"status\": \"pass\"") != std::string::npos);
  // checks are ordered by name
  auto first = j.find("\"name\": \"bianchi-dual-first\"");
  auto later = j.find("\"name\": \"geometry-inverses\"");
  CHECK(first != std::string::npos);
  CHECK(later != std::string::npos);
  CHECK(first < later);
}
