#pragma once

#include <optional>
#include <string>

#include "geocalc/report.hpp"
#include "geocalc/scenarios.hpp"

namespace geocalc {

/// Schema violations and unreadable/ill-formed spec files (CLI exit code 2).
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parsed manifold spec file (docs/spec-format.md).  Expressions are kept as
/// strings until the geometry is built so grammar errors carry positions.
struct ManifoldSpec {
  std::string name;
  int dimension = 0;
  Signature sig;
  std::vector<std::string> coordinates;
  Domain domain;
  int orientation = +1;
  int frame_label_base = 1;
  std::vector<std::vector<std::string>> cotetrad;
  // exactly one of: levi_civita, omega, torsion
  bool levi_civita_connection = true;
  std::optional<std::vector<std::vector<std::vector<std::string>>>> omega;
  std::optional<std::vector<std::vector<std::vector<std::string>>>> torsion;
  std::vector<std::string> checks;  // empty = default battery
};

ManifoldSpec parse_spec_file(const std::string& path);
ManifoldSpec parse_spec_text(const std::string& text);

/// Build the geometry/connection and run the requested checks.
Report run_spec(const ManifoldSpec& spec, const Tolerance& tol = {});

const std::vector<std::string>& known_check_names();

}  // namespace geocalc
