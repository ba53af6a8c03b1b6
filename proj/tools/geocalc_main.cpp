#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "geocalc/specfile.hpp"

namespace {

int run_command(const std::string& spec_path, const std::string& builtin,
                const std::vector<std::string>& only_checks, double tol_rel,
                std::size_t samples, const std::string& json_path, bool quiet) {
  using namespace geocalc;
  Tolerance tol;
  tol.rel = tol_rel;
  tol.samples = samples;

  Report rep;
  try {
    if (!builtin.empty()) {
      if (!is_builtin(builtin)) {
        std::cerr << "spec error: unknown builtin '" << builtin
                  << "' (available:";
        for (const auto& n : builtin_names()) std::cerr << " " << n;
        std::cerr << ")\n";
        return 2;
      }
      rep = run_builtin(builtin, tol);
    } else if (!spec_path.empty()) {
      rep = run_spec(parse_spec_file(spec_path), tol);
    } else {
      std::cerr << "spec error: provide a spec file or --builtin <name>\n";
      return 2;
    }
  } catch (const SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "spec error: " << e.what() << " at position " << e.pos << "\n";
    return 2;
  } catch (const GeometryError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 2;
  }

  if (!only_checks.empty()) {
    std::vector<CheckResult> kept;
    for (const auto& c : rep.checks)
      for (const auto& want : only_checks)
        if (c.name.find(want) != std::string::npos) {
          kept.push_back(c);
          break;
        }
    rep.checks = std::move(kept);
  }

  if (!quiet) std::cout << rep.to_text();
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "cannot write report to '" << json_path << "'\n";
      return 2;
    }
    out << rep.to_json();
  }
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "geocalc: exterior/Clifford calculus checks for Riemannian and "
      "Riemann-Cartan structures"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand(
      "run", "run identity checks from a spec file or a builtin scenario");
  std::string spec_path, builtin, json_path;
  std::vector<std::string> only_checks;
  double tol = 1e-9;
  std::size_t samples = 16;
  bool quiet = false;
  run->add_option("spec", spec_path, "manifold spec file (JSON)");
  run->add_option("--builtin", builtin,
                  "builtin scenario (s2-levi-civita, s2-nunes, evans, "
                  "flat-polar, minkowski, euclidean-contorsion, maxwell-flat)");
  run->add_option("--check", only_checks,
                  "only report checks whose name contains this substring")
      ->take_all();
  run->add_option("--tol", tol, "relative tolerance (default 1e-9)");
  run->add_option("--samples", samples, "sample points per check (default 16)");
  run->add_option("--json", json_path, "also write a machine-readable report");
  run->add_flag("--quiet", quiet, "suppress the human-readable report");

  auto* list = app.add_subcommand("list", "list builtin scenarios and checks");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    std::cout << "builtin scenarios:\n";
    for (const auto& n : geocalc::builtin_names()) std::cout << "  " << n << "\n";
    std::cout << "spec-file checks:\n";
    for (const auto& n : geocalc::known_check_names())
      std::cout << "  " << n << "\n";
    return 0;
  }
  return run_command(spec_path, builtin, only_checks, tol, samples, json_path,
                     quiet);
}
