#include "geocalc/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace geocalc {

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::DiscrepancyNoted: return "discrepancy-noted";
  }
  return "?";
}

void Report::sort_by_name() {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckResult& a, const CheckResult& b) {
                     return a.name < b.name;
                   });
}

bool Report::passed() const {
  for (const auto& c : checks)
    if (c.status == CheckStatus::Fail) return false;
  return true;
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {
std::string fmt_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", r);
  return buf;
}
}  // namespace

std::string Report::to_text() const {
  std::ostringstream os;
  os << "== geocalc " << version << " :: " << subject << " ==\n";
  for (const auto& c : checks) {
    os << "[" << status_name(c.status) << "] " << c.name
       << "  (max residual " << fmt_residual(c.max_residual) << ")\n";
    if (!c.note.empty()) os << "    " << c.note << "\n";
    for (const auto& [k, v] : c.artifacts) os << "    " << k << " = " << v << "\n";
  }
  std::size_t fails = 0, notes = 0;
  for (const auto& c : checks) {
    fails += c.status == CheckStatus::Fail;
    notes += c.status == CheckStatus::DiscrepancyNoted;
  }
  os << checks.size() << " checks: " << (checks.size() - fails - notes)
     << " pass, " << fails << " fail, " << notes << " discrepancy-noted\n";
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::ordered_json j;
  j["tool"] = "geocalc";
  j["version"] = version;
  j["subject"] = subject;
  j["status"] = passed() ? "pass" : "fail";
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = status_name(c.status);
    cj["max_residual"] = fmt_residual(c.max_residual);
    cj["note"] = c.note;
    nlohmann::ordered_json art = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.artifacts) art[k] = v;
    cj["artifacts"] = art;
    j["checks"].push_back(cj);
  }
  return j.dump(2) + "\n";
}

}  // namespace geocalc
