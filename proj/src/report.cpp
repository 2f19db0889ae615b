#include "twostep/report.hpp"

#include <cmath>

#include "twostep/errors.hpp"

namespace twostep {

CheckEntry CheckEntry::make(std::string name, double residual, double tolerance, std::string oracle) {
  CheckEntry e;
  e.name = std::move(name);
  e.max_residual = residual;
  e.tolerance = tolerance;
  e.pass = std::isfinite(residual) && residual <= tolerance;
  e.oracle = std::move(oracle);
  return e;
}

bool VerificationReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const CheckEntry* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

double VerificationReport::residual(const std::string& name) const {
  const CheckEntry* e = find(name);
  if (e == nullptr) throw Error(ErrorKind::BadInput, "report has no check named " + name);
  return e->max_residual;
}

nlohmann::ordered_json to_json(const CheckEntry& entry) {
  nlohmann::ordered_json j;
  j["name"] = entry.name;
  j["max_residual"] = entry.max_residual;
  j["tolerance"] = entry.tolerance;
  j["pass"] = entry.pass;
  j["oracle"] = entry.oracle;
  return j;
}

nlohmann::ordered_json to_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["space"] = report.space;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  j["checks"] = std::move(checks);
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["assumed_connected"] = report.assumed_connected;
  j["pass"] = report.all_pass();
  j["config"] = report.config;
  return j;
}

}  // namespace twostep
