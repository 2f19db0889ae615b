#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace twostep {

struct CheckEntry {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string oracle;  // which independent route produced the residual

  static CheckEntry make(std::string name, double residual, double tolerance, std::string oracle);
};

struct VerificationReport {
  std::string space;
  std::vector<CheckEntry> checks;
  std::uint64_t seed = 0;
  int trials = 0;
  bool assumed_connected = true;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();

  bool all_pass() const;
  const CheckEntry* find(const std::string& name) const;
  double residual(const std::string& name) const;
};

nlohmann::ordered_json to_json(const CheckEntry& entry);
nlohmann::ordered_json to_json(const VerificationReport& report);

}  // namespace twostep
