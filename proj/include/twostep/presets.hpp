#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twostep/homogeneous_space.hpp"

namespace twostep {

struct PresetInfo {
  std::string name;
  std::string grammar;
  std::string example;
  std::string summary;
};

const std::vector<PresetInfo>& preset_registry();

// "name:key=val,key=val"; list values are dash-separated ("partition=1-1-1").
struct PresetSpec {
  std::string name;
  std::map<std::string, std::string> params;
};

PresetSpec parse_preset(const std::string& text);

bool is_preset_name(const std::string& name);

// Validates every parameter (including lambda) before any construction work.
// A lambda override replaces the preset's own lambda.
HomogeneousSpace make_preset(const std::string& text, std::optional<double> lambda_override = std::nullopt);

}  // namespace twostep
