#include "twostep/presets.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "twostep/catalog.hpp"
#include "twostep/errors.hpp"

namespace twostep {

const std::vector<PresetInfo>& preset_registry() {
  static const std::vector<PresetInfo> registry{
      {"hopf", "hopf:n=<int>=1>,lambda=<real>0>", "hopf:n=1,lambda=2",
       "U(n+1)/U(n) = S^{2n+1}, fibre direction scaled by lambda"},
      {"su2-berger", "su2-berger:lambda=<real>0>", "su2-berger:lambda=4",
       "SU(2) with the Berger metric, e3 direction scaled by lambda"},
      {"flag-su", "flag-su:partition=<n1-n2-...>,i0=<boundary root>,lambda=<real>0>",
       "flag-su:partition=1-1-1,i0=1,lambda=2", "SU(n)/S(U(n1)x...x U(nk)) with the parity split at i0"},
      {"wallach-su3", "wallach-su3:l=<1|2|3>,lambda=<real>0>", "wallach-su3:l=3,lambda=2",
       "SU(3)/T^2 with m2 = n_l"},
      {"ksym-su", "ksym-su:n=<int>=2>,exp=<a1-...-an>,k=<even int>,lambda=<real>0>",
       "ksym-su:n=3,exp=0-1-2,k=4,lambda=2", "SU(n)/K from the grading of Ad(diag(zeta^a_p)), zeta^k = 1"},
      {"u2-center", "u2-center:lambda=<real>0>", "u2-center:lambda=2",
       "U(2) with its centre scaled by lambda; [m1, m2] = 0"},
  };
  return registry;
}

bool is_preset_name(const std::string& name) {
  const auto& r = preset_registry();
  return std::any_of(r.begin(), r.end(), [&](const PresetInfo& p) { return p.name == name; });
}

PresetSpec parse_preset(const std::string& text) {
  PresetSpec spec;
  const auto colon = text.find(':');
  spec.name = text.substr(0, colon);
  if (!is_preset_name(spec.name)) throw Error(ErrorKind::UnknownPreset, "unknown preset '" + spec.name + "'");
  if (colon == std::string::npos) return spec;
  std::string rest = text.substr(colon + 1);
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = std::min(rest.find(',', pos), rest.size());
    const std::string item = rest.substr(pos, comma - pos);
    if (!item.empty()) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw Error(ErrorKind::BadInput, "preset parameter '" + item + "' is not key=value");
      }
      const std::string key = item.substr(0, eq);
      if (!spec.params.emplace(key, item.substr(eq + 1)).second) {
        throw Error(ErrorKind::BadInput, "preset parameter '" + key + "' given twice");
      }
    }
    pos = comma + 1;
  }
  return spec;
}

namespace {

class Params {
 public:
  explicit Params(const PresetSpec& spec) : spec_(spec) {}

  int integer(const std::string& key, std::optional<int> fallback = std::nullopt) {
    const auto text = raw(key);
    if (!text) {
      if (fallback) return *fallback;
      throw Error(ErrorKind::BadInput, spec_.name + ": missing parameter '" + key + "'");
    }
    return parse_int(key, *text);
  }

  std::vector<int> integers(const std::string& key) {
    const auto text = raw(key);
    if (!text) throw Error(ErrorKind::BadInput, spec_.name + ": missing parameter '" + key + "'");
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text->size()) {
      const auto dash = std::min(text->find('-', pos), text->size());
      out.push_back(parse_int(key, text->substr(pos, dash - pos)));
      pos = dash + 1;
    }
    return out;
  }

  double lambda(std::optional<double> override_value) {
    const auto text = raw("lambda");
    double value = 2.0;
    if (text) {
      std::size_t used = 0;
      try {
        value = std::stod(*text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != text->size()) {
        throw Error(ErrorKind::BadInput, spec_.name + ": lambda '" + *text + "' is not a number");
      }
    }
    if (override_value) value = *override_value;
    if (!(std::isfinite(value) && value > 0.0)) {
      throw Error(ErrorKind::BadInput, spec_.name + ": lambda must be a positive real");
    }
    return value;
  }

  void finish() const {
    for (const auto& [key, value] : spec_.params) {
      if (!used_.count(key)) throw Error(ErrorKind::BadInput, spec_.name + ": unknown parameter '" + key + "'");
    }
  }

 private:
  const PresetSpec& spec_;
  std::set<std::string> used_;

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    const auto it = spec_.params.find(key);
    if (it == spec_.params.end()) return std::nullopt;
    return it->second;
  }

  int parse_int(const std::string& key, const std::string& text) const {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw Error(ErrorKind::BadInput, spec_.name + ": '" + key + "' expects integers, got '" + text + "'");
    }
    return v;
  }
};

}  // namespace

HomogeneousSpace make_preset(const std::string& text, std::optional<double> lambda_override) {
  const PresetSpec spec = parse_preset(text);
  Params p(spec);
  const double lambda = p.lambda(lambda_override);
  if (spec.name == "hopf") {
    const int n = p.integer("n", 1);
    p.finish();
    return hopf_sphere(n, lambda);
  }
  if (spec.name == "su2-berger") {
    p.finish();
    return su2_berger(lambda);
  }
  if (spec.name == "u2-center") {
    p.finish();
    return u2_center(lambda);
  }
  if (spec.name == "flag-su") {
    const auto partition = p.integers("partition");
    const int i0 = p.integer("i0", 1);
    p.finish();
    for (int b : partition) {
      if (b < 1) throw Error(ErrorKind::BadInput, "flag-su: block sizes must be positive");
    }
    return flag_su(partition, i0, lambda);
  }
  if (spec.name == "wallach-su3") {
    const int l = p.integer("l", 3);
    p.finish();
    return wallach_su3(l, lambda);
  }
  const int n = p.integer("n");
  const auto exps = p.integers("exp");
  const int k = p.integer("k");
  p.finish();
  return k_symmetric_su(n, exps, k, lambda);
}

}  // namespace twostep
