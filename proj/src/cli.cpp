#include "twostep/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "twostep/geodesic_ode.hpp"
#include "twostep/presets.hpp"
#include "twostep/spec_io.hpp"
#include "twostep/verify.hpp"

namespace twostep {

int exit_code_for(const Error& error) {
  switch (error.kind()) {
    case ErrorKind::ConditionViolated:
    case ErrorKind::DegenerateSplit:
      return kExitCheckFailed;
    case ErrorKind::StepTooLarge:
    case ErrorKind::OutOfLogWindow:
      return kExitNumerical;
    default:
      return dynamic_cast<const NumericalError*>(&error) ? kExitNumerical : kExitBadInput;
  }
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw Error(ErrorKind::BadInput, "'" + text + "' is not a comma-separated list of reals");
    }
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::BadInput, "empty vector");
  return out;
}

HomogeneousSpace resolve_space(const std::string& text, std::optional<double> lambda_override, double tol_alg) {
  if (text.empty()) throw Error(ErrorKind::BadInput, "no space given");
  if (lambda_override && !(std::isfinite(*lambda_override) && *lambda_override > 0.0)) {
    throw Error(ErrorKind::BadInput, "lambda must be a positive real");
  }
  const std::string head = text.substr(0, text.find(':'));
  if (is_preset_name(head)) return make_preset(text, lambda_override);
  if (!std::filesystem::exists(text)) {
    if (text.find('/') == std::string::npos && text.find(".json") == std::string::npos) {
      throw Error(ErrorKind::UnknownPreset, "unknown preset '" + head + "'");
    }
    throw Error(ErrorKind::BadSpecFile, text + ": no such file");
  }
  HomogeneousSpace space = load_space_file(text, tol_alg);
  if (lambda_override) {
    if (space.s() != 2) throw Error(ErrorKind::BadInput, "--lambda needs a split with two summands");
    space = space.with_lambdas({1.0, *lambda_override});
  }
  return space;
}

namespace {

struct RunConfig {
  std::string space;
  std::optional<double> lambda;
  int trials = 50;
  int samples = 100;
  std::uint64_t seed = 0;
  std::optional<double> tol_alg;
  std::optional<double> tol_ode;
  std::string t_range = "0:6.283185307179586:100";
  std::string xa, xb, v0;
  double t_end = 2.0;
  double step = 1e-3;
  std::string out_path;
  std::string format;
  std::string pair = "1,2";
  bool with_oracle = false;
};

double env_tolerance(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(raw, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != std::string(raw).size()) {
    throw Error(ErrorKind::BadInput, std::string(name) + " is not a number");
  }
  return v;
}

class Runner {
 public:
  Runner(RunConfig cfg, std::ostream& out, std::ostream& err) : cfg_(std::move(cfg)), out_(out), err_(err) {
    tol_alg_ = cfg_.tol_alg.value_or(env_tolerance("TWOSTEP_TOL_ALG", 1e-9));
    tol_ode_ = cfg_.tol_ode.value_or(env_tolerance("TWOSTEP_TOL_ODE", 1e-6));
    if (!(tol_alg_ > 0.0) || !(tol_ode_ > 0.0)) throw Error(ErrorKind::BadInput, "tolerances must be positive");
    if (cfg_.trials < 1) throw Error(ErrorKind::BadInput, "--trials must be at least 1");
    if (cfg_.samples < 1) throw Error(ErrorKind::BadInput, "--samples must be at least 1");
  }

  int catalog() {
    const std::string fmt = format_or("text", {"text", "json"});
    std::ostringstream os;
    if (fmt == "json") {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& p : preset_registry()) {
        j.push_back({{"name", p.name}, {"grammar", p.grammar}, {"example", p.example}, {"summary", p.summary}});
      }
      os << j.dump(2) << "\n";
    } else {
      for (const auto& p : preset_registry()) {
        os << p.name << "\n  grammar: " << p.grammar << "\n  example: " << p.example << "\n  " << p.summary
           << "\n";
      }
    }
    emit(os.str());
    return kExitPass;
  }

  int describe() {
    const std::string fmt = format_or("text", {"text", "json"});
    const HomogeneousSpace sp = space();
    const auto checks = four_checks(sp);
    std::ostringstream os;
    if (fmt == "json") {
      nlohmann::ordered_json j;
      j["space"] = sp.name();
      j["dim_g"] = sp.algebra()->dim();
      j["dim_k"] = sp.k().dim();
      j["dim_m"] = sp.m().dim();
      std::vector<Eigen::Index> dims;
      for (const auto& member : sp.split()) dims.push_back(member.dim());
      j["split"] = dims;
      j["lambdas"] = sp.lambdas();
      j["degenerate"] = sp.degenerate();
      j["checks"] = nlohmann::ordered_json::array();
      for (const auto& c : checks) j["checks"].push_back(to_json(c));
      os << j.dump(2) << "\n";
    } else {
      os << "space: " << sp.name() << "\n";
      os << "form: " << to_string(sp.algebra()->form_kind()) << ", dim g = " << sp.algebra()->dim()
         << ", dim k = " << sp.k().dim() << "\n";
      os << "dim m = " << sp.m().dim() << ", split " << tuple(sp.split(), [](const Subspace& m) {
        return std::to_string(m.dim());
      }) << ", λ = " << tuple(sp.lambdas(), [](double l) { return number(l); }) << "\n";
      if (sp.degenerate()) os << "degenerate split: " << *sp.degeneracy() << "\n";
      os << "m basis (coefficients over the algebra basis; --Xa/--Xb/--v0 use this order):\n";
      for (std::size_t i = 0; i < sp.s(); ++i) {
        const Subspace& member = sp.member(i);
        for (Eigen::Index j = 0; j < member.dim(); ++j) {
          const AlgebraVector v = member.vector(j);
          os << "  m" << i + 1 << "[" << j << "] = " << tuple(std::vector<double>(v.data(), v.data() + v.size()),
                                                            [](double x) { return number(x); })
             << "\n";
        }
      }
      os << "structural checks:\n";
      for (const auto& c : checks) {
        os << "  " << std::left << std::setw(24) << c.name << " residual " << number(c.max_residual) << "  "
           << (c.pass ? "pass" : "FAIL") << "\n";
      }
    }
    emit(os.str());
    return kExitPass;
  }

  int check() {
    format_or("json", {"json"});
    const HomogeneousSpace sp = space();
    VerificationReport rep;
    rep.space = sp.name();
    rep.checks = four_checks(sp);
    if (!sp.degenerate() && sp.s() >= 2) {
      const auto [a, b] = pair(sp);
      rep.checks.push_back(rethreshold(sp.check_bracket_inclusion(a, b)));
    }
    rep.config["space"] = sp.name();
    rep.config["lambdas"] = sp.lambdas();
    rep.config["tol_alg"] = tol_alg_;
    if (sp.degenerate()) rep.config["degeneracy"] = *sp.degeneracy();
    emit(to_json(rep).dump(2) + "\n");
    if (sp.degenerate()) {
      err_ << "degenerate split: " << *sp.degeneracy() << "\n";
      return kExitCheckFailed;
    }
    for (const auto& c : rep.checks) {
      if (!c.pass) err_ << "check failed: " << c.name << " (residual " << number(c.max_residual) << ")\n";
    }
    return rep.all_pass() ? kExitPass : kExitCheckFailed;
  }

  int verify() {
    format_or("json", {"json"});
    const auto sp = std::make_shared<const HomogeneousSpace>(space());
    VerifyOptions opt;
    opt.trials = cfg_.trials;
    opt.t_samples = cfg_.samples;
    opt.seed = cfg_.seed;
    opt.tol.alg = tol_alg_;
    opt.tol.ode = tol_ode_;
    opt.oracle_step = cfg_.step;
    if (!sp->degenerate() && sp->s() >= 2) std::tie(opt.a_index, opt.b_index) = pair(*sp);
    const VerificationReport rep = verify_two_step(sp, opt);
    emit(to_json(rep).dump(2) + "\n");
    for (const auto& c : rep.checks) {
      if (!c.pass) err_ << "check failed: " << c.name << " (residual " << number(c.max_residual) << ")\n";
    }
    return rep.all_pass() ? kExitPass : kExitCheckFailed;
  }

  int trace() {
    format_or("csv", {"csv"});
    const auto sp = std::make_shared<const HomogeneousSpace>(space());
    if (sp->degenerate() || sp->s() < 2) throw Error(ErrorKind::DegenerateSplit, "trace needs two summands");
    const auto [a, b] = pair(*sp);
    const AlgebraVector xa = member_vector(*sp, a, cfg_.xa, "--Xa");
    const AlgebraVector xb = member_vector(*sp, b, cfg_.xb, "--Xb");
    const TwoStepCurve c = TwoStepCurve::make(sp, a, b, xa, xb);
    const std::vector<double> ts = time_grid();

    std::optional<GeodesicTrajectory> oracle;
    if (cfg_.with_oracle) {
      const double t_max = *std::max_element(ts.begin(), ts.end());
      if (t_max > 0.0) oracle = integrate_geodesic(*sp, c.initial_velocity(), t_max, cfg_.step, 0.0, tol_ode_);
    }

    std::ostringstream os;
    os << std::setprecision(17) << "t";
    for (Eigen::Index j = 0; j < sp->m().dim(); ++j) os << ",D" << j + 1;
    os << ",coset_error\n";
    for (double t : ts) {
      const Eigen::VectorXd d = sp->split_coords(geodesic_defect(c, t));
      os << t;
      for (Eigen::Index j = 0; j < d.size(); ++j) os << "," << d(j);
      os << ",";
      if (oracle) {
        const auto it = std::min_element(oracle->samples.begin(), oracle->samples.end(),
                                         [t](const auto& p, const auto& q) { return std::abs(p.t - t) < std::abs(q.t - t); });
        try {
          os << coset_distance(curve_point(c, it->t), it->g, *sp);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::OutOfLogWindow) throw;
          throw NumericalError(e.kind(), "closed form and oracle diverged: " + e.detail(), it->t);
        }
      }
      os << "\n";
    }
    emit(os.str());
    return kExitPass;
  }

  int oracle() {
    format_or("csv", {"csv"});
    const HomogeneousSpace sp = space();
    if (cfg_.v0.empty()) throw Error(ErrorKind::BadInput, "--v0 is required");
    const auto coeffs = parse_reals(cfg_.v0);
    if (static_cast<Eigen::Index>(coeffs.size()) != sp.m().dim()) {
      throw Error(ErrorKind::BadInput, "--v0 needs " + std::to_string(sp.m().dim()) + " coefficients");
    }
    const AlgebraVector v0 = sp.from_split_coords(Eigen::Map<const Eigen::VectorXd>(coeffs.data(), sp.m().dim()));
    if (!(cfg_.t_end > 0.0) || !(cfg_.step > 0.0)) throw Error(ErrorKind::BadInput, "--t-end and --step must be positive");
    const GeodesicTrajectory traj =
        integrate_geodesic(sp, v0, cfg_.t_end, cfg_.step, cfg_.t_end / cfg_.samples, tol_ode_);

    const Eigen::Index n = sp.algebra()->ambient_dim();
    std::ostringstream os;
    os << std::setprecision(17) << "t";
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index q = 0; q < n; ++q) os << ",g" << r + 1 << q + 1 << "_re,g" << r + 1 << q + 1 << "_im";
    }
    for (Eigen::Index j = 0; j < sp.m().dim(); ++j) os << ",x" << j + 1;
    os << ",speed\n";
    for (const auto& s : traj.samples) {
      os << s.t;
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index q = 0; q < n; ++q) os << "," << s.g.matrix(r, q).real() << "," << s.g.matrix(r, q).imag();
      }
      const Eigen::VectorXd x = sp.split_coords(s.x);
      for (Eigen::Index j = 0; j < x.size(); ++j) os << "," << x(j);
      os << "," << sp.deformed_norm(s.x) << "\n";
    }
    emit(os.str());
    return kExitPass;
  }

 private:
  RunConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
  double tol_alg_ = 1e-9;
  double tol_ode_ = 1e-6;

  static std::string number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  template <class Seq, class F>
  static std::string tuple(const Seq& seq, F f) {
    std::string s = "(";
    bool first = true;
    for (const auto& x : seq) {
      s += (first ? "" : ",") + f(x);
      first = false;
    }
    return s + ")";
  }

  std::string format_or(const std::string& fallback, std::initializer_list<const char*> allowed) const {
    const std::string fmt = cfg_.format.empty() ? fallback : cfg_.format;
    for (const char* a : allowed) {
      if (fmt == a) return fmt;
    }
    throw Error(ErrorKind::BadInput, "format '" + fmt + "' is not available for this command");
  }

  HomogeneousSpace space() const { return resolve_space(cfg_.space, cfg_.lambda, tol_alg_); }

  CheckEntry rethreshold(CheckEntry c) const {
    return CheckEntry::make(c.name, c.max_residual, tol_alg_, c.oracle);
  }

  std::vector<CheckEntry> four_checks(const HomogeneousSpace& sp) const {
    return {rethreshold(sp.check_k_m_orthogonality()), rethreshold(sp.check_split_orthogonality()),
            rethreshold(sp.check_ad_K_invariance()), rethreshold(sp.check_natural_reductivity())};
  }

  std::pair<std::size_t, std::size_t> pair(const HomogeneousSpace& sp) const {
    const auto v = parse_reals(cfg_.pair);
    if (v.size() != 2) throw Error(ErrorKind::BadInput, "--pair expects two one-based indices");
    const auto a = static_cast<long>(v[0]), b = static_cast<long>(v[1]);
    const long s = static_cast<long>(sp.s());
    if (a != v[0] || b != v[1] || a < 1 || b < 1 || a > s || b > s || a == b) {
      throw Error(ErrorKind::BadInput, "--pair must name two distinct summands in 1.." + std::to_string(s));
    }
    return {static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - 1)};
  }

  static AlgebraVector member_vector(const HomogeneousSpace& sp, std::size_t i, const std::string& text,
                                     const std::string& flag) {
    if (text.empty()) throw Error(ErrorKind::BadInput, flag + " is required");
    const auto v = parse_reals(text);
    const Subspace& m = sp.member(i);
    if (static_cast<Eigen::Index>(v.size()) != m.dim()) {
      throw Error(ErrorKind::BadInput, flag + " needs " + std::to_string(m.dim()) + " coefficients over m" +
                                           std::to_string(i + 1));
    }
    return m.from_coords(Eigen::Map<const Eigen::VectorXd>(v.data(), m.dim()));
  }

  std::vector<double> time_grid() const {
    std::vector<std::string> parts;
    std::stringstream ss(cfg_.t_range);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw Error(ErrorKind::BadInput, "--t expects start:end:count");
    std::vector<double> v;
    for (const auto& p : parts) v.push_back(parse_reals(p).at(0));
    const double count = v[2];
    if (count < 1 || count != std::floor(count) || v[1] < v[0] || v[0] < 0.0) {
      throw Error(ErrorKind::BadInput, "--t needs 0 <= start <= end and a positive integer count");
    }
    const auto n = static_cast<long>(count);
    std::vector<double> ts;
    for (long i = 0; i < n; ++i) ts.push_back(n == 1 ? v[0] : v[0] + (v[1] - v[0]) * static_cast<double>(i) / static_cast<double>(n - 1));
    return ts;
  }

  void emit(const std::string& text) const {
    if (cfg_.out_path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(cfg_.out_path, std::ios::binary);
    if (!f) throw Error(ErrorKind::BadInput, "cannot write " + cfg_.out_path);
    f << text;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-step homogeneous geodesics on deformed homogeneous spaces", "twostep"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_space = [&](CLI::App* sub) {
    sub->add_option("space,--space", cfg.space, "preset string or path to a space spec file");
    sub->add_option("--lambda", cfg.lambda, "override the deformation parameter");
    sub->add_option("--tol-alg", cfg.tol_alg, "algebraic tolerance (default $TWOSTEP_TOL_ALG or 1e-9)");
    sub->add_option("--out", cfg.out_path, "write output to this file instead of stdout");
    sub->add_option("--format", cfg.format, "json | csv | text, depending on the command");
    sub->add_option("--pair", cfg.pair, "one-based summand indices a,b (default 1,2)");
  };
  auto add_ode = [&](CLI::App* sub) {
    sub->add_option("--tol-ode", cfg.tol_ode, "integrator tolerance (default $TWOSTEP_TOL_ODE or 1e-6)");
    sub->add_option("--step", cfg.step, "RK4 step");
  };

  auto* cat = app.add_subcommand("catalog", "list presets and their parameter grammars");
  cat->add_option("--format", cfg.format, "text | json");
  cat->add_option("--out", cfg.out_path, "output file");
  auto* describe = app.add_subcommand("describe", "dimensions, split, lambdas, m basis and structural residuals");
  add_space(describe);
  auto* check = app.add_subcommand("check", "structural checks and bracket inclusion");
  add_space(check);
  auto* verify = app.add_subcommand("verify", "randomized verification of the two-step geodesic property");
  add_space(verify);
  add_ode(verify);
  verify->add_option("--trials", cfg.trials, "random curves");
  verify->add_option("--samples", cfg.samples, "time samples per curve in [0, 2 pi]");
  verify->add_option("--seed", cfg.seed, "64-bit seed");
  auto* trace = app.add_subcommand("trace", "closed-form curve samples and geodesic defects as CSV");
  add_space(trace);
  add_ode(trace);
  trace->add_option("--Xa", cfg.xa, "coefficients over the m_a basis");
  trace->add_option("--Xb", cfg.xb, "coefficients over the m_b basis");
  trace->add_option("--t", cfg.t_range, "start:end:count");
  trace->add_flag("--with-oracle", cfg.with_oracle, "add the coset error against the RK4 oracle");
  auto* oracle = app.add_subcommand("oracle", "RK4 geodesic trajectory as CSV");
  add_space(oracle);
  add_ode(oracle);
  oracle->add_option("--v0", cfg.v0, "initial velocity over the concatenated m basis");
  oracle->add_option("--t-end", cfg.t_end, "final time");
  oracle->add_option("--samples", cfg.samples, "output rows");

  std::vector<std::string> argv_store{"twostep"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitBadInput;
  }

  try {
    Runner runner(cfg, out, err);
    if (*cat) return runner.catalog();
    if (*describe) return runner.describe();
    if (*check) return runner.check();
    if (*verify) return runner.verify();
    if (*trace) return runner.trace();
    return runner.oracle();
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}

}  // namespace twostep
