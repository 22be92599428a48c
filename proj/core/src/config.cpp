#include "subfrac/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "subfrac/errors.hpp"

namespace subfrac {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_field(const std::string& key, const std::string& why) {
  throw ConfigError("field '" + key + "': " + why);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    bad_field(key, "expected a number, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    // stoull accepts a leading '-' and wraps; reject that explicitly
    if (used != v.size() || v.find('-') != std::string::npos) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    bad_field(key, "expected a non-negative integer, got '" + v + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_double(key, item));
  }
  if (out.empty()) bad_field(key, "expected a comma-separated list of numbers");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  bad_field(key, "expected true/false, got '" + v + "'");
}

using D = double ExperimentConfig::*;
using V = std::vector<double> ExperimentConfig::*;
using S = std::string ExperimentConfig::*;

const std::map<std::string, D>& double_fields() {
  static const std::map<std::string, D> m = {
      {"beta", &ExperimentConfig::beta},
      {"c", &ExperimentConfig::c},
      {"eta", &ExperimentConfig::eta},
      {"a", &ExperimentConfig::a},
      {"k", &ExperimentConfig::k},
      {"theta", &ExperimentConfig::theta},
      {"x_max", &ExperimentConfig::x_max},
      {"drift_const", &ExperimentConfig::drift_const},
      {"drift_slope", &ExperimentConfig::drift_slope},
      {"sigma_const", &ExperimentConfig::sigma_const},
      {"sigma_slope", &ExperimentConfig::sigma_slope},
      {"jump_intensity", &ExperimentConfig::jump_intensity},
      {"jump_rate", &ExperimentConfig::jump_rate},
      {"jump_cut", &ExperimentConfig::jump_cut},
      {"f_value", &ExperimentConfig::f_value},
      {"f_center", &ExperimentConfig::f_center},
      {"f_width", &ExperimentConfig::f_width},
      {"x", &ExperimentConfig::x},
      {"dt", &ExperimentConfig::dt},
      {"dx", &ExperimentConfig::dx},
      {"ds", &ExperimentConfig::ds},
      {"em_step", &ExperimentConfig::em_step},
      {"tolerance_multiplier", &ExperimentConfig::tolerance_multiplier},
      {"residual_tolerance", &ExperimentConfig::residual_tolerance},
      {"horizon", &ExperimentConfig::horizon},
      {"s", &ExperimentConfig::s},
  };
  return m;
}

const std::map<std::string, V>& vector_fields() {
  static const std::map<std::string, V> m = {
      {"betas", &ExperimentConfig::betas},
      {"weights", &ExperimentConfig::weights},
      {"z", &ExperimentConfig::tab_z},
      {"w", &ExperimentConfig::tab_w},
      {"t_grid", &ExperimentConfig::t_grid},
      {"lambdas", &ExperimentConfig::lambdas},
      {"r_grid", &ExperimentConfig::r_grid},
      {"lemma_r", &ExperimentConfig::lemma_r},
      {"lemma_t", &ExperimentConfig::lemma_t},
      {"dt_levels", &ExperimentConfig::dt_levels},
  };
  return m;
}

const std::map<std::string, S>& string_fields() {
  static const std::map<std::string, S> m = {
      {"kind", &ExperimentConfig::kind},   {"family", &ExperimentConfig::family},
      {"model", &ExperimentConfig::model}, {"f", &ExperimentConfig::f},
      {"mode", &ExperimentConfig::mode},   {"out", &ExperimentConfig::out},
  };
  return m;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (auto it = double_fields().find(key); it != double_fields().end()) {
    cfg.*(it->second) = parse_double(key, value);
    return;
  }
  if (auto it = vector_fields().find(key); it != vector_fields().end()) {
    cfg.*(it->second) = parse_list(key, value);
    return;
  }
  if (auto it = string_fields().find(key); it != string_fields().end()) {
    cfg.*(it->second) = value;
    return;
  }
  if (key == "n_samples") {
    cfg.n_samples = parse_u64(key, value);
    return;
  }
  if (key == "seed") {
    cfg.seed = parse_u64(key, value);
    return;
  }
  if (key == "workers") {
    cfg.workers = static_cast<int>(parse_u64(key, value));
    return;
  }
  if (key == "override_finite_activity") {
    cfg.override_finite_activity = parse_bool(key, value);
    return;
  }
  if (key.rfind("sweep.", 0) == 0) {
    const std::string param = key.substr(6);
    if (param.empty()) bad_field(key, "missing sweep parameter name");
    cfg.sweep[param] = parse_list(key, value);
    return;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

template <typename T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  return os.str();
}

void check(bool ok, const std::string& key, const std::string& why) {
  if (!ok) bad_field(key, why);
}

void check_positive_increasing(const std::vector<double>& v, const std::string& key) {
  check(!v.empty(), key, "must not be empty");
  for (std::size_t i = 0; i < v.size(); ++i) {
    check(v[i] > 0.0 && std::isfinite(v[i]), key, "entries must be positive");
    if (i > 0) check(v[i] > v[i - 1], key, "entries must be strictly increasing");
  }
}

}  // namespace

BernsteinChar ExperimentConfig::characteristics() const {
  LevyMeasure mu = LevyMeasure::none();
  if (family == "none") {
    mu = LevyMeasure::none();
  } else if (family == "stable") {
    mu = LevyMeasure::stable(beta);
  } else if (family == "gamma") {
    mu = LevyMeasure::gamma_process(c, eta);
  } else if (family == "distributed_order") {
    mu = LevyMeasure::distributed_order(betas, weights);
  } else if (family == "exp_jumps") {
    mu = LevyMeasure::exp_jumps(c, eta);
  } else if (family == "tabulated") {
    mu = LevyMeasure::tabulated(tab_z, tab_w);
  } else {
    bad_field("family", "unknown family '" + family + "'");
  }
  return BernsteinChar(a, k, mu);
}

MarkovModel ExperimentConfig::make_model() const {
  if (model == "eigen") return MarkovModel::eigen(theta);
  if (model == "brownian_torus") return MarkovModel::brownian_torus();
  if (model == "brownian_line") return MarkovModel::brownian_line(x_max);
  if (model == "jump_diffusion") {
    MarkovModel::JumpDiffusionParams p;
    p.drift_const = drift_const;
    p.drift_slope = drift_slope;
    p.sigma_const = sigma_const;
    p.sigma_slope = sigma_slope;
    p.jump_intensity = jump_intensity;
    p.jump_rate = jump_rate;
    p.jump_cut = jump_cut;
    p.x_max = x_max;
    return MarkovModel::jump_diffusion(p);
  }
  bad_field("model", "unknown model '" + model + "'");
}

TestFunction ExperimentConfig::test_function() const {
  if (f == "const") return test_functions::constant(f_value);
  if (f == "sin") return test_functions::sine();
  if (f == "cos") return test_functions::cosine();
  if (f == "gaussian") return test_functions::gaussian(f_center, f_width);
  bad_field("f", "unknown test function '" + f + "'");
}

McParams ExperimentConfig::mc_params() const {
  McParams p;
  p.n = n_samples;
  p.seed = seed;
  p.workers = workers;
  if (mode == "conditional") {
    p.mode = McMode::kConditional;
  } else if (mode == "pathwise") {
    p.mode = McMode::kPathwise;
  } else {
    bad_field("mode", "expected conditional or pathwise, got '" + mode + "'");
  }
  p.ds = ds;
  p.em_step = em_step;
  p.allow_finite_activity = override_finite_activity;
  return p;
}

std::string ExperimentConfig::echo() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "kind = " << kind << "\n";
  os << "family = " << family << "\n";
  os << "beta = " << beta << "\n";
  os << "c = " << c << "\n";
  os << "eta = " << eta << "\n";
  if (!betas.empty()) os << "betas = " << join(betas) << "\n";
  if (!weights.empty()) os << "weights = " << join(weights) << "\n";
  if (!tab_z.empty()) os << "z = " << join(tab_z) << "\n";
  if (!tab_w.empty()) os << "w = " << join(tab_w) << "\n";
  os << "a = " << a << "\n";
  os << "k = " << k << "\n";
  os << "model = " << model << "\n";
  os << "theta = " << theta << "\n";
  os << "x_max = " << x_max << "\n";
  if (model == "jump_diffusion") {
    os << "drift_const = " << drift_const << "\n";
    os << "drift_slope = " << drift_slope << "\n";
    os << "sigma_const = " << sigma_const << "\n";
    os << "sigma_slope = " << sigma_slope << "\n";
    os << "jump_intensity = " << jump_intensity << "\n";
    os << "jump_rate = " << jump_rate << "\n";
    os << "jump_cut = " << jump_cut << "\n";
  }
  os << "f = " << f << "\n";
  os << "f_value = " << f_value << "\n";
  if (f == "gaussian") {
    os << "f_center = " << f_center << "\n";
    os << "f_width = " << f_width << "\n";
  }
  os << "t_grid = " << join(t_grid) << "\n";
  os << "x = " << x << "\n";
  os << "n_samples = " << n_samples << "\n";
  os << "dt = " << dt << "\n";
  os << "dx = " << dx << "\n";
  os << "ds = " << ds << "\n";
  os << "em_step = " << em_step << "\n";
  os << "seed = " << seed << "\n";
  os << "mode = " << mode << "\n";
  os << "tolerance_multiplier = " << tolerance_multiplier << "\n";
  os << "residual_tolerance = " << residual_tolerance << "\n";
  os << "horizon = " << horizon << "\n";
  os << "lambdas = " << join(lambdas) << "\n";
  os << "r_grid = " << join(r_grid) << "\n";
  os << "s = " << s << "\n";
  os << "lemma_r = " << join(lemma_r) << "\n";
  os << "lemma_t = " << join(lemma_t) << "\n";
  os << "dt_levels = " << join(dt_levels) << "\n";
  os << "out = " << out << "\n";
  os << "workers = " << workers << "\n";
  os << "override_finite_activity = " << (override_finite_activity ? "true" : "false") << "\n";
  for (const auto& [param, values] : sweep) os << "sweep." << param << " = " << join(values) << "\n";
  return os.str();
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value, got '" +
                        line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    apply_key(cfg, key, value);
  }
  return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void set_config_field(ExperimentConfig& cfg, const std::string& key, double value) {
  if (auto it = double_fields().find(key); it != double_fields().end()) {
    cfg.*(it->second) = value;
    return;
  }
  if (key == "n_samples") {
    cfg.n_samples = static_cast<std::uint64_t>(value);
    return;
  }
  if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(value);
    return;
  }
  throw ConfigError("sweep parameter '" + key + "' is not a sweepable numeric field");
}

void validate_config(const ExperimentConfig& cfg) {
  static const std::vector<std::string> kinds = {"mc-vs-pde",   "cdf-check",     "lemma31-check",
                                                 "convergence", "laplace-check", "reduction-a0"};
  check(std::find(kinds.begin(), kinds.end(), cfg.kind) != kinds.end(), "kind",
        "unknown experiment kind '" + cfg.kind + "'");
  check(std::isfinite(cfg.a) && cfg.a >= 0.0, "a", "must be >= 0");
  check(std::isfinite(cfg.k) && cfg.k >= 0.0, "k", "must be >= 0");
  check(cfg.dt > 0.0, "dt", "must be > 0");
  check(cfg.dx > 0.0, "dx", "must be > 0");
  check(cfg.ds > 0.0, "ds", "must be > 0");
  check(cfg.em_step > 0.0, "em_step", "must be > 0");
  check(cfg.workers >= 1, "workers", "must be >= 1");
  check(cfg.tolerance_multiplier > 0.0, "tolerance_multiplier", "must be > 0");
  check_positive_increasing(cfg.t_grid, "t_grid");

  // family / model / f assembly (these throw field-named errors themselves)
  const BernsteinChar ch = cfg.characteristics();
  (void)cfg.make_model();
  (void)cfg.test_function();
  (void)cfg.mc_params();

  const bool needs_mc =
      cfg.kind == "mc-vs-pde" || cfg.kind == "cdf-check" || cfg.kind == "reduction-a0";
  if (needs_mc) {
    check(cfg.n_samples >= 100, "n_samples", "must be >= 100");
    if (!ch.measure.infinite_activity() && !cfg.override_finite_activity)
      bad_field("family",
                "finite-activity measures need override_finite_activity = true (or the "
                "--override-finite-activity flag)");
  }

  if (cfg.kind == "mc-vs-pde") {
    if (cfg.model == "jump_diffusion")
      check(cfg.mode == "pathwise", "mode", "jump_diffusion supports pathwise mode only");
    if (cfg.model == "brownian_torus")
      check(cfg.test_function().is_eigen, "f",
            "mc-vs-pde on the torus needs an eigen test function (sin, cos or const)");
    check(cfg.model != "brownian_line", "model",
          "mc-vs-pde supports eigen, brownian_torus and jump_diffusion");
  }
  if (cfg.kind == "convergence") {
    check(cfg.family == "stable", "family", "convergence uses the stable kernel oracle");
    check(cfg.a == 0.0, "a", "convergence compares against the unkilled oracle; set a = 0");
    check(cfg.k == 0.0, "k", "convergence compares against the driftless oracle; set k = 0");
    check(cfg.dt_levels.size() >= 3, "dt_levels", "need at least three halving levels");
    for (std::size_t i = 0; i < cfg.dt_levels.size(); ++i) {
      check(cfg.dt_levels[i] > 0.0, "dt_levels", "entries must be positive");
      if (i > 0)
        check(std::abs(cfg.dt_levels[i] - 0.5 * cfg.dt_levels[i - 1]) < 1e-12 * cfg.dt_levels[0],
              "dt_levels", "entries must halve");
    }
  }
  if (cfg.kind == "laplace-check") {
    check(cfg.horizon > 0.0, "horizon", "must be > 0");
    check(!cfg.lambdas.empty(), "lambdas", "must not be empty");
    for (double lam : cfg.lambdas) {
      check(lam > 0.0, "lambdas", "entries must be positive");
      check(std::exp(-lam * cfg.horizon) <= 1e-8, "horizon",
            "too short for the smallest lambda (need exp(-lambda*horizon) <= 1e-8)");
    }
  }
  if (cfg.kind == "cdf-check") {
    check(cfg.s >= 0.0, "s", "must be >= 0");
    check(!cfg.r_grid.empty(), "r_grid", "must not be empty");
    for (double r : cfg.r_grid) check(r >= 0.0, "r_grid", "entries must be >= 0");
  }
  if (cfg.kind == "lemma31-check") {
    check(!cfg.lemma_r.empty() && cfg.lemma_r.size() == cfg.lemma_t.size(), "lemma_r",
          "lemma_r and lemma_t must be non-empty lists of equal length");
    for (double v : cfg.lemma_r) check(v > 0.0, "lemma_r", "entries must be positive");
    for (double v : cfg.lemma_t) check(v > 0.0, "lemma_t", "entries must be positive");
    check(cfg.family == "stable", "family", "lemma31-check uses the stable kernel");
  }
  if (cfg.kind == "reduction-a0")
    check(cfg.a == 0.0, "a", "reduction-a0 compares the a = 0 pipelines; set a = 0");
}

}  // namespace subfrac
