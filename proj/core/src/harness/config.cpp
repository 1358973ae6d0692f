#include "nanbu/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nanbu/constants.hpp"
#include "nanbu/errors.hpp"

namespace nanbu::harness {
namespace {

const std::set<std::string, std::less<>> kKnownKeys{
    "params.gamma", "params.nu",     "sim.n",          "sim.k",         "sim.t",
    "sim.seed",     "init.kind",     "init.mean",      "init.variance", "init.weights",
    "init.means",   "init.variances", "init.center",   "init.radius",   "init.q",
    "diag.times",   "sweep.n_values", "sweep.n_ref",   "sweep.k_ref",   "sweep.k_values",
    "sweep.k_lo",   "sweep.k_hi",    "replicas",       "blob.p",        "blob.delta",
    "output.path"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) {
      return out;
    }
    start = pos + 1;
  }
}

std::string_view strip_brackets(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    s = trim(s.substr(1, s.size() - 2));
  }
  return s;
}

// Collects conversion errors instead of throwing so that every problem in a
// document is reported at once.
class Reader {
 public:
  Reader(std::map<std::string, std::string, std::less<>> values, std::vector<std::string>& errors)
      : values_(std::move(values)), errors_(errors) {}

  bool has(std::string_view key) const { return values_.contains(key); }

  std::optional<double> real(std::string_view key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return std::nullopt;
    }
    return to_real(key, it->second);
  }

  double real_or(std::string_view key, double fallback) { return real(key).value_or(fallback); }

  std::optional<std::uint64_t> integer(std::string_view key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return std::nullopt;
    }
    return to_integer(key, it->second);
  }

  std::optional<std::vector<double>> reals(std::string_view key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return std::nullopt;
    }
    std::vector<double> out;
    const auto body = strip_brackets(it->second);
    if (body.empty()) {
      return out;
    }
    for (auto item : split(body, ',')) {
      if (auto v = to_real(key, item)) {
        out.push_back(*v);
      }
    }
    return out;
  }

  std::optional<std::vector<std::size_t>> integers(std::string_view key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return std::nullopt;
    }
    std::vector<std::size_t> out;
    const auto body = strip_brackets(it->second);
    if (body.empty()) {
      return out;
    }
    for (auto item : split(body, ',')) {
      if (auto v = to_integer(key, item)) {
        out.push_back(static_cast<std::size_t>(*v));
      }
    }
    return out;
  }

  std::optional<Vec3> vec(std::string_view key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return std::nullopt;
    }
    return to_vec(key, it->second);
  }

  std::optional<std::vector<Vec3>> vecs(std::string_view key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return std::nullopt;
    }
    std::vector<Vec3> out;
    for (auto item : split(strip_brackets(it->second), ';')) {
      if (auto v = to_vec(key, item)) {
        out.push_back(*v);
      }
    }
    return out;
  }

  std::optional<std::string> text(std::string_view key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

 private:
  std::optional<double> to_real(std::string_view key, std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
      errors_.push_back(std::string(key) + ": expected a finite number, got '" + std::string(s) +
                        "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::uint64_t> to_integer(std::string_view key, std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
      errors_.push_back(std::string(key) + ": expected a nonnegative integer, got '" +
                        std::string(s) + "'");
      return std::nullopt;
    }
    return v;
  }

  std::optional<Vec3> to_vec(std::string_view key, std::string_view s) {
    const auto parts = split(strip_brackets(s), ',');
    if (parts.size() != 3) {
      errors_.push_back(std::string(key) + ": expected three components, got '" +
                        std::string(s) + "'");
      return std::nullopt;
    }
    const auto a = to_real(key, parts[0]);
    const auto b = to_real(key, parts[1]);
    const auto c = to_real(key, parts[2]);
    if (!a || !b || !c) {
      return std::nullopt;
    }
    return Vec3{*a, *b, *c};
  }

  std::map<std::string, std::string, std::less<>> values_;
  std::vector<std::string>& errors_;
};

template <class T>
bool strictly_increasing(const std::vector<T>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](T a, T b) { return !(a < b); }) == v.end();
}

std::vector<double> default_times(double horizon) {
  if (!(horizon > 0.0)) {
    return {0.0};
  }
  std::vector<double> t;
  for (int k = 0; k <= 10; ++k) {
    t.push_back(k == 10 ? horizon : horizon * k / 10.0);
  }
  return t;
}

void check_model(double gamma, double nu, std::vector<std::string>& errors) {
  if (!(gamma > -1.0 && gamma < 0.0)) {
    errors.emplace_back("params.gamma: gamma in (-1,0) violated (gamma=" + std::to_string(gamma) +
                        ")");
  }
  if (!(nu > 0.0 && nu < 1.0)) {
    errors.emplace_back("params.nu: nu in (0,1) violated (nu=" + std::to_string(nu) + ")");
  }
  if (!(gamma + nu > 0.0)) {
    errors.emplace_back("params: gamma+nu>0 violated (gamma+nu=" + std::to_string(gamma + nu) +
                        ")");
  }
}

void check_cutoff(const char* key, double k, std::vector<std::string>& errors) {
  if (!(k >= 1.0)) {
    errors.emplace_back(std::string(key) + ": K>=1 violated (K=" + std::to_string(k) + ")");
  }
}

sim::InitialLaw read_initial(Reader& r, std::vector<std::string>& errors) {
  const std::string kind = r.text("init.kind").value_or("gaussian");
  if (kind == "gaussian") {
    for (const char* key : {"init.weights", "init.means", "init.variances", "init.center",
                            "init.radius"}) {
      if (r.has(key)) {
        errors.emplace_back(std::string(key) + ": not used by init.kind=gaussian");
      }
    }
    return sim::Gaussian{r.vec("init.mean").value_or(Vec3{}), r.real_or("init.variance", 1.0)};
  }
  if (kind == "gaussian_mixture") {
    const auto weights = r.reals("init.weights").value_or(std::vector<double>{});
    const auto means = r.vecs("init.means").value_or(std::vector<Vec3>{});
    const auto variances = r.reals("init.variances").value_or(std::vector<double>{});
    if (weights.empty() || weights.size() != means.size() || weights.size() != variances.size()) {
      errors.emplace_back(
          "init.weights, init.means, init.variances: equal nonzero lengths required");
      return sim::GaussianMixture{};
    }
    sim::GaussianMixture mix;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      mix.components.push_back({weights[k], {means[k], variances[k]}});
    }
    return mix;
  }
  if (kind == "uniform_ball") {
    return sim::UniformBall{r.vec("init.center").value_or(Vec3{}), r.real_or("init.radius", 1.0)};
  }
  errors.emplace_back("init.kind: one of gaussian, gaussian_mixture, uniform_ball (got '" + kind +
                      "')");
  return sim::Gaussian{};
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  std::vector<std::string> errors;
  std::map<std::string, std::string, std::less<>> values;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!kKnownKeys.contains(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      continue;
    }
    if (!values.emplace(key, value).second) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  Reader r(std::move(values), errors);
  for (const char* key : {"params.gamma", "params.nu", "sim.n", "sim.k", "sim.t", "sim.seed"}) {
    if (!r.has(key)) {
      errors.push_back(std::string(key) + ": required");
    }
  }
  const double gamma = r.real_or("params.gamma", -0.5);
  const double nu = r.real_or("params.nu", 0.7);
  const double k = r.real_or("sim.k", 1.0);
  check_model(gamma, nu, errors);
  check_cutoff("sim.k", k, errors);

  ExperimentConfig cfg;
  cfg.base.n = static_cast<std::size_t>(r.integer("sim.n").value_or(2));
  cfg.base.horizon = r.real_or("sim.t", 1.0);
  cfg.base.seed = r.integer("sim.seed").value_or(1);
  cfg.base.initial = read_initial(r, errors);
  cfg.base.diagnostic_times = r.reals("diag.times").value_or(default_times(cfg.base.horizon));
  cfg.replicas = static_cast<std::size_t>(r.integer("replicas").value_or(1));
  cfg.q = r.real_or("init.q", 8.0);
  cfg.blob_p = r.real_or("blob.p", 1.4);
  cfg.blob_delta = r.real("blob.delta");
  cfg.output_path = r.text("output.path").value_or("");

  const bool has_n = r.has("sweep.n_values") || r.has("sweep.n_ref");
  const bool has_k = r.has("sweep.k_values");
  const bool has_coupled = r.has("sweep.k_lo") || r.has("sweep.k_hi");
  if (int(has_n) + int(has_k) + int(has_coupled) > 1) {
    errors.emplace_back(
        "sweep: exactly one of sweep.n_values, sweep.k_values, sweep.k_lo may be given");
  } else if (has_n) {
    NSweep s;
    s.n_values = r.integers("sweep.n_values").value_or(std::vector<std::size_t>{});
    s.n_ref = static_cast<std::size_t>(r.integer("sweep.n_ref").value_or(0));
    s.k_ref = r.real("sweep.k_ref");
    cfg.sweep = s;
  } else if (has_k) {
    KSweep s;
    s.k_values = r.reals("sweep.k_values").value_or(std::vector<double>{});
    s.k_ref = r.real_or("sweep.k_ref", 0.0);
    cfg.sweep = s;
  } else if (has_coupled) {
    CoupledSweep s;
    s.k_lo = r.reals("sweep.k_lo").value_or(std::vector<double>{});
    s.k_hi = r.real_or("sweep.k_hi", 0.0);
    cfg.sweep = s;
  }
  if (r.has("sweep.k_ref") && !has_n && !has_k) {
    errors.emplace_back("sweep.k_ref: only valid with sweep.n_values or sweep.k_values");
  }

  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
  cfg.base.params = kernel::SoftPotentialParams(gamma, nu);
  cfg.base.cutoff = kernel::CutoffLevel(k);
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void validate(const ExperimentConfig& config) {
  std::vector<std::string> errors;
  try {
    config.base.validate();
  } catch (const ConfigError& e) {
    errors.insert(errors.end(), e.violations().begin(), e.violations().end());
  }
  const double gamma = config.base.params.gamma();
  const double nu = config.base.params.nu();
  if (config.replicas < 1) {
    errors.emplace_back("replicas>=1");
  }
  try {
    metrics::p_zero(gamma, nu, config.q);
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) {
      errors.push_back("init.q: " + v);
    }
  }
  if (!(config.blob_p > 1.0 && config.blob_p < 2.0)) {
    errors.emplace_back("blob.p in (1,2)");
  }
  const double delta = config.delta();
  if (!(delta > 0.0 && delta < 1.0)) {
    errors.emplace_back("blob.delta in (0,1) (delta=" + std::to_string(delta) + ")");
  }

  if (const auto* s = std::get_if<NSweep>(&config.sweep)) {
    if (!(config.q > 6.0)) {
      errors.emplace_back("init.q: q>6 required for the N-sweep rate");
    }
    if (s->n_values.empty() || !strictly_increasing(s->n_values)) {
      errors.emplace_back("sweep.n_values nonempty and strictly increasing");
    }
    if (!s->n_values.empty() && s->n_values.front() < 2) {
      errors.emplace_back("sweep.n_values>=2");
    }
    if (s->n_values.empty() || s->n_ref < s->n_values.back()) {
      errors.emplace_back("sweep.n_ref>=max(sweep.n_values)");
    }
    if (s->k_ref) {
      check_cutoff("sweep.k_ref", *s->k_ref, errors);
    }
  } else if (const auto* s = std::get_if<KSweep>(&config.sweep)) {
    if (s->k_values.empty() || !strictly_increasing(s->k_values)) {
      errors.emplace_back("sweep.k_values nonempty and strictly increasing");
    }
    for (double k : s->k_values) {
      check_cutoff("sweep.k_values", k, errors);
    }
    if (s->k_values.empty() || !(s->k_ref >= s->k_values.back())) {
      errors.emplace_back("sweep.k_ref>=max(sweep.k_values)");
    }
  } else if (const auto* s = std::get_if<CoupledSweep>(&config.sweep)) {
    if (s->k_lo.empty() || !strictly_increasing(s->k_lo)) {
      errors.emplace_back("sweep.k_lo nonempty and strictly increasing");
    }
    for (double k : s->k_lo) {
      check_cutoff("sweep.k_lo", k, errors);
    }
    check_cutoff("sweep.k_hi", s->k_hi, errors);
    if (s->k_lo.empty() || !(s->k_hi >= s->k_lo.back())) {
      errors.emplace_back("sweep.k_hi>=max(sweep.k_lo)");
    }
  }
  if (!errors.empty()) {
    throw ConfigError(std::move(errors));
  }
}

namespace {

nlohmann::json vec_json(const Vec3& v) { return nlohmann::json::array({v.x, v.y, v.z}); }

Vec3 vec_from(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

nlohmann::json initial_json(const sim::InitialLaw& law) {
  using nlohmann::json;
  if (const auto* g = std::get_if<sim::Gaussian>(&law)) {
    return {{"kind", "gaussian"}, {"mean", vec_json(g->mean)}, {"variance", g->variance}};
  }
  if (const auto* m = std::get_if<sim::GaussianMixture>(&law)) {
    json comps = json::array();
    for (const auto& c : m->components) {
      comps.push_back({{"weight", c.weight},
                       {"mean", vec_json(c.component.mean)},
                       {"variance", c.component.variance}});
    }
    return {{"kind", "gaussian_mixture"}, {"components", comps}};
  }
  const auto& b = std::get<sim::UniformBall>(law);
  return {{"kind", "uniform_ball"}, {"center", vec_json(b.center)}, {"radius", b.radius}};
}

sim::InitialLaw initial_from(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") {
    return sim::Gaussian{vec_from(j.at("mean")), j.at("variance").get<double>()};
  }
  if (kind == "gaussian_mixture") {
    sim::GaussianMixture m;
    for (const auto& c : j.at("components")) {
      m.components.push_back(
          {c.at("weight").get<double>(), {vec_from(c.at("mean")), c.at("variance").get<double>()}});
    }
    return m;
  }
  if (kind == "uniform_ball") {
    return sim::UniformBall{vec_from(j.at("center")), j.at("radius").get<double>()};
  }
  throw ConfigError("init.kind: unknown kind '" + kind + "'");
}

}  // namespace

nlohmann::json to_json(const ExperimentConfig& config) {
  using nlohmann::json;
  const auto& b = config.base;
  json j;
  j["params"] = {{"gamma", b.params.gamma()}, {"nu", b.params.nu()}};
  j["sim"] = {{"n", b.n}, {"k", b.cutoff.k()}, {"t", b.horizon}, {"seed", b.seed}};
  j["init"] = initial_json(b.initial);
  j["init"]["q"] = config.q;
  j["diag"] = {{"times", b.diagnostic_times}};
  j["replicas"] = config.replicas;
  j["blob"] = {{"p", config.blob_p}};
  if (config.blob_delta) {
    j["blob"]["delta"] = *config.blob_delta;
  }
  j["output_path"] = config.output_path;
  if (const auto* s = std::get_if<NSweep>(&config.sweep)) {
    j["sweep"] = {{"kind", "n"}, {"n_values", s->n_values}, {"n_ref", s->n_ref}};
    if (s->k_ref) {
      j["sweep"]["k_ref"] = *s->k_ref;
    }
  } else if (const auto* s = std::get_if<KSweep>(&config.sweep)) {
    j["sweep"] = {{"kind", "k"}, {"k_values", s->k_values}, {"k_ref", s->k_ref}};
  } else if (const auto* s = std::get_if<CoupledSweep>(&config.sweep)) {
    j["sweep"] = {{"kind", "coupled"}, {"k_lo", s->k_lo}, {"k_hi", s->k_hi}};
  } else {
    j["sweep"] = {{"kind", "none"}};
  }
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  try {
    cfg.base.params = kernel::SoftPotentialParams(j.at("params").at("gamma").get<double>(),
                                                  j.at("params").at("nu").get<double>());
    const auto& s = j.at("sim");
    cfg.base.n = s.at("n").get<std::size_t>();
    cfg.base.cutoff = kernel::CutoffLevel(s.at("k").get<double>());
    cfg.base.horizon = s.at("t").get<double>();
    cfg.base.seed = s.at("seed").get<std::uint64_t>();
    cfg.base.initial = initial_from(j.at("init"));
    cfg.base.diagnostic_times = j.at("diag").at("times").get<std::vector<double>>();
    cfg.q = j.at("init").at("q").get<double>();
    cfg.replicas = j.at("replicas").get<std::size_t>();
    cfg.blob_p = j.at("blob").at("p").get<double>();
    if (j.at("blob").contains("delta")) {
      cfg.blob_delta = j.at("blob").at("delta").get<double>();
    }
    cfg.output_path = j.at("output_path").get<std::string>();
    const auto& sw = j.at("sweep");
    const auto kind = sw.at("kind").get<std::string>();
    if (kind == "n") {
      NSweep n;
      n.n_values = sw.at("n_values").get<std::vector<std::size_t>>();
      n.n_ref = sw.at("n_ref").get<std::size_t>();
      if (sw.contains("k_ref")) {
        n.k_ref = sw.at("k_ref").get<double>();
      }
      cfg.sweep = n;
    } else if (kind == "k") {
      cfg.sweep = KSweep{sw.at("k_values").get<std::vector<double>>(), sw.at("k_ref").get<double>()};
    } else if (kind == "coupled") {
      cfg.sweep = CoupledSweep{sw.at("k_lo").get<std::vector<double>>(), sw.at("k_hi").get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("json config: ") + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
  validate(cfg);
  return cfg;
}

}  // namespace nanbu::harness
