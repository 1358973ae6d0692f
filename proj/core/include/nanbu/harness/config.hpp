#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nanbu/simulation.hpp"

namespace nanbu::harness {

/// Independent runs at each N compared with one high-resolution reference run.
struct NSweep {
  std::vector<std::size_t> n_values;
  std::size_t n_ref = 0;
  std::optional<double> k_ref;  // defaults to sim.k
  friend bool operator==(const NSweep&, const NSweep&) = default;
};

/// Independent runs at each K compared with a reference run at k_ref.
struct KSweep {
  std::vector<double> k_values;
  double k_ref = 0.0;
  friend bool operator==(const KSweep&, const KSweep&) = default;
};

/// Coupled runs at each K_lo against a common K_hi.
struct CoupledSweep {
  std::vector<double> k_lo;
  double k_hi = 0.0;
  friend bool operator==(const CoupledSweep&, const CoupledSweep&) = default;
};

using Sweep = std::variant<std::monostate, NSweep, KSweep, CoupledSweep>;

struct ExperimentConfig {
  sim::SimConfig base;
  Sweep sweep;
  std::size_t replicas = 1;
  /// Moment order assumed for the initial law; sets delta = 6/q.
  double q = 8.0;
  double blob_p = 1.4;
  std::optional<double> blob_delta;
  std::string output_path;

  double delta() const { return blob_delta.value_or(6.0 / q); }

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parse a flat `key = value` document ('#' starts a comment). Lists are
/// comma separated and may be bracketed; mixture means are ';' separated
/// triples. Unknown or repeated keys are errors. Throws ConfigError listing
/// every violation found.
ExperimentConfig parse_config(std::string_view text);

ExperimentConfig load_config(const std::string& path);

/// Throws ConfigError unless every model hypothesis and harness invariant
/// holds; parse_config calls it.
void validate(const ExperimentConfig& config);

nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace nanbu::harness
