// Command-line front end: simulate, nsweep, ksweep, couple, verify.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "nanbu/certificates.hpp"
#include "nanbu/errors.hpp"
#include "nanbu/harness/config.hpp"
#include "nanbu/harness/experiments.hpp"
#include "nanbu/harness/report.hpp"

namespace {

using nanbu::harness::ExperimentConfig;
using nanbu::harness::Table;
using nlohmann::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kConfig = 2, kNumerical = 3, kIo = 4 };

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<std::size_t> replicas;
  unsigned threads = 1;
  bool no_timing = false;
};

ExperimentConfig load(const Options& o) {
  ExperimentConfig cfg = nanbu::harness::load_config(o.config_path);
  if (o.seed) {
    cfg.base.seed = *o.seed;
  }
  if (o.replicas) {
    cfg.replicas = *o.replicas;
  }
  if (!o.out.empty()) {
    cfg.output_path = o.out;
  }
  nanbu::harness::validate(cfg);
  return cfg;
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void emit(const Table& table, json summary, const std::string& command,
          const std::optional<ExperimentConfig>& cfg, std::uint64_t seed, double elapsed,
          const std::string& out) {
  if (out.empty()) {
    std::cout << nanbu::harness::to_csv(table);
    return;
  }
  json meta;
  meta["command"] = command;
  if (cfg) {
    meta["config"] = nanbu::harness::to_json(*cfg);
  }
  meta["seed"] = seed;
  meta["version"] = nanbu::harness::version_string();
  meta["wall_clock"] = {{"finished_utc", utc_now()}, {"elapsed_s", elapsed}};
  meta["columns"] = table.header;
  meta["summary"] = std::move(summary);
  nanbu::harness::emit_report(table, meta, out);
  std::cerr << "wrote " << out << " (" << table.rows.size() << " rows)\n";
}

json sweep_summary(const nanbu::harness::SweepSummary& s) {
  json j;
  j["strictly_decreasing"] = s.strictly_decreasing;
  j["fitted_slope"] = s.fitted_slope ? json(*s.fitted_slope) : json(nullptr);
  j["reference_slope"] = s.reference_slope ? json(*s.reference_slope) : json(nullptr);
  return j;
}

Table sweep_table(const char* key, const char* mean, const nanbu::harness::SweepSummary& s) {
  Table t{{key, mean, "stderr", "replicas", "elapsed_s"}, {}};
  for (const auto& r : s.rows) {
    t.rows.push_back(
        {r.sweep_value, r.mean, r.std_error, static_cast<double>(r.replicas), r.elapsed_seconds});
  }
  return t;
}

void print_slope(const nanbu::harness::SweepSummary& s) {
  if (s.fitted_slope && s.reference_slope) {
    std::fprintf(stderr, "fitted log-log slope %.6g (reference %.6g); strictly decreasing: %s\n",
                 *s.fitted_slope, *s.reference_slope, s.strictly_decreasing ? "yes" : "no");
  }
}

int dispatch(const std::string& command, const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return o.no_timing
               ? 0.0
               : std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  const nanbu::harness::RunOptions run_opts{o.threads, !o.no_timing};

  if (command == "verify") {
    nanbu::kernel::CertificateOptions copts;
    if (o.seed) {
      copts.seed = *o.seed;
    }
    const auto results = nanbu::kernel::run_kernel_certificates(copts);
    Table t{{"certificate", "samples", "value", "threshold", "passed"}, {}};
    bool all = true;
    json names = json::array();
    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto& r = results[k];
      std::fprintf(stderr, "[%s] %s: value=%.6g threshold=%.6g (%zu samples) %s\n",
                   r.passed ? "PASS" : "FAIL", r.name.c_str(), r.value, r.threshold, r.samples,
                   r.detail.c_str());
      t.rows.push_back({static_cast<double>(k), static_cast<double>(r.samples), r.value,
                        r.threshold, r.passed ? 1.0 : 0.0});
      names.push_back(r.name);
      all = all && r.passed;
    }
    emit(t, {{"certificates", names}, {"all_passed", all}}, command, std::nullopt, copts.seed,
         elapsed(), o.out);
    return all ? kOk : kNumerical;
  }

  const ExperimentConfig cfg = load(o);
  const std::string& out = cfg.output_path;
  if (command == "simulate") {
    Table t{{"t", "m2", "m4", "px", "py", "pz", "energy", "blob_lp", "events"}, {}};
    for (const auto& r : nanbu::harness::simulate_rows(cfg)) {
      t.rows.push_back({r.t, r.m2, r.m4, r.momentum.x, r.momentum.y, r.momentum.z, r.energy,
                        r.blob_lp, static_cast<double>(r.events)});
    }
    emit(t, json::object(), command, cfg, cfg.base.seed, elapsed(), out);
  } else if (command == "couple") {
    Table t{{"t", "msd"}, {}};
    for (const auto& [time, d] : nanbu::harness::couple_rows(cfg)) {
      t.rows.push_back({time, d});
    }
    emit(t, json::object(), command, cfg, cfg.base.seed, elapsed(), out);
  } else if (command == "nsweep") {
    const auto s = nanbu::harness::experiment_n_sweep(cfg, run_opts);
    print_slope(s);
    emit(sweep_table("n", "mean_w2sq", s), sweep_summary(s), command, cfg, cfg.base.seed,
         elapsed(), out);
  } else if (command == "ksweep") {
    const auto s = nanbu::harness::experiment_k_sweep(cfg, run_opts);
    print_slope(s);
    emit(sweep_table("k_lo", "mean_msd", s), sweep_summary(s), command, cfg, cfg.base.seed,
         elapsed(), out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic particle simulation of the Boltzmann equation with soft potentials"};
  app.set_version_flag("--version", nanbu::harness::version_string());
  app.require_subcommand(1);

  Options o;
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* cfg = sub->add_option("--config", o.config_path, "experiment configuration file");
    if (needs_config) {
      cfg->required();
    }
    sub->add_option("--seed", o.seed, "override sim.seed");
    sub->add_option("--out", o.out, "CSV output path (JSON sidecar at <out>.json)");
    sub->add_option("--replicas", o.replicas, "override replicas")->check(CLI::PositiveNumber);
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--no-timing", o.no_timing, "report elapsed times as 0");
  };
  add_common(app.add_subcommand("simulate", "single run, per-snapshot diagnostics"), true);
  add_common(app.add_subcommand("nsweep", "W2^2 against a reference run over N"), true);
  add_common(app.add_subcommand("ksweep", "coupled or uncoupled sweep over the cutoff K"), true);
  add_common(app.add_subcommand("couple", "single coupled run, distance time series"), true);
  add_common(app.add_subcommand("verify", "kernel inequality certificates"), false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    return dispatch(app.get_subcommands().front()->get_name(), o);
  } catch (const nanbu::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const nanbu::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const nanbu::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
