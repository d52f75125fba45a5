#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ffdlt/trust_network.hpp"
#include "ffdlt/types.hpp"

namespace ffdlt {

enum class Strategy { MSources, ISources, StressTriads, LeastNew, MostNew };

Strategy parse_strategy(const std::string& name);
const char* strategy_name(Strategy s);

/// One experiment: a dataset, a model, one or two seed strategies, model
/// parameters and a Monte-Carlo budget. Parsed from a flat key=value file
/// and/or command-line overrides.
struct ExperimentConfig {
  std::string dataset;
  std::optional<EdgeListFormat> format;   // sniffed from the file when absent
  std::optional<DiffusionContext> mode;   // default: full for "conflict" datasets, else lcc
  ModelKind model = ModelKind::NonCompetitive;
  std::optional<Strategy> strategy;       // campaign A ("bad", first-started)
  std::optional<Strategy> strategy_b;     // campaign B ("good"); required for sp/np,
                                          // optional for nc (independent-pair statistics)
  int k = 0;
  double delta = 0.0;
  double lambda = 0.0;
  double delay_fraction = 0.0;            // of the computed horizon, in [0, 0.75]
  double tie_prob_a = 1.0;
  int runs = 1000;
  std::uint64_t master_seed = 1;
  std::string out_dir = "out";
  bool newcomer_inverted = false;
  std::optional<int> fixed_seeds_from_run;  // pin per-run strategies to this run's sampling
};

/// Reads a flat config file: `key = value` lines, '#' comments. Unknown keys
/// are rejected with the list of valid keys.
ExperimentConfig parse_config_file(const std::string& path);

/// Applies one key=value override (same keys as the config file).
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

/// Throws ConfigError on invalid combinations; writes range warnings to
/// `warnings` when non-null.
void validate_config(const ExperimentConfig& cfg, std::ostream* warnings = nullptr);

/// Executes the full Monte-Carlo experiment: per run, derive the run seed,
/// sample weights and node parameters, select seeds, simulate, compute
/// metrics; then write runs.csv, summary.json, seeds.csv, meta.json and
/// node_map.csv under cfg.out_dir. Runs fan out to a worker pool
/// (FFDLT_WORKERS, default hardware concurrency); outputs are byte-identical
/// for a given config + master_seed regardless of worker count.
void run_experiment(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace ffdlt
