#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "ffdlt/diffusion_graph.hpp"
#include "ffdlt/experiment.hpp"
#include "ffdlt/rng.hpp"
#include "ffdlt/seeding.hpp"
#include "ffdlt/trust_network.hpp"

namespace {

std::optional<ffdlt::EdgeListFormat> parse_format_flag(const std::string& v) {
  if (v == "auto" || v.empty()) return std::nullopt;
  if (v == "snap") return ffdlt::EdgeListFormat::SnapSigned;
  if (v == "konect") return ffdlt::EdgeListFormat::KonectTimestamped;
  throw CLI::ValidationError("--format must be auto, snap or konect");
}

ffdlt::DiffusionContext default_mode(const std::string& dataset) {
  std::string d = dataset;
  for (char& c : d) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return d.find("conflict") != std::string::npos ? ffdlt::DiffusionContext::Full
                                                 : ffdlt::DiffusionContext::Lcc;
}

int cmd_stats(const std::string& dataset, const std::string& format) {
  ffdlt::TrustNetwork net = ffdlt::load_edge_list(dataset, parse_format_flag(format));
  std::size_t neg = 0;
  for (const auto& e : net.edges())
    if (e.sign < 0) ++neg;
  double neg_pct = net.edge_count() ? 100.0 * neg / net.edge_count() : 0.0;

  std::cout << "dataset: " << dataset << "\n";
  std::cout << "nodes: " << net.node_count() << "\n";
  std::cout << "edges: " << net.edge_count() << "\n";
  std::cout << "negative_edges_pct: " << neg_pct << "\n";
  std::cout << "avg_degree: "
            << (net.node_count() ? double(net.edge_count()) / net.node_count() : 0.0) << "\n";
  std::cout << "timestamped: " << (net.has_timestamps() ? "yes" : "no") << "\n";

  std::vector<ffdlt::NodeId> scc = ffdlt::largest_scc(net);
  std::cout << "lcc_nodes: " << scc.size() << "\n";
  std::cout << "lcc_edges: " << ffdlt::induced_edge_count(net, scc) << "\n";
  return 0;
}

int cmd_seeds(const std::string& dataset, const std::string& format, const std::string& mode,
              const std::string& strategy, int k, std::uint64_t master_seed,
              bool newcomer_inverted, const std::string& out_file) {
  ffdlt::TrustNetwork raw = ffdlt::load_edge_list(dataset, parse_format_flag(format));
  ffdlt::DiffusionContext ctx = mode == "full"  ? ffdlt::DiffusionContext::Full
                                : mode == "lcc" ? ffdlt::DiffusionContext::Lcc
                                                : default_mode(dataset);
  auto net = std::make_shared<const ffdlt::TrustNetwork>(ffdlt::restrict_for_diffusion(raw, ctx));

  ffdlt::Strategy s = ffdlt::parse_strategy(strategy);
  ffdlt::SeedRanking ranking;
  switch (s) {
    case ffdlt::Strategy::StressTriads:
      ranking = ffdlt::stress_triads(*net, k);
      break;
    case ffdlt::Strategy::LeastNew:
      ranking = ffdlt::newcomers(*net, k, ffdlt::NewcomerBin::LeastNew, newcomer_inverted);
      break;
    case ffdlt::Strategy::MostNew:
      ranking = ffdlt::newcomers(*net, k, ffdlt::NewcomerBin::MostNew, newcomer_inverted);
      break;
    default: {
      // Weight-based strategies need a sampling; use run 0 of the master seed.
      std::mt19937_64 rng(ffdlt::derive_run_seed(master_seed, 0));
      ffdlt::DiffusionGraph dg =
          ffdlt::sample_weights(net, ffdlt::trust_fraction(*net), rng);
      ranking = s == ffdlt::Strategy::MSources ? ffdlt::rank_m_sources(dg, k)
                                               : ffdlt::rank_i_sources(dg, k);
      break;
    }
  }

  if (ranking.shortfall)
    std::cerr << "warning: only " << ranking.entries.size() << " candidates for k = " << k
              << "\n";
  if (out_file.empty()) {
    ffdlt::write_ranking_csv(ranking, *net, std::cout);
  } else {
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + out_file);
    ffdlt::write_ranking_csv(ranking, *net, f);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed-network threshold-diffusion simulator"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Run a Monte-Carlo experiment from a config file");
  std::string config_path;
  std::vector<std::string> overrides;
  run->add_option("--config", config_path, "flat key=value config file");
  run->add_option("--override", overrides, "key=value settings overriding the config file")
      ->expected(-1);
  // direct flags for the common keys; applied after the file, before --override
  std::map<std::string, std::string> direct;
  for (const char* key : {"dataset", "format", "mode", "model", "strategy", "strategy_b", "k",
                          "delta", "lambda", "delay_fraction", "tie_prob_a", "runs",
                          "master_seed", "out", "newcomer_inverted", "fixed_seeds_from_run"}) {
    run->add_option_function<std::string>(
        std::string("--") + key, [&direct, key](const std::string& v) { direct[key] = v; },
        std::string("override config key ") + key);
  }

  // seeds
  auto* seeds = app.add_subcommand("seeds", "Rank seed candidates for one strategy");
  std::string s_dataset, s_format = "auto", s_mode = "default", s_strategy, s_out;
  int s_k = 0;
  std::uint64_t s_seed = 1;
  bool s_inverted = false;
  seeds->add_option("--dataset", s_dataset, "edge-list file")->required();
  seeds->add_option("--format", s_format, "auto|snap|konect");
  seeds->add_option("--mode", s_mode, "full|lcc (default by dataset)");
  seeds->add_option("--strategy", s_strategy, "seed strategy")->required();
  seeds->add_option("-k,--k", s_k, "seed budget")->required();
  seeds->add_option("--master-seed", s_seed, "seed for the weight sampling (m/i-sources)");
  seeds->add_flag("--newcomer-inverted", s_inverted, "flip the newcomer timestamp comparison");
  seeds->add_option("-o,--out", s_out, "write CSV here instead of stdout");

  // stats
  auto* stats = app.add_subcommand("stats", "Print dataset statistics");
  std::string t_dataset, t_format = "auto";
  stats->add_option("--dataset", t_dataset, "edge-list file")->required();
  stats->add_option("--format", t_format, "auto|snap|konect");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      ffdlt::ExperimentConfig cfg;
      if (!config_path.empty()) cfg = ffdlt::parse_config_file(config_path);
      for (const auto& [key, value] : direct) ffdlt::apply_config_value(cfg, key, value);
      for (const std::string& kv : overrides) {
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos)
          throw ffdlt::ConfigError("--override expects key=value, got '" + kv + "'");
        ffdlt::apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
      }
      ffdlt::run_experiment(cfg, std::cerr);
      return 0;
    }
    if (seeds->parsed())
      return cmd_seeds(s_dataset, s_format, s_mode, s_strategy, s_k, s_seed, s_inverted, s_out);
    if (stats->parsed()) return cmd_stats(t_dataset, t_format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
