#include "ffdlt/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "json.hpp"

#include "ffdlt/diffusion_graph.hpp"
#include "ffdlt/engine.hpp"
#include "ffdlt/metrics.hpp"
#include "ffdlt/rng.hpp"
#include "ffdlt/seeding.hpp"

namespace ffdlt {

namespace {

constexpr const char* kVersion = "0.1.0";

const char* kValidKeys =
    "dataset, format, mode, model, strategy, strategy_b, k, delta, lambda, "
    "delay_fraction, tie_prob_a, runs, master_seed, out, newcomer_inverted, "
    "fixed_seeds_from_run";

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    throw ConfigError("config key '" + key + "': invalid number '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  std::string v = lower(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected a boolean, got '" + value + "'");
}

// Shortest round-trip decimal form, deterministic across runs.
std::string fmt_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

Strategy parse_strategy(const std::string& name) {
  std::string n = lower(name);
  if (n == "m-sources" || n == "ms") return Strategy::MSources;
  if (n == "i-sources" || n == "is") return Strategy::ISources;
  if (n == "stress-triads" || n == "st") return Strategy::StressTriads;
  if (n == "least-new" || n == "ln") return Strategy::LeastNew;
  if (n == "most-new" || n == "mn") return Strategy::MostNew;
  throw ConfigError("unknown strategy '" + name +
                    "' (valid: m-sources, i-sources, stress-triads, least-new, most-new)");
}

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::MSources: return "m-sources";
    case Strategy::ISources: return "i-sources";
    case Strategy::StressTriads: return "stress-triads";
    case Strategy::LeastNew: return "least-new";
    case Strategy::MostNew: return "most-new";
  }
  return "?";
}

void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  std::string k = lower(key);
  if (k == "dataset") cfg.dataset = value;
  else if (k == "format") {
    std::string v = lower(value);
    if (v == "snap") cfg.format = EdgeListFormat::SnapSigned;
    else if (v == "konect") cfg.format = EdgeListFormat::KonectTimestamped;
    else if (v == "auto") cfg.format.reset();
    else throw ConfigError("config key 'format': expected snap, konect or auto");
  } else if (k == "mode") {
    std::string v = lower(value);
    if (v == "full") cfg.mode = DiffusionContext::Full;
    else if (v == "lcc") cfg.mode = DiffusionContext::Lcc;
    else throw ConfigError("config key 'mode': expected full or lcc");
  } else if (k == "model") {
    std::string v = lower(value);
    if (v == "nc") cfg.model = ModelKind::NonCompetitive;
    else if (v == "sp") cfg.model = ModelKind::SemiProgressive;
    else if (v == "np") cfg.model = ModelKind::NonProgressive;
    else throw ConfigError("config key 'model': expected nc, sp or np");
  } else if (k == "strategy") cfg.strategy = parse_strategy(value);
  else if (k == "strategy_b") cfg.strategy_b = parse_strategy(value);
  else if (k == "k") cfg.k = parse_number<int>(k, value);
  else if (k == "delta") cfg.delta = parse_number<double>(k, value);
  else if (k == "lambda") cfg.lambda = parse_number<double>(k, value);
  else if (k == "delay_fraction") cfg.delay_fraction = parse_number<double>(k, value);
  else if (k == "tie_prob_a") cfg.tie_prob_a = parse_number<double>(k, value);
  else if (k == "runs") cfg.runs = parse_number<int>(k, value);
  else if (k == "master_seed") cfg.master_seed = parse_number<std::uint64_t>(k, value);
  else if (k == "out") cfg.out_dir = value;
  else if (k == "newcomer_inverted") cfg.newcomer_inverted = parse_bool(k, value);
  else if (k == "fixed_seeds_from_run") cfg.fixed_seeds_from_run = parse_number<int>(k, value);
  else throw ConfigError("unknown config key '" + key + "' (valid keys: " + kValidKeys + ")");
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto trim = [](std::string s) {
      std::size_t a = s.find_first_not_of(" \t");
      if (a == std::string::npos) return std::string();
      std::size_t b = s.find_last_not_of(" \t");
      return s.substr(a, b - a + 1);
    };
    std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    std::size_t eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    apply_config_value(cfg, trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
  }
  return cfg;
}

void validate_config(const ExperimentConfig& cfg, std::ostream* warnings) {
  if (cfg.dataset.empty()) throw ConfigError("dataset is required");
  if (!cfg.strategy) throw ConfigError("strategy is required");
  if (cfg.k < 1) throw ConfigError("k must be >= 1");
  if (cfg.runs < 1) throw ConfigError("runs must be >= 1");
  if (cfg.model != ModelKind::NonCompetitive && !cfg.strategy_b)
    throw ConfigError("competitive models require strategy_b");
  if (!(cfg.delay_fraction >= 0.0 && cfg.delay_fraction <= 0.75))
    throw ConfigError("delay_fraction must lie in [0, 0.75]");
  if (!(cfg.tie_prob_a >= 0.0 && cfg.tie_prob_a <= 1.0))
    throw ConfigError("tie_prob_a must lie in [0, 1]");
  if (cfg.delta < 0.0) throw ConfigError("delta must be >= 0");
  if (cfg.lambda < 0.0) throw ConfigError("lambda must be >= 0");
  if (cfg.fixed_seeds_from_run && (*cfg.fixed_seeds_from_run < 0))
    throw ConfigError("fixed_seeds_from_run must be >= 0");
  if (warnings) {
    if (cfg.delta > 0.5)
      *warnings << "warning: delta " << cfg.delta << " is outside the usual [0, 0.5] range\n";
    if (cfg.lambda > 5.0)
      *warnings << "warning: lambda " << cfg.lambda << " is outside the usual [0, 5] range\n";
  }
}

namespace {

struct ScoredSeed {
  NodeId node;
  double score;
};

struct RunOutput {
  std::vector<MetricSeries> series;
  std::optional<SwitchStats> switches;
  std::optional<DeactivationStats> deacts;
  std::optional<SharedStats> shared;
  Step horizon = 0;
  Step delay_b = 0;
  std::uint32_t skipped_seeds_b = 0;
  std::uint32_t displaced_seeds_b = 0;
  std::vector<ScoredSeed> seeds_a, seeds_b;
};

struct ExperimentContext {
  const ExperimentConfig* cfg;
  std::shared_ptr<const TrustNetwork> net;
  double p = 0;
  // Strategies on the raw signed network are run-invariant; computed once.
  std::optional<SeedRanking> static_ranking_a, static_ranking_b;
  // Seed pinning (fixed_seeds_from_run): rankings frozen from one sampling.
  std::optional<SeedRanking> pinned_ranking_a, pinned_ranking_b;
};

// Stress-Triads and the newcomer strategies score on the raw signed network
// and are run-invariant; M/I-Sources score on sampled weights, per run.
bool strategy_is_static(Strategy s) {
  return s == Strategy::StressTriads || s == Strategy::LeastNew || s == Strategy::MostNew;
}

SeedRanking run_static_strategy(Strategy s, const TrustNetwork& net,
                                const ExperimentConfig& cfg) {
  switch (s) {
    case Strategy::StressTriads: return stress_triads(net, cfg.k);
    case Strategy::LeastNew:
      return newcomers(net, cfg.k, NewcomerBin::LeastNew, cfg.newcomer_inverted);
    case Strategy::MostNew:
      return newcomers(net, cfg.k, NewcomerBin::MostNew, cfg.newcomer_inverted);
    default: throw std::logic_error("not a static strategy");
  }
}

SeedRanking run_sampled_strategy(Strategy s, const DiffusionGraph& dg, int k) {
  return s == Strategy::MSources ? rank_m_sources(dg, k) : rank_i_sources(dg, k);
}

const SeedRanking& resolve_ranking(bool for_b, const ExperimentContext& ctx,
                                   const DiffusionGraph& dg, std::optional<SeedRanking>& scratch) {
  Strategy s = for_b ? *ctx.cfg->strategy_b : *ctx.cfg->strategy;
  if (for_b ? ctx.pinned_ranking_b.has_value() : ctx.pinned_ranking_a.has_value())
    return for_b ? *ctx.pinned_ranking_b : *ctx.pinned_ranking_a;
  if (strategy_is_static(s)) return for_b ? *ctx.static_ranking_b : *ctx.static_ranking_a;
  scratch = run_sampled_strategy(s, dg, ctx.cfg->k);
  return *scratch;
}

std::vector<ScoredSeed> take_top(const SeedRanking& r, int k) {
  std::vector<ScoredSeed> out;
  for (const auto& e : r.entries) {
    if (static_cast<int>(out.size()) >= k) break;
    out.push_back({e.node, e.score});
  }
  return out;
}

// Campaign B takes the next-ranked candidates past any node already seeded
// for campaign A (the engine rejects overlapping seed sets).
std::vector<ScoredSeed> take_top_excluding(const SeedRanking& r, int k,
                                           const std::vector<ScoredSeed>& taken,
                                           std::uint32_t& displaced) {
  std::unordered_set<NodeId> blocked;
  for (const auto& s : taken) blocked.insert(s.node);
  std::vector<ScoredSeed> out;
  for (const auto& e : r.entries) {
    if (static_cast<int>(out.size()) >= k) break;
    if (blocked.count(e.node)) {
      ++displaced;
      continue;
    }
    out.push_back({e.node, e.score});
  }
  return out;
}

std::vector<NodeId> nodes_of(const std::vector<ScoredSeed>& seeds) {
  std::vector<NodeId> out(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) out[i] = seeds[i].node;
  return out;
}

// The non-competitive protocol for one campaign: the lambda = 0 run defines
// the time limit; with lambda > 0 a paired run on the same sampling is
// truncated there and the per-step loss is measured against the baseline.
struct NcCampaign {
  SimulationTrace trace;       // the run at the configured lambda
  MetricSeries loss;           // empty unless lambda > 0
  Step horizon = 0;
};

NcCampaign run_nc_campaign(const DiffusionGraph& dg, const std::vector<NodeId>& seeds,
                           const NodeParams& np, const ExperimentConfig& cfg,
                           std::uint64_t run_seed, std::mt19937_64& rng) {
  ModelParams mp0;
  mp0.delta = cfg.delta;
  mp0.lambda = 0.0;
  mp0.horizon = 1;
  NcCampaign out;
  out.horizon = compute_horizon(dg, seeds, np, mp0);
  mp0.horizon = out.horizon;

  SimulationTrace base = run_noncompetitive(dg, seeds, np, mp0, rng);
  base.meta.rng_seed = run_seed;
  if (cfg.lambda > 0.0) {
    ModelParams mp = mp0;
    mp.lambda = cfg.lambda;
    out.trace = run_noncompetitive(dg, seeds, np, mp, rng);
    out.trace.meta.rng_seed = run_seed;
    out.loss = activation_loss(base, out.trace);
  } else {
    out.trace = std::move(base);
  }
  return out;
}

RunOutput execute_run(const ExperimentContext& ctx, int run_index) {
  const ExperimentConfig& cfg = *ctx.cfg;
  std::uint64_t run_seed = derive_run_seed(cfg.master_seed, static_cast<std::uint64_t>(run_index));
  std::mt19937_64 rng(run_seed);

  DiffusionGraph dg = sample_weights(ctx.net, ctx.p, rng);
  NodeParams np = sample_node_params(ctx.net->node_count(), rng);

  RunOutput out;
  std::optional<SeedRanking> scratch_a, scratch_b;
  const SeedRanking& ranking_a = resolve_ranking(false, ctx, dg, scratch_a);
  out.seeds_a = take_top(ranking_a, cfg.k);
  std::vector<NodeId> seeds_a = nodes_of(out.seeds_a);

  if (cfg.model == ModelKind::NonCompetitive) {
    NcCampaign a = run_nc_campaign(dg, seeds_a, np, cfg, run_seed, rng);
    out.horizon = a.horizon;
    auto spread_a = spread_series(a.trace);
    auto [stressed_a, unstressed_a] = stressed_split(a.trace, dg);
    if (cfg.strategy_b) {
      // Independent-pair statistics: both campaigns run alone on the same
      // sampling; series are campaign-tagged.
      const SeedRanking& ranking_b = resolve_ranking(true, ctx, dg, scratch_b);
      out.seeds_b = take_top(ranking_b, cfg.k);
      NcCampaign b = run_nc_campaign(dg, nodes_of(out.seeds_b), np, cfg, run_seed, rng);
      out.shared = shared_spread_stats(a.trace, b.trace);
      auto spread_b = spread_series(b.trace);
      auto [stressed_b, unstressed_b] = stressed_split(b.trace, dg);
      out.series.push_back({"spread", Campaign::A, std::move(spread_a[0].values)});
      out.series.push_back({"stressed", Campaign::A, std::move(stressed_a.values)});
      out.series.push_back({"unstressed", Campaign::A, std::move(unstressed_a.values)});
      out.series.push_back({"spread", Campaign::B, std::move(spread_b[0].values)});
      out.series.push_back({"stressed", Campaign::B, std::move(stressed_b.values)});
      out.series.push_back({"unstressed", Campaign::B, std::move(unstressed_b.values)});
      if (cfg.lambda > 0.0) {
        out.series.push_back({"activation_loss", Campaign::A, std::move(a.loss.values)});
        out.series.push_back({"activation_loss", Campaign::B, std::move(b.loss.values)});
      }
      out.horizon = std::max(a.horizon, b.horizon);
    } else {
      out.series.push_back(std::move(spread_a[0]));
      out.series.push_back(std::move(stressed_a));
      out.series.push_back(std::move(unstressed_a));
      if (cfg.lambda > 0.0) out.series.push_back(std::move(a.loss));
    }
    return out;
  }

  // Competitive protocol: the horizon is the end-time of the bad campaign's
  // non-competitive diffusion at the configured parameters; campaign B starts
  // delay_fraction of the way in.
  const SeedRanking& ranking_b = resolve_ranking(true, ctx, dg, scratch_b);
  out.seeds_b = take_top_excluding(ranking_b, cfg.k, out.seeds_a, out.displaced_seeds_b);
  std::vector<NodeId> seeds_b = nodes_of(out.seeds_b);

  ModelParams mp;
  mp.delta = cfg.delta;
  mp.lambda = cfg.lambda;
  mp.tie_break.prob_a = cfg.tie_prob_a;
  mp.horizon = 1;
  out.horizon = compute_horizon(dg, seeds_a, np, mp);
  mp.horizon = out.horizon;
  out.delay_b = static_cast<Step>(std::floor(cfg.delay_fraction * out.horizon));

  SimulationTrace trace =
      cfg.model == ModelKind::SemiProgressive
          ? run_semiprogressive(dg, seeds_a, seeds_b, out.delay_b, np, mp, rng)
          : run_nonprogressive(dg, seeds_a, seeds_b, out.delay_b, np, mp, rng);
  trace.meta.rng_seed = run_seed;
  out.skipped_seeds_b = trace.meta.skipped_seeds_b;

  for (auto& s : spread_series(trace)) out.series.push_back(std::move(s));
  out.switches = switch_stats(trace);
  if (cfg.model == ModelKind::NonProgressive) out.deacts = deactivation_stats(trace);
  return out;
}

unsigned worker_count(int runs) {
  unsigned workers = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("FFDLT_WORKERS")) {
    int parsed = std::atoi(env);
    if (parsed > 0) workers = static_cast<unsigned>(parsed);
  }
  if (workers == 0) workers = 1;
  return std::min<unsigned>(workers, static_cast<unsigned>(runs));
}

void write_runs_csv(const std::string& path, const std::vector<RunOutput>& outs, Step max_h) {
  std::ofstream f(path, std::ios::binary);
  f << "run,step,metric,campaign,value\n";
  for (std::size_t r = 0; r < outs.size(); ++r) {
    for (const MetricSeries& s : outs[r].series) {
      const char* camp = s.campaign ? (*s.campaign == Campaign::A ? "A" : "B") : "-";
      for (Step t = 0; t <= max_h; ++t) {
        double v = s.values.empty()
                       ? 0.0
                       : s.values[std::min<std::size_t>(t, s.values.size() - 1)];
        f << r << ',' << t << ',' << s.name << ',' << camp << ',' << fmt_double(v) << '\n';
      }
    }
  }
}

nlohmann::json aggregate_json(std::span<const double> values) {
  Aggregate a = aggregate_runs(values);
  return {{"mean", a.mean}, {"std", a.stddev}, {"min", a.min}, {"max", a.max}, {"runs", a.count}};
}

nlohmann::json summarize(const std::vector<RunOutput>& outs, Step max_h) {
  nlohmann::json summary;
  const std::size_t runs = outs.size();

  // Per-metric: aggregate of final values plus per-step mean/std.
  nlohmann::json metrics = nlohmann::json::object();
  for (std::size_t s = 0; s < outs[0].series.size(); ++s) {
    const MetricSeries& head = outs[0].series[s];
    std::string key = head.name;
    if (head.campaign) key += *head.campaign == Campaign::A ? "_A" : "_B";

    std::vector<double> finals(runs);
    std::vector<double> mean(max_h + 1, 0.0), sq(max_h + 1, 0.0);
    for (std::size_t r = 0; r < runs; ++r) {
      const auto& vals = outs[r].series[s].values;
      finals[r] = vals.empty() ? 0.0 : vals.back();
      for (Step t = 0; t <= max_h; ++t) {
        double v = vals.empty() ? 0.0 : vals[std::min<std::size_t>(t, vals.size() - 1)];
        mean[t] += v;
        sq[t] += v * v;
      }
    }
    std::vector<double> stddev(max_h + 1, 0.0);
    for (Step t = 0; t <= max_h; ++t) {
      mean[t] /= static_cast<double>(runs);
      double var = sq[t] / static_cast<double>(runs) - mean[t] * mean[t];
      stddev[t] = std::sqrt(std::max(var, 0.0));
    }
    metrics[key] = {{"final", aggregate_json(finals)},
                    {"series_mean", mean},
                    {"series_std", stddev}};
  }
  summary["metrics"] = metrics;

  auto collect = [&](auto getter) {
    std::vector<double> v(runs);
    for (std::size_t r = 0; r < runs; ++r) v[r] = getter(outs[r]);
    return v;
  };

  std::vector<double> horizons = collect([](const RunOutput& o) { return double(o.horizon); });
  summary["horizon"] = aggregate_json(horizons);

  if (outs[0].switches) {
    summary["switch_stats"] = {
        {"A_to_B_unique", aggregate_json(collect([](const RunOutput& o) {
           return double(o.switches->from_a.unique_nodes);
         }))},
        {"A_to_B_total", aggregate_json(collect([](const RunOutput& o) {
           return double(o.switches->from_a.total);
         }))},
        {"B_to_A_unique", aggregate_json(collect([](const RunOutput& o) {
           return double(o.switches->from_b.unique_nodes);
         }))},
        {"B_to_A_total", aggregate_json(collect([](const RunOutput& o) {
           return double(o.switches->from_b.total);
         }))},
    };
    summary["delay_b"] =
        aggregate_json(collect([](const RunOutput& o) { return double(o.delay_b); }));
  }
  if (outs[0].deacts) {
    summary["deactivation_stats"] = {
        {"A_unique", aggregate_json(collect([](const RunOutput& o) {
           return double(o.deacts->campaign_a.unique_nodes);
         }))},
        {"A_total", aggregate_json(collect([](const RunOutput& o) {
           return double(o.deacts->campaign_a.total);
         }))},
        {"B_unique", aggregate_json(collect([](const RunOutput& o) {
           return double(o.deacts->campaign_b.unique_nodes);
         }))},
        {"B_total", aggregate_json(collect([](const RunOutput& o) {
           return double(o.deacts->campaign_b.total);
         }))},
    };
  }
  if (outs[0].shared) {
    summary["shared_stats"] = {
        {"spread_A", aggregate_json(collect([](const RunOutput& o) {
           return double(o.shared->spread_A);
         }))},
        {"spread_B", aggregate_json(collect([](const RunOutput& o) {
           return double(o.shared->spread_B);
         }))},
        {"shared_fraction", aggregate_json(collect([](const RunOutput& o) {
           return o.shared->shared_fraction;
         }))},
        {"pct_A_first", aggregate_json(collect([](const RunOutput& o) {
           return o.shared->pct_A_first;
         }))},
        {"avg_time_any", aggregate_json(collect([](const RunOutput& o) {
           return o.shared->avg_time_any;
         }))},
        {"avg_time_A_first", aggregate_json(collect([](const RunOutput& o) {
           return o.shared->avg_time_A_first;
         }))},
        {"avg_time_B_first", aggregate_json(collect([](const RunOutput& o) {
           return o.shared->avg_time_B_first;
         }))},
    };
  }
  return summary;
}

void write_seeds_csv(const std::string& path, const std::vector<RunOutput>& outs,
                     const TrustNetwork& net) {
  std::ofstream f(path, std::ios::binary);
  f << "run,campaign,rank,node,score\n";
  for (std::size_t r = 0; r < outs.size(); ++r) {
    for (std::size_t i = 0; i < outs[r].seeds_a.size(); ++i)
      f << r << ",A," << (i + 1) << ',' << net.original_id(outs[r].seeds_a[i].node) << ','
        << fmt_double(outs[r].seeds_a[i].score) << '\n';
    for (std::size_t i = 0; i < outs[r].seeds_b.size(); ++i)
      f << r << ",B," << (i + 1) << ',' << net.original_id(outs[r].seeds_b[i].node) << ','
        << fmt_double(outs[r].seeds_b[i].score) << '\n';
  }
}

}  // namespace

void run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
  validate_config(cfg, &log);

  ExperimentContext ctx;
  ctx.cfg = &cfg;

  TrustNetwork raw = load_edge_list(cfg.dataset, cfg.format);
  DiffusionContext mode = cfg.mode.value_or(lower(cfg.dataset).find("conflict") !=
                                                    std::string::npos
                                                ? DiffusionContext::Full
                                                : DiffusionContext::Lcc);
  ctx.net = std::make_shared<const TrustNetwork>(restrict_for_diffusion(raw, mode));
  ctx.p = trust_fraction(*ctx.net);
  log << "dataset " << cfg.dataset << ": " << raw.node_count() << " nodes, " << raw.edge_count()
      << " edges; diffusion context " << (mode == DiffusionContext::Lcc ? "lcc" : "full") << ": "
      << ctx.net->node_count() << " nodes, " << ctx.net->edge_count() << " edges, p = " << ctx.p
      << "\n";

  if (strategy_is_static(*cfg.strategy))
    ctx.static_ranking_a = run_static_strategy(*cfg.strategy, *ctx.net, cfg);
  if (cfg.strategy_b && strategy_is_static(*cfg.strategy_b))
    ctx.static_ranking_b = run_static_strategy(*cfg.strategy_b, *ctx.net, cfg);

  if (cfg.fixed_seeds_from_run &&
      (!strategy_is_static(*cfg.strategy) ||
       (cfg.strategy_b && !strategy_is_static(*cfg.strategy_b)))) {
    // Freeze per-run strategies to the sampling of the given run.
    std::uint64_t seed =
        derive_run_seed(cfg.master_seed, static_cast<std::uint64_t>(*cfg.fixed_seeds_from_run));
    std::mt19937_64 rng(seed);
    DiffusionGraph dg = sample_weights(ctx.net, ctx.p, rng);
    if (!strategy_is_static(*cfg.strategy))
      ctx.pinned_ranking_a = run_sampled_strategy(*cfg.strategy, dg, cfg.k);
    if (cfg.strategy_b && !strategy_is_static(*cfg.strategy_b))
      ctx.pinned_ranking_b = run_sampled_strategy(*cfg.strategy_b, dg, cfg.k);
  }

  const int runs = cfg.runs;
  std::vector<RunOutput> outs(runs);
  std::atomic<int> next(0);
  std::mutex error_mutex;
  std::exception_ptr error;
  unsigned workers = worker_count(runs);

  auto work = [&]() {
    for (;;) {
      int r = next.fetch_add(1);
      if (r >= runs) return;
      try {
        outs[r] = execute_run(ctx, r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  Step max_h = 0;
  for (const RunOutput& o : outs)
    for (const MetricSeries& s : o.series)
      max_h = std::max<Step>(max_h, static_cast<Step>(s.values.size()) - 1);

  namespace fs = std::filesystem;
  fs::create_directories(cfg.out_dir);
  auto out_path = [&](const char* name) { return (fs::path(cfg.out_dir) / name).string(); };

  write_runs_csv(out_path("runs.csv"), outs, max_h);

  nlohmann::json summary = summarize(outs, max_h);
  {
    std::ofstream f(out_path("summary.json"), std::ios::binary);
    f << summary.dump(2) << '\n';
  }

  write_seeds_csv(out_path("seeds.csv"), outs, *ctx.net);

  {
    std::ofstream f(out_path("node_map.csv"), std::ios::binary);
    f << "node,original\n";
    for (NodeId v = 0; v < ctx.net->node_count(); ++v)
      f << v << ',' << ctx.net->original_id(v) << '\n';
  }

  std::uint64_t skipped = 0, displaced = 0;
  for (const RunOutput& o : outs) {
    skipped += o.skipped_seeds_b;
    displaced += o.displaced_seeds_b;
  }
  nlohmann::json meta{
      {"version", kVersion},
      {"config",
       {{"dataset", cfg.dataset},
        {"format", cfg.format ? (*cfg.format == EdgeListFormat::SnapSigned ? "snap" : "konect")
                              : "auto"},
        {"mode", mode == DiffusionContext::Lcc ? "lcc" : "full"},
        {"model", model_name(cfg.model)},
        {"strategy", strategy_name(*cfg.strategy)},
        {"strategy_b", cfg.strategy_b ? strategy_name(*cfg.strategy_b) : ""},
        {"k", cfg.k},
        {"delta", cfg.delta},
        {"lambda", cfg.lambda},
        {"delay_fraction", cfg.delay_fraction},
        {"tie_prob_a", cfg.tie_prob_a},
        {"runs", cfg.runs},
        {"master_seed", cfg.master_seed},
        {"newcomer_inverted", cfg.newcomer_inverted},
        {"fixed_seeds_from_run",
         cfg.fixed_seeds_from_run ? nlohmann::json(*cfg.fixed_seeds_from_run)
                                  : nlohmann::json(nullptr)}}},
      {"diffusion_context",
       {{"nodes", ctx.net->node_count()},
        {"edges", ctx.net->edge_count()},
        {"trust_fraction", ctx.p}}},
      {"seed_notes",
       {{"skipped_delayed_b_seeds", skipped}, {"displaced_b_seeds", displaced}}},
      {"files", {"runs.csv", "summary.json", "seeds.csv", "node_map.csv"}},
  };
  {
    std::ofstream f(out_path("meta.json"), std::ios::binary);
    f << meta.dump(2) << '\n';
  }
  log << "wrote " << out_path("runs.csv") << " (+summary.json, seeds.csv, meta.json, node_map.csv)"
      << "\n";
}

}  // namespace ffdlt
