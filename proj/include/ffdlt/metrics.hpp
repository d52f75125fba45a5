#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffdlt/diffusion_graph.hpp"
#include "ffdlt/trace.hpp"

namespace ffdlt {

/// Per-step measurement, one value for t = 0..horizon. Runs that stopped
/// early are padded with their final value (the state is constant from there).
struct MetricSeries {
  std::string name;
  std::optional<Campaign> campaign;
  std::vector<double> values;

  double final_value() const { return values.empty() ? 0.0 : values.back(); }
};

/// |S_t| per step; one series for non-competitive traces, one per campaign
/// for competitive ones. Quiescent nodes are never counted.
std::vector<MetricSeries> spread_series(const SimulationTrace& trace);

/// Splits the non-competitive spread into stressed (at least one distrusted
/// in-neighbor active at the same step) and unstressed active users.
/// Throws on competitive traces.
std::pair<MetricSeries, MetricSeries> stressed_split(const SimulationTrace& trace,
                                                     const DiffusionGraph& g);

/// Percentage decrease of activated users caused by enabling lambda > 0,
/// against a paired lambda = 0 run sharing weights, node params and seeds:
/// 100 * (|S_t^base| - |S_t^quiesced|) / |S_t^base| (0 where the base is 0).
/// Throws when the traces are not a matched pair.
MetricSeries activation_loss(const SimulationTrace& base, const SimulationTrace& quiesced);

struct DirectionCounts {
  std::uint32_t unique_nodes = 0;
  std::uint32_t total = 0;
};

/// Campaign-switch counts per direction (users activated for one campaign
/// that moved to the other, and total switch events). SP/NP traces only.
struct SwitchStats {
  DirectionCounts from_a;  // A -> B
  DirectionCounts from_b;  // B -> A
};
SwitchStats switch_stats(const SimulationTrace& trace);

/// Deactivation counts per campaign being left. NP traces only.
struct DeactivationStats {
  DirectionCounts campaign_a;
  DirectionCounts campaign_b;
};
DeactivationStats deactivation_stats(const SimulationTrace& trace);

/// Shared-spread statistics of two independent non-competitive runs on the
/// same sampled graph. Activation times are absolute steps; first-activation
/// ties count for campaign A; empty subsets average to 0.
struct SharedStats {
  std::int64_t spread_A = 0;
  std::int64_t spread_B = 0;
  double shared_fraction = 0;   // |Phi_A intersect Phi_B| / |Phi_A|, 0 when Phi_A empty
  double pct_A_first = 0;       // over shared users only
  double avg_time_any = 0;      // mean over shared users of both campaigns' activation steps
  double avg_time_A_first = 0;  // mean A-activation step over shared users A reached first
  double avg_time_B_first = 0;  // mean B-activation step over shared users B reached first
};
SharedStats shared_spread_stats(const SimulationTrace& trace_a, const SimulationTrace& trace_b);

/// Deterministic single-pass aggregate over per-run values (population
/// standard deviation).
struct Aggregate {
  double mean = 0;
  double stddev = 0;
  double min = 0;
  double max = 0;
  std::size_t count = 0;
};
Aggregate aggregate_runs(std::span<const double> values);

}  // namespace ffdlt
