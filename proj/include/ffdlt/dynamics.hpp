#pragma once

#include <optional>
#include <random>
#include <vector>

#include "ffdlt/diffusion_graph.hpp"
#include "ffdlt/types.hpp"

namespace ffdlt {

/// Per-node exogenous parameters: activation threshold theta in (0,1] and
/// base quiescence time tau >= 0.
struct NodeParams {
  std::vector<double> theta;
  std::vector<double> tau;

  void validate(std::uint32_t node_count) const;
};

/// theta ~ Uniform(0,1], tau ~ Uniform[0,5); drawn in node order (theta first).
NodeParams sample_node_params(std::uint32_t node_count, std::mt19937_64& rng);

struct TieBreakRule {
  double prob_a = 1.0;  // probability that a simultaneous activation goes to campaign A
};

struct ModelParams {
  double delta = 0.0;   // per-step activation-threshold increment (confirmation bias)
  double lambda = 0.0;  // sensitivity to perceived negative influence
  Step horizon = 1;
  TieBreakRule tie_break;
};

/// Time-varying activation threshold. Returns theta when delta = 0 or the
/// node was never activated; otherwise theta + delta * min{(1-theta)/delta,
/// t - t_last}, saturating at exactly 1 once t - t_last reaches
/// (1-theta)/delta. Result is always in [theta, 1].
double activation_threshold(double theta, double delta, Step t, std::optional<Step> t_last);

/// Quiescence duration at an activation attempt. Returns tau when lambda = 0
/// (constant quiescence); otherwise tau + exp(lambda * neg_mass).
double quiescence_duration(double tau, double lambda, double neg_mass);

/// Sum of positive in-weights of v from nodes flagged in `active`.
double trusted_influence(const DiffusionGraph& g, NodeId v, const std::vector<bool>& active);

/// Sum of |negative in-weights| of v from nodes flagged in `active`.
double distrusted_active_mass(const DiffusionGraph& g, NodeId v, const std::vector<bool>& active);

}  // namespace ffdlt
