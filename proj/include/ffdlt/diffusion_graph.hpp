#pragma once

#include <memory>
#include <random>
#include <span>
#include <vector>

#include "ffdlt/trust_network.hpp"

namespace ffdlt {

/// A TrustNetwork plus one sampled influence-weight assignment. For every
/// node the cumulative constraints hold: sum of positive in-weights <= 1 and
/// sum of |negative in-weights| <= 1. Weight signs match edge signs (zero
/// weights allowed: sampled-out edges exert no influence). Immutable.
class DiffusionGraph {
 public:
  DiffusionGraph(std::shared_ptr<const TrustNetwork> net, std::vector<double> weight_by_edge);

  const TrustNetwork& net() const { return *net_; }
  std::shared_ptr<const TrustNetwork> net_ptr() const { return net_; }

  double weight(EdgeId e) const { return weight_[e]; }
  const std::vector<double>& weights() const { return weight_; }

  /// Weights aligned with net().in_pos(v) / in_neg(v); the negative slice
  /// holds magnitudes (|w|).
  std::span<const double> in_pos_weights(NodeId v) const {
    const auto& n = *net_;
    return {in_pos_w_.data() + n.in_pos_offset(v), n.in_pos_degree(v)};
  }
  std::span<const double> in_neg_abs_weights(NodeId v) const {
    const auto& n = *net_;
    return {in_neg_w_.data() + n.in_neg_offset(v), n.in_neg_degree(v)};
  }

  /// FNV-1a digest of the weight bytes; used to pair runs that must share a
  /// weight sampling.
  std::uint64_t digest() const { return digest_; }

 private:
  std::shared_ptr<const TrustNetwork> net_;
  std::vector<double> weight_;
  std::vector<double> in_pos_w_, in_neg_w_;
  std::uint64_t digest_ = 0;
};

/// Per-run weight sampling. For a trust edge (u,v): X ~ Binomial(n, p) with
/// n = |N_in_+(v)| and w_uv = X / n^2; for a distrust edge the same with
/// n = |N_in_-(v)| and w_uv = -X / n^2. Per-node cumulative constraints hold
/// by construction (each |w| <= 1/n, at most n terms). Edges are drawn in
/// canonical (src,dst) order; same seed => bit-identical weights.
DiffusionGraph sample_weights(std::shared_ptr<const TrustNetwork> net, double p,
                              std::mt19937_64& rng);

}  // namespace ffdlt
