#include "ffdlt/diffusion_graph.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace ffdlt {

namespace {

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t h = 0xCBF29CE484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < bytes; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

DiffusionGraph::DiffusionGraph(std::shared_ptr<const TrustNetwork> net,
                               std::vector<double> weight_by_edge)
    : net_(std::move(net)), weight_(std::move(weight_by_edge)) {
  const TrustNetwork& n = *net_;
  if (weight_.size() != n.edge_count())
    throw std::invalid_argument("weight vector size does not match edge count");

  for (EdgeId id = 0; id < weight_.size(); ++id) {
    double w = weight_[id];
    std::int8_t sign = n.edges()[id].sign;
    if (!(w >= -1.0 && w <= 1.0)) throw std::invalid_argument("edge weight outside [-1,1]");
    if (w != 0.0 && ((w > 0) != (sign > 0)))
      throw std::invalid_argument("weight sign does not match edge sign");
  }

  in_pos_w_.resize(n.in_pos_total());
  in_neg_w_.resize(n.in_neg_total());
  constexpr double kSlack = 1.0 + 1e-9;
  for (NodeId v = 0; v < n.node_count(); ++v) {
    double pos_sum = 0, neg_sum = 0;
    auto pos = n.in_pos(v);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      double w = weight_[pos[i].edge];
      in_pos_w_[n.in_pos_offset(v) + i] = w;
      pos_sum += w;
    }
    auto neg = n.in_neg(v);
    for (std::size_t i = 0; i < neg.size(); ++i) {
      double w = -weight_[neg[i].edge];
      in_neg_w_[n.in_neg_offset(v) + i] = w;
      neg_sum += w;
    }
    if (pos_sum > kSlack || neg_sum > kSlack)
      throw std::invalid_argument("cumulative in-weight constraint violated at node " +
                                  std::to_string(v));
  }
  digest_ = weight_.empty() ? fnv1a(nullptr, 0)
                            : fnv1a(weight_.data(), weight_.size() * sizeof(double));
}

DiffusionGraph sample_weights(std::shared_ptr<const TrustNetwork> net, double p,
                              std::mt19937_64& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("sample_weights: p must be in [0,1]");
  const TrustNetwork& n = *net;
  std::vector<double> w(n.edge_count());
  std::binomial_distribution<int> binom;
  using Param = std::binomial_distribution<int>::param_type;
  for (EdgeId id = 0; id < n.edge_count(); ++id) {
    const Edge& e = n.edges()[id];
    int deg = e.sign > 0 ? static_cast<int>(n.in_pos_degree(e.dst))
                         : static_cast<int>(n.in_neg_degree(e.dst));
    // deg >= 1: the edge itself is an in-edge of e.dst with this sign.
    int draw;
    if (p == 0.0)
      draw = 0;
    else if (p == 1.0)
      draw = deg;
    else
      draw = binom(rng, Param(deg, p));
    double value = static_cast<double>(draw) / (static_cast<double>(deg) * deg);
    w[id] = e.sign > 0 ? value : -value;
  }
  return DiffusionGraph(std::move(net), std::move(w));
}

}  // namespace ffdlt
