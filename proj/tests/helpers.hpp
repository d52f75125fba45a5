#pragma once

#include <map>
#include <memory>
#include <random>
#include <tuple>
#include <vector>

#include "ffdlt/diffusion_graph.hpp"
#include "ffdlt/dynamics.hpp"
#include "ffdlt/rng.hpp"
#include "ffdlt/trust_network.hpp"

namespace ffdlt::test {

struct SignedEdge {
  NodeId src;
  NodeId dst;
  int sign;
  std::int64_t ts = kNoTimestamp;
};

inline TrustNetwork make_net(std::uint32_t n, const std::vector<SignedEdge>& edges) {
  std::vector<Edge> es;
  for (const auto& e : edges)
    es.push_back({e.src, e.dst, static_cast<std::int8_t>(e.sign), e.ts});
  return TrustNetwork::build(n, std::move(es), {});
}

/// Graph from weighted edges; signs follow the weight signs.
inline DiffusionGraph make_graph(std::uint32_t n,
                                 const std::vector<std::tuple<NodeId, NodeId, double>>& edges) {
  std::vector<Edge> es;
  std::map<std::pair<NodeId, NodeId>, double> weight_of;
  for (const auto& [u, v, w] : edges) {
    es.push_back({u, v, static_cast<std::int8_t>(w < 0 ? -1 : 1), kNoTimestamp});
    weight_of[{u, v}] = w;
  }
  auto net = std::make_shared<const TrustNetwork>(TrustNetwork::build(n, std::move(es), {}));
  std::vector<double> weights(net->edge_count());
  for (EdgeId id = 0; id < net->edge_count(); ++id) {
    const Edge& e = net->edges()[id];
    weights[id] = weight_of.at({e.src, e.dst});
  }
  return DiffusionGraph(net, std::move(weights));
}

inline NodeParams uniform_params(std::uint32_t n, double theta, double tau) {
  NodeParams np;
  np.theta.assign(n, theta);
  np.tau.assign(n, tau);
  return np;
}

/// Random signed digraph whose weights come from {0, +-0.25, +-0.5, +-1},
/// chosen per in-edge so the per-node cumulative constraints hold.
struct RandomInstance {
  std::shared_ptr<const TrustNetwork> net;
  std::vector<double> weights;  // by edge id
  NodeParams np;
  double delta = 0, lambda = 0, tie_prob_a = 1;
  Step horizon = 1;
  Step delay_b = 0;
  std::vector<NodeId> seeds_a, seeds_b;

  DiffusionGraph graph() const { return DiffusionGraph(net, weights); }
};

inline RandomInstance random_instance(std::mt19937_64& gen, std::uint32_t max_nodes = 6,
                                      double edge_prob = 0.45) {
  std::uniform_int_distribution<std::uint32_t> nd(2, max_nodes);
  std::uint32_t n = nd(gen);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) {
      if (u == v) continue;
      if (uniform_unit(gen) >= edge_prob) continue;
      std::int8_t sign = uniform_unit(gen) < 0.7 ? 1 : -1;
      edges.push_back({u, v, sign, kNoTimestamp});
    }
  auto net = std::make_shared<const TrustNetwork>(TrustNetwork::build(n, std::move(edges), {}));

  RandomInstance inst;
  inst.net = net;
  inst.weights.assign(net->edge_count(), 0.0);
  const double levels[] = {0.0, 0.25, 0.5, 1.0};
  auto assign = [&](auto entries, int sgn) {
    double budget = 1.0;
    for (const auto& entry : entries) {
      double feasible[4];
      int count = 0;
      for (double lv : levels)
        if (lv <= budget + 1e-12) feasible[count++] = lv;
      double w = feasible[static_cast<std::size_t>(uniform_unit(gen) * count)];
      budget -= w;
      inst.weights[entry.edge] = sgn * w;
    }
  };
  for (NodeId v = 0; v < n; ++v) {
    assign(net->in_pos(v), 1);
    assign(net->in_neg(v), -1);
  }

  inst.np.theta.resize(n);
  inst.np.tau.resize(n);
  const double taus[] = {0.0, 1.0, 2.0};
  for (NodeId v = 0; v < n; ++v) {
    inst.np.theta[v] = 1.0 - uniform_unit(gen);
    inst.np.tau[v] = taus[static_cast<std::size_t>(uniform_unit(gen) * 3)];
  }
  inst.delta = uniform_unit(gen) < 0.5 ? 0.0 : 0.1;
  inst.lambda = uniform_unit(gen) < 0.5 ? 0.0 : 5.0;
  const double probs[] = {0.0, 0.5, 1.0};
  inst.tie_prob_a = probs[static_cast<std::size_t>(uniform_unit(gen) * 3)];
  inst.horizon = 1 + static_cast<Step>(uniform_unit(gen) * 12);

  for (NodeId v = 0; v < n; ++v) {
    double u = uniform_unit(gen);
    if (u < 0.25) inst.seeds_a.push_back(v);
    else if (u < 0.5) inst.seeds_b.push_back(v);
  }
  inst.delay_b = static_cast<Step>(uniform_unit(gen) * inst.horizon);
  return inst;
}

}  // namespace ffdlt::test
