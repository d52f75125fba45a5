#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ffdlt/diffusion_graph.hpp"

namespace ffdlt {

/// Ranked seed candidates, scores non-increasing, score ties broken by
/// ascending node id. `shortfall` is set when fewer than k candidates exist
/// (all candidates are still returned).
struct SeedRanking {
  struct Entry {
    NodeId node;
    double score;
  };
  std::string strategy;
  int k = 0;
  bool shortfall = false;
  std::vector<Entry> entries;

  /// The selected seed set: first min(k, size) nodes.
  std::vector<NodeId> top_k() const;
};

/// Malicious exogenous sources: nodes with no in-edges and at least one
/// out-edge, scored (W-/(W- + W+)) * ln(out-degree) over the sampled
/// out-weights; nodes whose out-weights all sampled to zero are excluded.
SeedRanking rank_m_sources(const DiffusionGraph& g, int k);

/// Influential trusted exogenous sources: same candidates, scored
/// (W+/(W- + W+)) * ln(out-degree).
SeedRanking rank_i_sources(const DiffusionGraph& g, int k);

/// Stress-nodes: z participating in triads (z->v distrust, u->v trust,
/// z->u trust), scored by triad count. Signs come from the raw network;
/// weight magnitudes are irrelevant.
SeedRanking stress_triads(const TrustNetwork& net, int k);

enum class NewcomerBin { LeastNew, MostNew };

/// Newcomers: nodes whose incoming edges are all older than their oldest
/// outgoing edge (flip the comparison with `inverted`); start-time is the
/// oldest incoming timestamp. Newcomers are split by start-time into two
/// equal-frequency bins (odd counts put the extra node in the older bin);
/// LeastNew draws from the older bin, MostNew from the newer, ranked by
/// out-degree. Requires timestamped edges.
SeedRanking newcomers(const TrustNetwork& net, int k, NewcomerBin which, bool inverted = false);

/// CSV export: header `rank,node,score`, nodes written as original ids.
void write_ranking_csv(const SeedRanking& ranking, const TrustNetwork& net, std::ostream& out);

}  // namespace ffdlt
