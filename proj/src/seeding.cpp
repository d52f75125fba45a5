#include "ffdlt/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ffdlt {

std::vector<NodeId> SeedRanking::top_k() const {
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), entries.size());
  std::vector<NodeId> out(take);
  for (std::size_t i = 0; i < take; ++i) out[i] = entries[i].node;
  return out;
}

namespace {

void rank_and_trim(SeedRanking& r, int k) {
  std::sort(r.entries.begin(), r.entries.end(),
            [](const SeedRanking::Entry& a, const SeedRanking::Entry& b) {
              return a.score != b.score ? a.score > b.score : a.node < b.node;
            });
  r.k = k;
  r.shortfall = r.entries.size() < static_cast<std::size_t>(k);
}

SeedRanking rank_sources(const DiffusionGraph& g, int k, bool malicious) {
  if (k < 1) throw std::invalid_argument("seed budget k must be >= 1");
  const TrustNetwork& net = g.net();

  // Out-weight sums per node, one pass over the sampled edges.
  std::vector<double> pos_sum(net.node_count(), 0.0), neg_sum(net.node_count(), 0.0);
  for (EdgeId id = 0; id < net.edge_count(); ++id) {
    double w = g.weight(id);
    NodeId src = net.edges()[id].src;
    if (w > 0) pos_sum[src] += w;
    else neg_sum[src] -= w;
  }

  SeedRanking r;
  r.strategy = malicious ? "m-sources" : "i-sources";
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.in_degree(v) != 0) continue;  // exogenous: no incoming links
    std::uint32_t out_deg = net.out_degree(v);
    if (out_deg == 0) continue;
    double total = pos_sum[v] + neg_sum[v];
    if (total == 0.0) continue;  // every out-weight sampled to zero
    double fraction = (malicious ? neg_sum[v] : pos_sum[v]) / total;
    r.entries.push_back({v, fraction * std::log(static_cast<double>(out_deg))});
  }
  rank_and_trim(r, k);
  return r;
}

}  // namespace

SeedRanking rank_m_sources(const DiffusionGraph& g, int k) { return rank_sources(g, k, true); }

SeedRanking rank_i_sources(const DiffusionGraph& g, int k) { return rank_sources(g, k, false); }

SeedRanking stress_triads(const TrustNetwork& net, int k) {
  if (k < 1) throw std::invalid_argument("seed budget k must be >= 1");
  std::vector<std::int64_t> triads(net.node_count(), 0);
  // For each distrust edge (z,v), each trusted in-neighbor u of v closes a
  // stress triad if the trust edge z->u exists.
  for (const Edge& e : net.edges()) {
    if (e.sign >= 0) continue;
    NodeId z = e.src, v = e.dst;
    for (const auto& in : net.in_pos(v))
      if (net.has_pos_edge(z, in.src)) ++triads[z];
  }
  SeedRanking r;
  r.strategy = "stress-triads";
  for (NodeId z = 0; z < net.node_count(); ++z)
    if (triads[z] > 0) r.entries.push_back({z, static_cast<double>(triads[z])});
  rank_and_trim(r, k);
  return r;
}

SeedRanking newcomers(const TrustNetwork& net, int k, NewcomerBin which, bool inverted) {
  if (k < 1) throw std::invalid_argument("seed budget k must be >= 1");
  if (!net.has_timestamps())
    throw std::invalid_argument("newcomer strategies require timestamped edges");

  struct Newcomer {
    NodeId node;
    std::int64_t start_time;
    std::uint32_t out_degree;
  };
  std::vector<Newcomer> found;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (net.in_degree(v) == 0 || net.out_degree(v) == 0) continue;
    std::int64_t in_min = std::numeric_limits<std::int64_t>::max(), in_max = kNoTimestamp;
    for (const auto& e : net.in_pos(v)) {
      std::int64_t ts = net.edges()[e.edge].timestamp;
      in_min = std::min(in_min, ts);
      in_max = std::max(in_max, ts);
    }
    for (const auto& e : net.in_neg(v)) {
      std::int64_t ts = net.edges()[e.edge].timestamp;
      in_min = std::min(in_min, ts);
      in_max = std::max(in_max, ts);
    }
    std::int64_t out_min = std::numeric_limits<std::int64_t>::max();
    for (const auto& e : net.out_pos(v))
      out_min = std::min(out_min, net.edges()[e.edge].timestamp);
    for (const auto& e : net.out_neg(v))
      out_min = std::min(out_min, net.edges()[e.edge].timestamp);

    bool is_newcomer = inverted ? in_min > out_min : in_max < out_min;
    if (is_newcomer) found.push_back({v, in_min, net.out_degree(v)});
  }

  std::sort(found.begin(), found.end(), [](const Newcomer& a, const Newcomer& b) {
    return a.start_time != b.start_time ? a.start_time < b.start_time : a.node < b.node;
  });

  // Equal-frequency split into two bins; the extra node of an odd count goes
  // to the older bin.
  std::size_t older = (found.size() + 1) / 2;
  std::size_t lo = which == NewcomerBin::LeastNew ? 0 : older;
  std::size_t hi = which == NewcomerBin::LeastNew ? older : found.size();

  SeedRanking r;
  r.strategy = which == NewcomerBin::LeastNew ? "least-new" : "most-new";
  for (std::size_t i = lo; i < hi; ++i)
    r.entries.push_back({found[i].node, static_cast<double>(found[i].out_degree)});
  rank_and_trim(r, k);
  return r;
}

void write_ranking_csv(const SeedRanking& ranking, const TrustNetwork& net, std::ostream& out) {
  out << "rank,node,score\n";
  std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(ranking.k),
                                           ranking.entries.size());
  for (std::size_t i = 0; i < take; ++i) {
    const auto& e = ranking.entries[i];
    out << (i + 1) << ',' << net.original_id(e.node) << ',' << e.score << '\n';
  }
}

}  // namespace ffdlt
