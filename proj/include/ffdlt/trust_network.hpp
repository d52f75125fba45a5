#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffdlt/types.hpp"

namespace ffdlt {

constexpr std::int64_t kNoTimestamp = std::numeric_limits<std::int64_t>::min();

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  std::int8_t sign = 0;                  // +1 trust, -1 distrust
  std::int64_t timestamp = kNoTimestamp;  // seconds; kNoTimestamp when absent
};

enum class EdgeListFormat { SnapSigned, KonectTimestamped };

/// Immutable directed signed graph. Node ids are dense 0..n-1 (assigned by
/// ascending original id); the original dataset ids are kept for reporting.
/// Edges are stored once, sorted by (src, dst), with per-node in/out adjacency
/// split by sign. Instances are safely shareable across threads.
class TrustNetwork {
 public:
  struct InEntry {
    NodeId src;
    EdgeId edge;
  };
  struct OutEntry {
    NodeId dst;
    EdgeId edge;
  };

  TrustNetwork() = default;

  /// Builds adjacency from an edge list. Edges are canonicalized (sorted by
  /// (src,dst)); throws std::invalid_argument on out-of-range ids, self-loops,
  /// zero signs or duplicate (src,dst) pairs.
  static TrustNetwork build(std::uint32_t node_count, std::vector<Edge> edges,
                            std::vector<std::int64_t> original_ids);

  std::uint32_t node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const InEntry> in_pos(NodeId v) const {
    return {in_pos_entries_.data() + in_pos_off_[v], in_pos_off_[v + 1] - in_pos_off_[v]};
  }
  std::span<const InEntry> in_neg(NodeId v) const {
    return {in_neg_entries_.data() + in_neg_off_[v], in_neg_off_[v + 1] - in_neg_off_[v]};
  }
  std::span<const OutEntry> out_pos(NodeId v) const {
    return {out_pos_entries_.data() + out_pos_off_[v], out_pos_off_[v + 1] - out_pos_off_[v]};
  }
  std::span<const OutEntry> out_neg(NodeId v) const {
    return {out_neg_entries_.data() + out_neg_off_[v], out_neg_off_[v + 1] - out_neg_off_[v]};
  }

  std::uint32_t in_pos_degree(NodeId v) const { return in_pos_off_[v + 1] - in_pos_off_[v]; }
  std::uint32_t in_neg_degree(NodeId v) const { return in_neg_off_[v + 1] - in_neg_off_[v]; }
  std::uint32_t in_degree(NodeId v) const { return in_pos_degree(v) + in_neg_degree(v); }
  std::uint32_t out_degree(NodeId v) const {
    return (out_pos_off_[v + 1] - out_pos_off_[v]) + (out_neg_off_[v + 1] - out_neg_off_[v]);
  }

  /// True when every edge carries a timestamp.
  bool has_timestamps() const { return has_timestamps_; }

  std::int64_t original_id(NodeId v) const { return original_ids_[v]; }
  const std::vector<std::int64_t>& original_ids() const { return original_ids_; }

  /// Membership test for a positive edge u->v (binary search on out_pos).
  bool has_pos_edge(NodeId u, NodeId v) const;

  /// Position of the CSR slice for v inside the flat positive/negative
  /// in-entry arrays; lets weight vectors be stored CSR-aligned.
  std::size_t in_pos_offset(NodeId v) const { return in_pos_off_[v]; }
  std::size_t in_neg_offset(NodeId v) const { return in_neg_off_[v]; }
  std::size_t in_pos_total() const { return in_pos_entries_.size(); }
  std::size_t in_neg_total() const { return in_neg_entries_.size(); }

 private:
  std::uint32_t node_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::int64_t> original_ids_;
  bool has_timestamps_ = false;

  std::vector<std::uint32_t> in_pos_off_, in_neg_off_, out_pos_off_, out_neg_off_;
  std::vector<InEntry> in_pos_entries_, in_neg_entries_;
  std::vector<OutEntry> out_pos_entries_, out_neg_entries_;
};

/// Parses a signed edge list. Comment lines start with '#' or '%'; fields are
/// space- or tab-separated. snap-signed lines are "src dst sign" (sign +-1);
/// konect lines are "src dst weight timestamp". Self-loops are dropped.
/// Parallel edges collapse to one: sign of the sign-sum (the edge is dropped
/// on an exact zero sum), earliest timestamp. Node ids are remapped to a
/// dense 0..n-1 range by ascending original id.
TrustNetwork parse_edge_list(std::istream& in, EdgeListFormat format);

/// File loader; decompresses ".gz" inputs transparently. When `format` is
/// absent it is sniffed from the first data line (3 fields = snap, 4 = konect).
TrustNetwork load_edge_list(const std::string& path,
                            std::optional<EdgeListFormat> format = std::nullopt);

/// Writes the network back out in the format it would be parsed from
/// (snap-signed, or konect with weight = sign when timestamps are present),
/// using original ids, edges sorted by (src, dst).
void serialize_edge_list(const TrustNetwork& net, std::ostream& out);

/// Node set of the largest strongly connected component (sorted ascending).
/// Ties on size are broken by the component with the smallest minimum node id.
std::vector<NodeId> largest_scc(const TrustNetwork& net);

/// Number of edges in the subgraph induced by `nodes` (sorted node list).
std::size_t induced_edge_count(const TrustNetwork& net, std::span<const NodeId> nodes);

enum class DiffusionContext { Full, Lcc };

/// Diffusion-context restriction. Full returns a copy. Lcc returns the
/// subgraph induced by the largest SCC plus the in-frontier: zero-in-degree
/// nodes of the full graph that have at least one out-edge into the SCC,
/// keeping only those out-edges (so exogenous-source seed strategies still
/// have candidates).
TrustNetwork restrict_for_diffusion(const TrustNetwork& net, DiffusionContext mode);

/// Fraction of positive (trust) edges. Throws std::invalid_argument on an
/// edgeless network.
double trust_fraction(const TrustNetwork& net);

}  // namespace ffdlt
