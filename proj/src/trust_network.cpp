#include "ffdlt/trust_network.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace ffdlt {

namespace {

struct RawRecord {
  std::int64_t src;
  std::int64_t dst;
  int sign;  // contribution to the sign sum; 0 allowed for zero-weight konect records
  std::int64_t timestamp;
};

// Splits a line into whitespace-separated fields (in place, no allocation).
int split_fields(std::string_view line, std::string_view* out, int max_fields) {
  int n = 0;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (n < max_fields) out[n] = line.substr(i, j - i);
    ++n;
    i = j;
  }
  return n;
}

std::int64_t parse_int(std::string_view s, std::size_t line_no, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return value;
}

double parse_double(std::string_view s, std::size_t line_no, const char* what) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line_no, std::string("invalid ") + what + " '" + std::string(s) + "'");
  return value;
}

}  // namespace

TrustNetwork TrustNetwork::build(std::uint32_t node_count, std::vector<Edge> edges,
                                 std::vector<std::int64_t> original_ids) {
  if (original_ids.empty()) {
    original_ids.resize(node_count);
    for (std::uint32_t v = 0; v < node_count; ++v) original_ids[v] = v;
  }
  if (original_ids.size() != node_count)
    throw std::invalid_argument("original_ids size does not match node_count");

  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src >= node_count || e.dst >= node_count)
      throw std::invalid_argument("edge endpoint out of range");
    if (e.src == e.dst) throw std::invalid_argument("self-loop in edge list");
    if (e.sign != 1 && e.sign != -1) throw std::invalid_argument("edge sign must be +-1");
    if (i > 0 && edges[i - 1].src == e.src && edges[i - 1].dst == e.dst)
      throw std::invalid_argument("duplicate (src,dst) pair in edge list");
  }

  TrustNetwork net;
  net.node_count_ = node_count;
  net.edges_ = std::move(edges);
  net.original_ids_ = std::move(original_ids);
  net.has_timestamps_ =
      !net.edges_.empty() &&
      std::all_of(net.edges_.begin(), net.edges_.end(),
                  [](const Edge& e) { return e.timestamp != kNoTimestamp; });

  const std::size_t n = node_count;
  auto build_csr = [&](auto select, auto& offsets, auto& entries, bool by_dst) {
    offsets.assign(n + 1, 0);
    for (const Edge& e : net.edges_)
      if (select(e)) ++offsets[(by_dst ? e.dst : e.src) + 1];
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    entries.resize(offsets[n]);
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (EdgeId id = 0; id < net.edges_.size(); ++id) {
      const Edge& e = net.edges_[id];
      if (!select(e)) continue;
      if (by_dst)
        entries[cursor[e.dst]++] = {e.src, id};
      else
        entries[cursor[e.src]++] = {e.dst, id};
    }
  };
  build_csr([](const Edge& e) { return e.sign > 0; }, net.in_pos_off_, net.in_pos_entries_, true);
  build_csr([](const Edge& e) { return e.sign < 0; }, net.in_neg_off_, net.in_neg_entries_, true);
  build_csr([](const Edge& e) { return e.sign > 0; }, net.out_pos_off_, net.out_pos_entries_,
            false);
  build_csr([](const Edge& e) { return e.sign < 0; }, net.out_neg_off_, net.out_neg_entries_,
            false);
  return net;
}

bool TrustNetwork::has_pos_edge(NodeId u, NodeId v) const {
  auto span = out_pos(u);
  auto it = std::lower_bound(span.begin(), span.end(), v,
                             [](const OutEntry& e, NodeId x) { return e.dst < x; });
  return it != span.end() && it->dst == v;
}

TrustNetwork parse_edge_list(std::istream& in, EdgeListFormat format) {
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  std::string_view fields[5];

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    // skip blank and comment lines
    std::size_t first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    if (view[first] == '#' || view[first] == '%') continue;

    int nf = split_fields(view, fields, 5);
    RawRecord rec{};
    if (format == EdgeListFormat::SnapSigned) {
      if (nf != 3) throw ParseError(line_no, "expected 3 fields (src dst sign)");
      rec.src = parse_int(fields[0], line_no, "source id");
      rec.dst = parse_int(fields[1], line_no, "destination id");
      std::int64_t s = parse_int(fields[2], line_no, "sign");
      if (s != 1 && s != -1) throw ParseError(line_no, "sign must be +1 or -1");
      rec.sign = static_cast<int>(s);
      rec.timestamp = kNoTimestamp;
    } else {
      if (nf < 4)
        throw ParseError(line_no, nf == 3 ? "konect record without timestamp"
                                          : "expected 4 fields (src dst weight timestamp)");
      if (nf > 4) throw ParseError(line_no, "expected 4 fields (src dst weight timestamp)");
      rec.src = parse_int(fields[0], line_no, "source id");
      rec.dst = parse_int(fields[1], line_no, "destination id");
      double w = parse_double(fields[2], line_no, "weight");
      rec.sign = (w > 0) - (w < 0);
      rec.timestamp = parse_int(fields[3], line_no, "timestamp");
    }
    if (rec.src < 0 || rec.dst < 0) throw ParseError(line_no, "negative node id");
    records.push_back(rec);
  }

  // Dense remap by ascending original id.
  std::vector<std::int64_t> ids;
  ids.reserve(records.size() * 2);
  for (const RawRecord& r : records) {
    ids.push_back(r.src);
    ids.push_back(r.dst);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::int64_t orig) -> NodeId {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), orig) - ids.begin());
  };

  // Collapse parallel edges (self-loops dropped first).
  struct PairAcc {
    NodeId src, dst;
    int sign_sum;
    std::int64_t min_ts;
  };
  std::vector<PairAcc> acc;
  acc.reserve(records.size());
  for (const RawRecord& r : records) {
    if (r.src == r.dst) continue;
    acc.push_back({dense(r.src), dense(r.dst), r.sign, r.timestamp});
  }
  std::sort(acc.begin(), acc.end(), [](const PairAcc& a, const PairAcc& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });

  std::vector<Edge> edges;
  edges.reserve(acc.size());
  for (std::size_t i = 0; i < acc.size();) {
    std::size_t j = i;
    int sign_sum = 0;
    std::int64_t min_ts = kNoTimestamp;
    for (; j < acc.size() && acc[j].src == acc[i].src && acc[j].dst == acc[i].dst; ++j) {
      sign_sum += acc[j].sign_sum;
      if (acc[j].min_ts != kNoTimestamp && (min_ts == kNoTimestamp || acc[j].min_ts < min_ts))
        min_ts = acc[j].min_ts;
    }
    if (sign_sum != 0)
      edges.push_back({acc[i].src, acc[i].dst, static_cast<std::int8_t>(sign_sum > 0 ? 1 : -1),
                       min_ts});
    i = j;
  }

  return TrustNetwork::build(static_cast<std::uint32_t>(ids.size()), std::move(edges),
                             std::move(ids));
}

namespace {

std::string read_file_maybe_gz(const std::string& path) {
  bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
  if (!gz) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  gzFile f = gzopen(path.c_str(), "rb");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string out;
  char buf[1 << 16];
  int got;
  while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
  bool bad = got < 0;
  gzclose(f);
  if (bad) throw std::runtime_error("gzip read error in " + path);
  return out;
}

EdgeListFormat sniff_format(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string_view fields[5];
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    std::size_t first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos || view[first] == '#' || view[first] == '%') continue;
    int nf = split_fields(view, fields, 5);
    if (nf == 3) return EdgeListFormat::SnapSigned;
    if (nf == 4) return EdgeListFormat::KonectTimestamped;
    throw std::runtime_error("cannot sniff edge-list format: first data line has " +
                             std::to_string(nf) + " fields");
  }
  throw std::runtime_error("cannot sniff edge-list format: no data lines");
}

}  // namespace

TrustNetwork load_edge_list(const std::string& path, std::optional<EdgeListFormat> format) {
  std::string text = read_file_maybe_gz(path);
  EdgeListFormat fmt = format ? *format : sniff_format(text);
  std::istringstream in(text);
  return parse_edge_list(in, fmt);
}

void serialize_edge_list(const TrustNetwork& net, std::ostream& out) {
  bool ts = net.has_timestamps();
  for (const Edge& e : net.edges()) {
    out << net.original_id(e.src) << ' ' << net.original_id(e.dst) << ' '
        << static_cast<int>(e.sign);
    if (ts) out << ' ' << e.timestamp;
    out << '\n';
  }
}

std::vector<NodeId> largest_scc(const TrustNetwork& net) {
  const std::uint32_t n = net.node_count();
  if (n == 0) return {};

  // Iterative Tarjan; recursion would overflow on path-like components.
  constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(n, kUnvisited), lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  struct Frame {
    NodeId v;
    std::uint32_t child;  // next out-entry to visit (pos entries first, then neg)
  };
  std::vector<Frame> call;
  std::uint32_t next_index = 0;

  std::vector<NodeId> best;  // current largest SCC
  NodeId best_min = 0;

  auto out_entry = [&](NodeId v, std::uint32_t i) -> NodeId {
    auto pos = net.out_pos(v);
    if (i < pos.size()) return pos[i].dst;
    return net.out_neg(v)[i - pos.size()].dst;
  };
  auto out_total = [&](NodeId v) {
    return static_cast<std::uint32_t>(net.out_pos(v).size() + net.out_neg(v).size());
  };

  for (NodeId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      if (f.child < out_total(f.v)) {
        NodeId w = out_entry(f.v, f.child++);
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
      } else {
        NodeId v = f.v;
        call.pop_back();
        if (!call.empty()) lowlink[call.back().v] = std::min(lowlink[call.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          std::vector<NodeId> comp;
          NodeId w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
          } while (w != v);
          NodeId comp_min = *std::min_element(comp.begin(), comp.end());
          if (comp.size() > best.size() ||
              (comp.size() == best.size() && (best.empty() || comp_min < best_min))) {
            best = std::move(comp);
            best_min = comp_min;
          }
        }
      }
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

std::size_t induced_edge_count(const TrustNetwork& net, std::span<const NodeId> nodes) {
  std::vector<bool> in_set(net.node_count(), false);
  for (NodeId v : nodes) in_set[v] = true;
  std::size_t count = 0;
  for (const Edge& e : net.edges())
    if (in_set[e.src] && in_set[e.dst]) ++count;
  return count;
}

TrustNetwork restrict_for_diffusion(const TrustNetwork& net, DiffusionContext mode) {
  if (mode == DiffusionContext::Full)
    return TrustNetwork::build(net.node_count(), net.edges(), net.original_ids());

  std::vector<NodeId> scc = largest_scc(net);
  std::vector<bool> in_scc(net.node_count(), false);
  for (NodeId v : scc) in_scc[v] = true;

  // In-frontier: zero-in-degree nodes with at least one out-edge into the SCC.
  std::vector<bool> keep = in_scc;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (keep[v] || net.in_degree(v) != 0) continue;
    bool feeds = false;
    for (const auto& e : net.out_pos(v))
      if (in_scc[e.dst]) { feeds = true; break; }
    if (!feeds)
      for (const auto& e : net.out_neg(v))
        if (in_scc[e.dst]) { feeds = true; break; }
    keep[v] = feeds;
  }

  std::vector<NodeId> remap(net.node_count(), 0);
  std::vector<std::int64_t> orig;
  std::uint32_t next = 0;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    if (!keep[v]) continue;
    remap[v] = next++;
    orig.push_back(net.original_id(v));
  }

  std::vector<Edge> edges;
  for (const Edge& e : net.edges()) {
    bool take = (in_scc[e.src] && in_scc[e.dst]) || (keep[e.src] && !in_scc[e.src] && in_scc[e.dst]);
    if (take) edges.push_back({remap[e.src], remap[e.dst], e.sign, e.timestamp});
  }
  return TrustNetwork::build(next, std::move(edges), std::move(orig));
}

double trust_fraction(const TrustNetwork& net) {
  if (net.edge_count() == 0) throw std::invalid_argument("trust_fraction: network has no edges");
  std::size_t pos = 0;
  for (const Edge& e : net.edges())
    if (e.sign > 0) ++pos;
  return static_cast<double>(pos) / static_cast<double>(net.edge_count());
}

}  // namespace ffdlt
