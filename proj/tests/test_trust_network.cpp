#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"

using namespace ffdlt;

namespace {

TrustNetwork parse(const std::string& text, EdgeListFormat fmt = EdgeListFormat::SnapSigned) {
  std::istringstream in(text);
  return parse_edge_list(in, fmt);
}

}  // namespace

TEST_CASE("parse collapses duplicate positive edges") {
  TrustNetwork net = parse("0 1 1\n0 1 1\n1 2 -1\n");
  CHECK(net.node_count() == 3);
  REQUIRE(net.edge_count() == 2);
  CHECK(net.edges()[0].src == 0);
  CHECK(net.edges()[0].dst == 1);
  CHECK(net.edges()[0].sign == 1);
  CHECK(net.edges()[1].src == 1);
  CHECK(net.edges()[1].dst == 2);
  CHECK(net.edges()[1].sign == -1);
}

TEST_CASE("parse drops zero-sum parallel edges but keeps their endpoints") {
  TrustNetwork net = parse("0 1 -1\n0 1 1\n");
  CHECK(net.node_count() == 2);
  CHECK(net.edge_count() == 0);
}

TEST_CASE("parse skips comments and blank lines, handles tabs") {
  TrustNetwork net = parse("# header\n% other header\n\n0\t1\t1\n  2 0 -1\n");
  CHECK(net.node_count() == 3);
  CHECK(net.edge_count() == 2);
}

TEST_CASE("parse drops self-loops but registers the node") {
  TrustNetwork net = parse("0 0 1\n1 2 1\n");
  CHECK(net.node_count() == 3);
  CHECK(net.edge_count() == 1);
}

TEST_CASE("node ids are remapped densely by ascending original id") {
  TrustNetwork net = parse("100 7 1\n7 50 -1\n");
  REQUIRE(net.node_count() == 3);
  CHECK(net.original_id(0) == 7);
  CHECK(net.original_id(1) == 50);
  CHECK(net.original_id(2) == 100);
  // 100 -> 7 becomes 2 -> 0
  CHECK(net.edges()[0].src == 0);  // 7 -> 50
  CHECK(net.edges()[0].dst == 1);
  CHECK(net.edges()[1].src == 2);
  CHECK(net.edges()[1].dst == 0);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse("0 1 1\n0 x 1\n"), doctest::Contains("line 2"), ParseError);
  CHECK_THROWS_WITH_AS(parse("0 1 0\n"), doctest::Contains("sign"), ParseError);
  CHECK_THROWS_WITH_AS(parse("0 1\n"), doctest::Contains("3 fields"), ParseError);
  CHECK_THROWS_WITH_AS(parse("0 1 1 5 9\n"), doctest::Contains("line 1"), ParseError);
  CHECK_THROWS_AS(parse("-3 1 1\n"), ParseError);
}

TEST_CASE("konect format parses weights and timestamps") {
  TrustNetwork net = parse("% meta\n1 2 1 100\n2 3 -4 50\n", EdgeListFormat::KonectTimestamped);
  REQUIRE(net.edge_count() == 2);
  CHECK(net.has_timestamps());
  CHECK(net.edges()[0].sign == 1);
  CHECK(net.edges()[0].timestamp == 100);
  CHECK(net.edges()[1].sign == -1);  // sign of the weight
  CHECK(net.edges()[1].timestamp == 50);
}

TEST_CASE("konect record without timestamp is a parse error") {
  CHECK_THROWS_WITH_AS(parse("1 2 1\n", EdgeListFormat::KonectTimestamped),
                       doctest::Contains("timestamp"), ParseError);
}

TEST_CASE("konect parallel edges keep the earliest timestamp and the sign sum") {
  TrustNetwork net =
      parse("1 2 1 300\n1 2 1 100\n1 2 -1 50\n", EdgeListFormat::KonectTimestamped);
  REQUIRE(net.edge_count() == 1);
  CHECK(net.edges()[0].sign == 1);  // +1 +1 -1
  CHECK(net.edges()[0].timestamp == 50);
}

TEST_CASE("adjacency indexes are consistent with the edge list") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto inst = test::random_instance(gen, 10, 0.3);
    const TrustNetwork& net = *inst.net;
    std::size_t in_total = 0, out_total = 0;
    for (NodeId v = 0; v < net.node_count(); ++v) {
      for (const auto& e : net.in_pos(v)) {
        CHECK(net.edges()[e.edge].dst == v);
        CHECK(net.edges()[e.edge].src == e.src);
        CHECK(net.edges()[e.edge].sign == 1);
      }
      for (const auto& e : net.in_neg(v)) {
        CHECK(net.edges()[e.edge].dst == v);
        CHECK(net.edges()[e.edge].sign == -1);
      }
      for (const auto& e : net.out_pos(v)) CHECK(net.edges()[e.edge].src == v);
      for (const auto& e : net.out_neg(v)) CHECK(net.edges()[e.edge].src == v);
      in_total += net.in_degree(v);
      out_total += net.out_degree(v);
    }
    CHECK(in_total == net.edge_count());
    CHECK(out_total == net.edge_count());
  }
}

TEST_CASE("serialize/parse round-trip is the identity") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = test::random_instance(gen, 9, 0.4);
    const TrustNetwork& net = *inst.net;
    if (net.edge_count() == 0) continue;
    std::ostringstream out;
    serialize_edge_list(net, out);
    TrustNetwork again = parse(out.str());
    // Isolated nodes are not representable in an edge list; restrict the
    // check to graphs where every node carries an edge.
    bool all_touched = true;
    for (NodeId v = 0; v < net.node_count(); ++v)
      if (net.in_degree(v) + net.out_degree(v) == 0) all_touched = false;
    if (!all_touched) continue;
    REQUIRE(again.node_count() == net.node_count());
    REQUIRE(again.edge_count() == net.edge_count());
    for (EdgeId id = 0; id < net.edge_count(); ++id) {
      CHECK(again.edges()[id].src == net.edges()[id].src);
      CHECK(again.edges()[id].dst == net.edges()[id].dst);
      CHECK(again.edges()[id].sign == net.edges()[id].sign);
    }
  }
}

TEST_CASE("gzip input is decompressed by extension") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "ffdlt_test_edges.txt.gz";
  gzFile f = gzopen(path.string().c_str(), "wb");
  REQUIRE(f != nullptr);
  const char* text = "# gz test\n0 1 1\n1 2 -1\n";
  gzwrite(f, text, static_cast<unsigned>(std::strlen(text)));
  gzclose(f);

  TrustNetwork net = load_edge_list(path.string());  // format sniffed
  CHECK(net.node_count() == 3);
  CHECK(net.edge_count() == 2);
  fs::remove(path);
}

TEST_CASE("format sniffing distinguishes snap from konect") {
  namespace fs = std::filesystem;
  fs::path path = fs::temp_directory_path() / "ffdlt_test_sniff.txt";
  {
    std::ofstream f(path);
    f << "% comment\n3 4 -1 77\n";
  }
  TrustNetwork net = load_edge_list(path.string());
  CHECK(net.has_timestamps());
  CHECK(net.edges()[0].timestamp == 77);
  fs::remove(path);
}

// --- largest_scc ---------------------------------------------------------

namespace {

// Reachability-based SCC oracle, O(n*(n+m)).
std::vector<NodeId> naive_largest_scc(const TrustNetwork& net) {
  std::uint32_t n = net.node_count();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (NodeId s = 0; s < n; ++s) {
    std::vector<NodeId> stack{s};
    reach[s][s] = true;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      auto visit = [&](NodeId w) {
        if (!reach[s][w]) {
          reach[s][w] = true;
          stack.push_back(w);
        }
      };
      for (const auto& e : net.out_pos(v)) visit(e.dst);
      for (const auto& e : net.out_neg(v)) visit(e.dst);
    }
  }
  std::vector<bool> used(n, false);
  std::vector<NodeId> best;
  for (NodeId v = 0; v < n; ++v) {
    if (used[v]) continue;
    std::vector<NodeId> comp;
    for (NodeId u = v; u < n; ++u)
      if (reach[v][u] && reach[u][v]) {
        comp.push_back(u);
        used[u] = true;
      }
    if (comp.size() > best.size()) best = comp;  // first component has the smallest min id
  }
  return best;
}

}  // namespace

TEST_CASE("largest_scc finds the cycle and ignores the dangler") {
  TrustNetwork net = test::make_net(4, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {2, 3, 1}});
  std::vector<NodeId> scc = largest_scc(net);
  CHECK(scc == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("largest_scc tie-breaks by smallest minimum node id") {
  TrustNetwork net = test::make_net(5, {{3, 4, 1}});  // all SCCs singletons
  std::vector<NodeId> scc = largest_scc(net);
  CHECK(scc == std::vector<NodeId>{0});
}

TEST_CASE("largest_scc matches the reachability oracle on random graphs") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 200; ++trial) {
    auto inst = test::random_instance(gen, 12, 0.2);
    CHECK(largest_scc(*inst.net) == naive_largest_scc(*inst.net));
  }
}

// --- restrict_for_diffusion ----------------------------------------------

TEST_CASE("restrict mode full is the identity") {
  TrustNetwork net = test::make_net(4, {{0, 1, 1}, {1, 2, -1}, {2, 0, 1}, {0, 3, 1}});
  TrustNetwork full = restrict_for_diffusion(net, DiffusionContext::Full);
  CHECK(full.node_count() == net.node_count());
  CHECK(full.edge_count() == net.edge_count());
}

TEST_CASE("restrict mode lcc keeps the zero-in-degree in-frontier") {
  // s -> {a,b,c} star; a,b,c form a cycle. s must survive with its edges.
  TrustNetwork net = test::make_net(
      4, {{3, 0, 1}, {3, 1, -1}, {3, 2, 1}, {0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  TrustNetwork lcc = restrict_for_diffusion(net, DiffusionContext::Lcc);
  CHECK(lcc.node_count() == 4);
  CHECK(lcc.edge_count() == 6);
  // frontier-only out-edges: edges into the SCC survive, others do not
  TrustNetwork with_stray = test::make_net(
      5, {{3, 0, 1}, {3, 4, 1}, {0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  TrustNetwork lcc2 = restrict_for_diffusion(with_stray, DiffusionContext::Lcc);
  CHECK(lcc2.node_count() == 4);  // 0,1,2 + frontier 3; node 4 dropped
  CHECK(lcc2.edge_count() == 4);  // 3->4 dropped
}

TEST_CASE("restrict mode lcc picks the larger of two cycles") {
  TrustNetwork net = test::make_net(8, {{0, 1, 1},
                                        {1, 2, 1},
                                        {2, 0, 1},
                                        {3, 4, 1},
                                        {4, 5, 1},
                                        {5, 6, 1},
                                        {6, 7, 1},
                                        {7, 3, 1}});
  TrustNetwork lcc = restrict_for_diffusion(net, DiffusionContext::Lcc);
  CHECK(lcc.node_count() == 5);
  CHECK(lcc.edge_count() == 5);
  CHECK(lcc.original_id(0) == 3);
}

// --- trust_fraction -------------------------------------------------------

TEST_CASE("trust_fraction counts positive edges") {
  TrustNetwork net = test::make_net(5, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, -1}});
  CHECK(trust_fraction(net) == doctest::Approx(0.75));
  TrustNetwork all_neg = test::make_net(3, {{0, 1, -1}, {1, 2, -1}});
  CHECK(trust_fraction(all_neg) == 0.0);
  TrustNetwork empty = test::make_net(3, {});
  CHECK_THROWS_AS(trust_fraction(empty), std::invalid_argument);
}
