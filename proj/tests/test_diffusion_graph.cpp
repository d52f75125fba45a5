#include "doctest.h"
#include "helpers.hpp"

using namespace ffdlt;

TEST_CASE("sample_weights is deterministic at p = 1 (single in-neighbor)") {
  auto net = std::make_shared<const TrustNetwork>(test::make_net(2, {{0, 1, 1}}));
  std::mt19937_64 rng(1);
  DiffusionGraph g = sample_weights(net, 1.0, rng);
  CHECK(g.weight(0) == 1.0);  // Binomial(1,1)/1^2
}

TEST_CASE("sample_weights at p = 0 yields all-zero weights") {
  std::mt19937_64 gen(3);
  auto inst = test::random_instance(gen, 8, 0.4);
  std::mt19937_64 rng(5);
  DiffusionGraph g = sample_weights(inst.net, 0.0, rng);
  for (EdgeId id = 0; id < inst.net->edge_count(); ++id) CHECK(g.weight(id) == 0.0);
}

TEST_CASE("expected cumulative trusted influence equals p") {
  // v (node 4) trusts 4 in-neighbors; E[sum w] = n * np / n^2 = p.
  auto net = std::make_shared<const TrustNetwork>(
      test::make_net(5, {{0, 4, 1}, {1, 4, 1}, {2, 4, 1}, {3, 4, 1}}));
  std::mt19937_64 rng(99);
  double total = 0.0;
  const int samplings = 10000;
  for (int i = 0; i < samplings; ++i) {
    DiffusionGraph g = sample_weights(net, 0.5, rng);
    for (EdgeId id = 0; id < 4; ++id) total += g.weight(id);
  }
  CHECK(total / samplings == doctest::Approx(0.5).epsilon(0.04));  // 0.5 +- 0.02
}

TEST_CASE("sampled graphs satisfy the cumulative constraints") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    auto inst = test::random_instance(gen, 12, 0.5);
    std::mt19937_64 rng(trial);
    DiffusionGraph g = sample_weights(inst.net, 0.6, rng);
    const TrustNetwork& net = *inst.net;
    for (NodeId v = 0; v < net.node_count(); ++v) {
      double pos = 0, neg = 0;
      for (double w : g.in_pos_weights(v)) {
        CHECK(w >= 0.0);
        pos += w;
      }
      for (double w : g.in_neg_abs_weights(v)) {
        CHECK(w >= 0.0);
        neg += w;
      }
      CHECK(pos <= 1.0 + 1e-12);
      CHECK(neg <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("sample_weights with the same seed is bit-identical") {
  std::mt19937_64 gen(31);
  auto inst = test::random_instance(gen, 10, 0.5);
  std::mt19937_64 rng1(42), rng2(42);
  DiffusionGraph a = sample_weights(inst.net, 0.7, rng1);
  DiffusionGraph b = sample_weights(inst.net, 0.7, rng2);
  CHECK(a.weights() == b.weights());
  CHECK(a.digest() == b.digest());
}

TEST_CASE("DiffusionGraph validates weights against the network") {
  auto net = std::make_shared<const TrustNetwork>(test::make_net(2, {{0, 1, 1}}));
  CHECK_THROWS_AS(DiffusionGraph(net, {-0.5}), std::invalid_argument);  // wrong sign
  CHECK_THROWS_AS(DiffusionGraph(net, {1.5}), std::invalid_argument);   // out of range
  CHECK_THROWS_AS(DiffusionGraph(net, {0.5, 0.5}), std::invalid_argument);  // size mismatch
  CHECK_NOTHROW(DiffusionGraph(net, {0.0}));  // zero weight on a positive edge is fine

  auto net2 = std::make_shared<const TrustNetwork>(test::make_net(3, {{0, 2, 1}, {1, 2, 1}}));
  CHECK_THROWS_AS(DiffusionGraph(net2, {0.8, 0.8}), std::invalid_argument);  // sum > 1
}
