#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace ffdlt;

TEST_CASE("activation_threshold evaluates the time-varying form") {
  CHECK(activation_threshold(0.6, 0.1, 5, 3) == doctest::Approx(0.8));  // theta + delta*2
  CHECK(activation_threshold(0.6, 0.0, 100, 3) == 0.6);                 // delta = 0
  CHECK(activation_threshold(0.6, 0.1, 7, std::nullopt) == 0.6);        // never activated
  CHECK(activation_threshold(0.2, 0.1, 20, 0) == 1.0);                  // min{8,20} = 8; saturated
}

TEST_CASE("activation_threshold saturates exactly at 1") {
  // Held for at least ceil((1-theta)/delta) steps => exactly 1.
  double theta = 0.35, delta = 0.1;
  Step needed = static_cast<Step>(std::ceil((1.0 - theta) / delta));
  CHECK(activation_threshold(theta, delta, needed, 0) == 1.0);
  CHECK(activation_threshold(theta, delta, needed + 50, 0) == 1.0);
  CHECK(activation_threshold(theta, delta, needed - 1, 0) < 1.0);
}

TEST_CASE("activation_threshold stays within [theta, 1] and is non-decreasing in t") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 300; ++trial) {
    double theta = 1.0 - uniform_unit(gen);
    double delta = 0.5 * uniform_unit(gen);
    double prev = 0.0;
    for (Step held = 0; held <= 100; ++held) {
      double g = activation_threshold(theta, delta, held, 0);
      CHECK(g >= theta);
      CHECK(g <= 1.0);
      CHECK(g >= prev);
      prev = g;
    }
  }
}

TEST_CASE("quiescence_duration evaluates the exponential form") {
  CHECK(quiescence_duration(2.0, 5.0, 0.2) == doctest::Approx(2.0 + std::exp(1.0)));
  CHECK(quiescence_duration(3.0, 0.0, 0.9) == 3.0);  // lambda = 0 disables the term entirely
  CHECK(quiescence_duration(0.0, 5.0, 0.0) == 1.0);  // exp(0) = 1
}

TEST_CASE("quiescence_duration is monotone and at least tau") {
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 300; ++trial) {
    double tau = 5.0 * uniform_unit(gen);
    double lambda = 5.0 * uniform_unit(gen);
    double mass = uniform_unit(gen);
    double q = quiescence_duration(tau, lambda, mass);
    CHECK(q >= tau);
    CHECK(quiescence_duration(tau, lambda, std::min(1.0, mass + 0.1)) >= q);
    CHECK(quiescence_duration(tau, lambda + 0.5, mass) >= q);
  }
}

TEST_CASE("trusted_influence matches the worked three-node example") {
  // u -> v: 0.3, z -> v: 0.5 with u,z active.
  DiffusionGraph g = test::make_graph(3, {{0, 2, 0.3}, {1, 2, 0.5}});
  std::vector<bool> active{true, true, false};
  CHECK(trusted_influence(g, 2, active) == doctest::Approx(0.8));
  std::vector<bool> none(3, false);
  CHECK(trusted_influence(g, 2, none) == 0.0);
}

TEST_CASE("distrusted_active_mass sums |w| over active foes") {
  DiffusionGraph g = test::make_graph(3, {{0, 2, -0.4}, {1, 2, 0.5}});
  std::vector<bool> active{true, true, false};
  CHECK(distrusted_active_mass(g, 2, active) == doctest::Approx(0.4));
  DiffusionGraph no_neg = test::make_graph(2, {{0, 1, 0.7}});
  CHECK(distrusted_active_mass(no_neg, 1, {true, false}) == 0.0);
}

TEST_CASE("influence sums match a brute-force edge scan on random graphs") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto inst = test::random_instance(gen, 8, 0.5);
    DiffusionGraph g = inst.graph();
    const TrustNetwork& net = *inst.net;
    std::vector<bool> active(net.node_count());
    for (NodeId v = 0; v < net.node_count(); ++v) active[v] = uniform_unit(gen) < 0.5;
    for (NodeId v = 0; v < net.node_count(); ++v) {
      double pos = 0, neg = 0;
      for (EdgeId id = 0; id < net.edge_count(); ++id) {
        const Edge& e = net.edges()[id];
        if (e.dst != v || !active[e.src]) continue;
        if (g.weight(id) > 0) pos += g.weight(id);
        else neg += -g.weight(id);
      }
      CHECK(trusted_influence(g, v, active) == doctest::Approx(pos).epsilon(1e-12));
      CHECK(distrusted_active_mass(g, v, active) == doctest::Approx(neg).epsilon(1e-12));
    }
  }
}

TEST_CASE("influence over all nodes respects the cumulative bounds") {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    auto inst = test::random_instance(gen, 10, 0.5);
    std::mt19937_64 rng(trial);
    DiffusionGraph g = sample_weights(inst.net, 0.8, rng);
    std::vector<bool> all(inst.net->node_count(), true);
    for (NodeId v = 0; v < inst.net->node_count(); ++v) {
      CHECK(trusted_influence(g, v, all) <= 1.0 + 1e-12);
      CHECK(distrusted_active_mass(g, v, all) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("sample_node_params respects ranges") {
  std::mt19937_64 rng(12);
  NodeParams np = sample_node_params(500, rng);
  np.validate(500);
  for (double th : np.theta) {
    CHECK(th > 0.0);
    CHECK(th <= 1.0);
  }
  for (double ta : np.tau) {
    CHECK(ta >= 0.0);
    CHECK(ta < 5.0);
  }
}
