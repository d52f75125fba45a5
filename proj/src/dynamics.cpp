#include "ffdlt/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "ffdlt/rng.hpp"

namespace ffdlt {

void NodeParams::validate(std::uint32_t node_count) const {
  if (theta.size() != node_count || tau.size() != node_count)
    throw std::invalid_argument("NodeParams size does not match node count");
  for (double th : theta)
    if (!(th > 0.0 && th <= 1.0))
      throw std::invalid_argument("theta must lie in (0,1]");
  for (double ta : tau)
    if (!(ta >= 0.0)) throw std::invalid_argument("tau must be >= 0");
}

NodeParams sample_node_params(std::uint32_t node_count, std::mt19937_64& rng) {
  NodeParams np;
  np.theta.resize(node_count);
  np.tau.resize(node_count);
  for (std::uint32_t v = 0; v < node_count; ++v) np.theta[v] = 1.0 - uniform_unit(rng);
  for (std::uint32_t v = 0; v < node_count; ++v) np.tau[v] = 5.0 * uniform_unit(rng);
  return np;
}

double activation_threshold(double theta, double delta, Step t, std::optional<Step> t_last) {
  if (delta == 0.0 || !t_last) return theta;
  double held = static_cast<double>(t - *t_last);
  if (held >= (1.0 - theta) / delta) return 1.0;  // saturated
  return std::min(theta + delta * held, 1.0);
}

double quiescence_duration(double tau, double lambda, double neg_mass) {
  if (lambda == 0.0) return tau;
  return tau + std::exp(lambda * neg_mass);
}

double trusted_influence(const DiffusionGraph& g, NodeId v, const std::vector<bool>& active) {
  auto entries = g.net().in_pos(v);
  auto weights = g.in_pos_weights(v);
  double sum = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (active[entries[i].src]) sum += weights[i];
  return sum;
}

double distrusted_active_mass(const DiffusionGraph& g, NodeId v, const std::vector<bool>& active) {
  auto entries = g.net().in_neg(v);
  auto weights = g.in_neg_abs_weights(v);
  double sum = 0.0;
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (active[entries[i].src]) sum += weights[i];
  return sum;
}

}  // namespace ffdlt
