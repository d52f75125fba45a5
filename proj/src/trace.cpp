#include "ffdlt/trace.hpp"

#include <ostream>

#include "json.hpp"

namespace ffdlt {

TraceCursor::TraceCursor(const SimulationTrace& trace)
    : trace_(&trace),
      status_(trace.meta.node_count, NodeStatus::Inactive),
      campaign_(trace.meta.node_count, Campaign::A) {}

bool TraceCursor::advance() {
  if (step_ >= trace_->recorded_steps()) return false;
  ++step_;
  const auto& events = trace_->events;
  while (next_event_ < events.size() && events[next_event_].step == step_) {
    const Event& e = events[next_event_++];
    switch (e.kind) {
      case EventKind::Quiesce:
        status_[e.node] = NodeStatus::Quiescent;
        campaign_[e.node] = e.campaign;
        break;
      case EventKind::Activate:
      case EventKind::Switch:
        status_[e.node] = NodeStatus::Active;
        campaign_[e.node] = e.campaign;
        break;
      case EventKind::Deactivate:
        status_[e.node] = NodeStatus::Inactive;
        break;
    }
  }
  return true;
}

std::vector<NodeId> TraceCursor::active_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < status_.size(); ++v)
    if (status_[v] == NodeStatus::Active) out.push_back(v);
  return out;
}

std::vector<NodeId> TraceCursor::active_nodes(Campaign c) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < status_.size(); ++v)
    if (status_[v] == NodeStatus::Active && campaign_[v] == c) out.push_back(v);
  return out;
}

std::vector<NodeId> TraceCursor::quiescent_nodes(Campaign c) const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < status_.size(); ++v)
    if (status_[v] == NodeStatus::Quiescent && campaign_[v] == c) out.push_back(v);
  return out;
}

void write_trace(const SimulationTrace& trace, std::ostream& out) {
  nlohmann::json meta{
      {"model", model_name(trace.meta.model)},
      {"node_count", trace.meta.node_count},
      {"horizon", trace.meta.horizon},
      {"delay_b", trace.meta.delay_b},
      {"delta", trace.meta.delta},
      {"lambda", trace.meta.lambda},
      {"tie_prob_a", trace.meta.tie_prob_a},
      {"rng_seed", trace.meta.rng_seed},
      {"graph_digest", trace.meta.graph_digest},
      {"seeds_a", trace.meta.seeds_a},
      {"seeds_b", trace.meta.seeds_b},
      {"skipped_seeds_b", trace.meta.skipped_seeds_b},
  };
  out << meta.dump() << '\n';
  out << "step,node,kind,campaign\n";
  for (const Event& e : trace.events)
    out << e.step << ',' << e.node << ',' << event_kind_name(e.kind) << ','
        << campaign_letter(e.campaign) << '\n';
}

}  // namespace ffdlt
