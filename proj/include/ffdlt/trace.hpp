#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ffdlt/types.hpp"

namespace ffdlt {

enum class EventKind : std::uint8_t { Quiesce, Activate, Switch, Deactivate };

inline const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Quiesce: return "quiesce";
    case EventKind::Activate: return "activate";
    case EventKind::Switch: return "switch";
    case EventKind::Deactivate: return "deactivate";
  }
  return "?";
}

/// One state transition. For quiesce/activate the campaign is the one the
/// node holds afterwards; for switch it is the campaign switched TO; for
/// deactivate it is the campaign the node left.
struct Event {
  Step step;
  NodeId node;
  EventKind kind;
  Campaign campaign;

  friend bool operator==(const Event&, const Event&) = default;
};

struct StepCounts {
  std::uint32_t active_a = 0;
  std::uint32_t active_b = 0;
  std::uint32_t quiescent_a = 0;
  std::uint32_t quiescent_b = 0;

  friend bool operator==(const StepCounts&, const StepCounts&) = default;
};

struct TraceMeta {
  ModelKind model = ModelKind::NonCompetitive;
  std::uint32_t node_count = 0;
  Step horizon = 0;   // requested time limit T
  Step delay_b = 0;   // start delay of campaign B (competitive runs)
  double delta = 0.0;
  double lambda = 0.0;
  double tie_prob_a = 1.0;
  std::uint64_t rng_seed = 0;       // filled by the orchestrator
  std::uint64_t graph_digest = 0;   // weight-sampling digest, for run pairing
  std::vector<NodeId> seeds_a;      // sorted
  std::vector<NodeId> seeds_b;      // sorted; as requested (before skips)
  std::uint32_t skipped_seeds_b = 0;  // delayed B seeds already taken at delay_b
};

/// Full event log of one simulation run plus per-step set sizes. Snapshots of
/// the actual sets are reconstructed by replaying events (TraceCursor).
struct SimulationTrace {
  TraceMeta meta;
  std::vector<Event> events;        // time-ordered
  std::vector<StepCounts> counts;   // index = step; may end before horizon on early stop

  /// Last step with recorded counts. The run is constant from here to the
  /// horizon when this is smaller than meta.horizon.
  Step recorded_steps() const { return static_cast<Step>(counts.size()) - 1; }
};

/// Node state as reconstructed from a trace.
enum class NodeStatus : std::uint8_t { Inactive, Quiescent, Active };

/// Replays a trace step by step. After advance() returns true the cursor is
/// positioned at step(); state queries refer to the end of that step.
class TraceCursor {
 public:
  explicit TraceCursor(const SimulationTrace& trace);

  bool advance();  // moves to the next recorded step; false past the end
  Step step() const { return step_; }

  NodeStatus status(NodeId v) const { return status_[v]; }
  Campaign campaign(NodeId v) const { return campaign_[v]; }
  bool active(NodeId v) const { return status_[v] == NodeStatus::Active; }
  bool active_for(NodeId v, Campaign c) const {
    return status_[v] == NodeStatus::Active && campaign_[v] == c;
  }

  /// Active nodes at the current step, ascending.
  std::vector<NodeId> active_nodes() const;
  std::vector<NodeId> active_nodes(Campaign c) const;
  std::vector<NodeId> quiescent_nodes(Campaign c) const;

 private:
  const SimulationTrace* trace_;
  std::size_t next_event_ = 0;
  Step step_ = -1;
  std::vector<NodeStatus> status_;
  std::vector<Campaign> campaign_;
};

/// Line-delimited trace serialization: a JSON metadata header line followed
/// by one `step,node,kind,campaign` line per event (column order fixed).
void write_trace(const SimulationTrace& trace, std::ostream& out);

}  // namespace ffdlt
