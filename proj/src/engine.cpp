#include "ffdlt/engine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "ffdlt/rng.hpp"

namespace ffdlt {

namespace {

enum class St : std::uint8_t { Inactive, QuiescentA, QuiescentB, ActiveA, ActiveB };

inline bool is_active(St s) { return s == St::ActiveA || s == St::ActiveB; }
inline bool is_quiescent(St s) { return s == St::QuiescentA || s == St::QuiescentB; }
inline Campaign campaign_of(St s) {
  return (s == St::ActiveA || s == St::QuiescentA) ? Campaign::A : Campaign::B;
}
inline St active_state(Campaign c) { return c == Campaign::A ? St::ActiveA : St::ActiveB; }
inline St quiescent_state(Campaign c) {
  return c == Campaign::A ? St::QuiescentA : St::QuiescentB;
}

std::vector<NodeId> sorted_unique(std::span<const NodeId> seeds, std::uint32_t n,
                                  const char* what) {
  std::vector<NodeId> out(seeds.begin(), seeds.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!out.empty() && out.back() >= n)
    throw std::invalid_argument(std::string(what) + ": seed node out of range");
  return out;
}

struct Pending {
  enum class Kind : std::uint8_t { Quiesce, Switch, Deactivate } kind;
  NodeId node;
  Campaign campaign;  // quiesce/switch target; deactivate: campaign being left
  Step expiry;        // quiesce only
};

class Runner {
 public:
  Runner(ModelKind model, const DiffusionGraph& g, std::span<const NodeId> seeds_a,
         std::span<const NodeId> seeds_b, Step delay_b, const NodeParams& np,
         const ModelParams& mp, std::mt19937_64* rng, bool unbounded)
      : model_(model),
        g_(g),
        net_(g.net()),
        np_(np),
        mp_(mp),
        rng_(rng),
        unbounded_(unbounded),
        n_(g.net().node_count()),
        delay_b_(delay_b) {
    np.validate(n_);
    if (!unbounded_ && mp.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    seeds_a_ = sorted_unique(seeds_a, n_, "seeds_a");
    seeds_b_ = sorted_unique(seeds_b, n_, "seeds_b");
    if (model_ != ModelKind::NonCompetitive) {
      std::vector<NodeId> overlap;
      std::set_intersection(seeds_a_.begin(), seeds_a_.end(), seeds_b_.begin(), seeds_b_.end(),
                            std::back_inserter(overlap));
      if (!overlap.empty()) throw std::invalid_argument("seed sets overlap");
      if (delay_b_ < 0 || (!unbounded_ && delay_b_ >= mp.horizon))
        throw std::invalid_argument("delay_b must lie in [0, horizon)");
    }
    status_.assign(n_, St::Inactive);
    expiry_.assign(n_, 0);
    t_last_.assign(n_, 0);
    dirty_flag_.assign(n_, 0);

    if (unbounded_) {
      // Upper bound on a non-competitive run: at most 2n+1 firing steps, with
      // quiet gaps no longer than the largest possible quiescence duration.
      double tau_max = 0;
      for (double ta : np.tau) tau_max = std::max(tau_max, ta);
      double q_max = quiescence_duration(tau_max, mp.lambda, 1.0);
      step_guard_ = (2.0 * n_ + 3.0) * (std::ceil(q_max) + 2.0) + 16.0;
    }
  }

  SimulationTrace run() {
    SimulationTrace trace;
    trace.meta.model = model_;
    trace.meta.node_count = n_;
    trace.meta.delay_b = delay_b_;
    trace.meta.delta = mp_.delta;
    trace.meta.lambda = mp_.lambda;
    trace.meta.tie_prob_a = mp_.tie_break.prob_a;
    trace.meta.graph_digest = g_.digest();
    trace.meta.seeds_a = seeds_a_;
    trace.meta.seeds_b = seeds_b_;

    // t = 0: seeds activate directly, no quiescence.
    for (NodeId v : seeds_a_) seed_activate(v, Campaign::A, 0);
    if (model_ != ModelKind::NonCompetitive && delay_b_ == 0)
      for (NodeId v : seeds_b_) seed_activate(v, Campaign::B, 0);
    record_counts();

    const Step limit = unbounded_ ? std::numeric_limits<Step>::max() - 1 : mp_.horizon;
    for (Step t = 1; t <= limit; ++t) {
      // Evaluate rules on the untouched S_{t-1}/Q_{t-1} state, then apply
      // transitions together with seed injection and quiescence expiry.
      std::swap(eval_list_, next_list_);
      next_list_.clear();
      for (NodeId v : eval_list_) dirty_flag_[v] = 0;
      std::sort(eval_list_.begin(), eval_list_.end());

      pending_.clear();
      for (NodeId v : eval_list_) evaluate(v, t);

      bool fired = false;

      if (model_ != ModelKind::NonCompetitive && t == delay_b_) {
        for (NodeId v : seeds_b_) {
          if (status_[v] != St::Inactive) {
            ++trace.meta.skipped_seeds_b;
            continue;
          }
          seed_activate(v, Campaign::B, t);
          fired = true;
        }
      }

      while (!queue_.empty() && queue_.top().first == t) {
        NodeId v = queue_.top().second;
        queue_.pop();
        assert(is_quiescent(status_[v]) && expiry_[v] == t);
        Campaign c = campaign_of(status_[v]);
        status_[v] = active_state(c);
        t_last_[v] = t;
        if (c == Campaign::A) { --count_.quiescent_a; ++count_.active_a; }
        else { --count_.quiescent_b; ++count_.active_b; }
        push_event(t, v, EventKind::Activate, c);
        mark_changed(v);
        fired = true;
      }

      for (const Pending& p : pending_) {
        switch (p.kind) {
          case Pending::Kind::Quiesce: {
            if (status_[p.node] != St::Inactive) continue;  // claimed by seed injection
            push_event(t, p.node, EventKind::Quiesce, p.campaign);
            if (p.expiry == t) {
              // zero quiescence: contagious within the same step
              status_[p.node] = active_state(p.campaign);
              t_last_[p.node] = t;
              if (p.campaign == Campaign::A) ++count_.active_a; else ++count_.active_b;
              push_event(t, p.node, EventKind::Activate, p.campaign);
              mark_changed(p.node);
            } else {
              status_[p.node] = quiescent_state(p.campaign);
              expiry_[p.node] = p.expiry;
              queue_.push({p.expiry, p.node});
              if (p.campaign == Campaign::A) ++count_.quiescent_a; else ++count_.quiescent_b;
            }
            fired = true;
            break;
          }
          case Pending::Kind::Switch: {
            status_[p.node] = active_state(p.campaign);
            t_last_[p.node] = t;
            if (p.campaign == Campaign::A) { --count_.active_b; ++count_.active_a; }
            else { --count_.active_a; ++count_.active_b; }
            push_event(t, p.node, EventKind::Switch, p.campaign);
            mark_changed(p.node);
            fired = true;
            break;
          }
          case Pending::Kind::Deactivate: {
            status_[p.node] = St::Inactive;  // t_last no longer applies: g resets to theta
            if (p.campaign == Campaign::A) --count_.active_a; else --count_.active_b;
            push_event(t, p.node, EventKind::Deactivate, p.campaign);
            mark_changed(p.node);
            fired = true;
            break;
          }
        }
      }

      record_counts();

      bool injection_pending =
          model_ != ModelKind::NonCompetitive && t < delay_b_ && !seeds_b_.empty();
      if (!fired && queue_.empty() && !injection_pending) break;  // nothing can change anymore
      if (unbounded_ && static_cast<double>(t) > step_guard_)
        throw std::runtime_error("unbounded run exceeded step guard");
    }

    trace.meta.horizon =
        unbounded_ ? static_cast<Step>(counts_.size()) - 1 : mp_.horizon;
    trace.events = std::move(events_);
    trace.counts = std::move(counts_);
    return trace;
  }

 private:
  void seed_activate(NodeId v, Campaign c, Step t) {
    status_[v] = active_state(c);
    t_last_[v] = t;
    if (c == Campaign::A) ++count_.active_a; else ++count_.active_b;
    push_event(t, v, EventKind::Activate, c);
    mark_changed(v);
  }

  void push_event(Step t, NodeId v, EventKind k, Campaign c) {
    events_.push_back({t, v, k, c});
    if (k == EventKind::Activate) last_activation_ = std::max(last_activation_, t);
  }

  void mark(NodeId v) {
    if (!dirty_flag_[v]) {
      dirty_flag_[v] = 1;
      next_list_.push_back(v);
    }
  }

  // A node's contagious state changed: re-examine it and everyone it can
  // influence through a trusted edge.
  void mark_changed(NodeId v) {
    mark(v);
    for (const auto& e : net_.out_pos(v)) mark(e.dst);
  }

  // Both campaigns' trusted influence on v over the pre-step active sets.
  void influences(NodeId v, double& sum_a, double& sum_b) const {
    auto entries = net_.in_pos(v);
    auto weights = g_.in_pos_weights(v);
    sum_a = 0.0;
    sum_b = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      St s = status_[entries[i].src];
      if (s == St::ActiveA) sum_a += weights[i];
      else if (s == St::ActiveB) sum_b += weights[i];
    }
  }

  double neg_mass(NodeId v) const {
    auto entries = net_.in_neg(v);
    auto weights = g_.in_neg_abs_weights(v);
    double sum = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (is_active(status_[entries[i].src])) sum += weights[i];
    return sum;
  }

  void evaluate(NodeId v, Step t) {
    St s = status_[v];
    if (is_quiescent(s)) return;  // frozen until expiry

    if (s == St::Inactive) {
      double sum_a, sum_b;
      influences(v, sum_a, sum_b);
      double g = np_.theta[v];  // never-activated (or deactivated) nodes: g = theta
      bool ok_a = sum_a >= g;
      bool ok_b = model_ != ModelKind::NonCompetitive && sum_b >= g;
      if (!ok_a && !ok_b) return;
      Campaign c;
      if (ok_a && ok_b)
        c = uniform_unit(*rng_) < mp_.tie_break.prob_a ? Campaign::A : Campaign::B;  // R5
      else
        c = ok_a ? Campaign::A : Campaign::B;
      double q = quiescence_duration(np_.tau[v], mp_.lambda, neg_mass(v));
      Step wait = static_cast<Step>(std::ceil(q));
      pending_.push_back({Pending::Kind::Quiesce, v, c, t + wait});
      return;
    }

    if (model_ == ModelKind::NonCompetitive) return;  // active NC nodes never change

    Campaign cur = campaign_of(s);
    double sum_a, sum_b;
    influences(v, sum_a, sum_b);
    double own = cur == Campaign::A ? sum_a : sum_b;
    double riv = cur == Campaign::A ? sum_b : sum_a;
    double g = activation_threshold(np_.theta[v], mp_.delta, t, t_last_[v]);
    bool do_switch = riv >= g && riv > own;  // R2
    bool do_deact = model_ == ModelKind::NonProgressive && sum_a < np_.theta[v] &&
                    sum_b < np_.theta[v];  // R6
    assert(!(do_switch && do_deact));  // g >= theta makes these exclusive
    if (do_switch)
      pending_.push_back({Pending::Kind::Switch, v, rival(cur), 0});
    else if (do_deact)
      pending_.push_back({Pending::Kind::Deactivate, v, cur, 0});
  }

  void record_counts() { counts_.push_back(count_); }

 public:
  Step last_activation() const { return last_activation_; }

 private:
  ModelKind model_;
  const DiffusionGraph& g_;
  const TrustNetwork& net_;
  const NodeParams& np_;
  const ModelParams& mp_;
  std::mt19937_64* rng_;
  bool unbounded_;
  std::uint32_t n_;
  Step delay_b_;
  std::vector<NodeId> seeds_a_, seeds_b_;

  std::vector<St> status_;
  std::vector<Step> expiry_;
  std::vector<Step> t_last_;
  double step_guard_ = 0;
  std::priority_queue<std::pair<Step, NodeId>, std::vector<std::pair<Step, NodeId>>,
                      std::greater<>>
      queue_;
  std::vector<std::uint8_t> dirty_flag_;
  std::vector<NodeId> eval_list_, next_list_;
  std::vector<Pending> pending_;
  std::vector<Event> events_;
  std::vector<StepCounts> counts_;
  StepCounts count_;
  Step last_activation_ = 0;
};

}  // namespace

SimulationTrace run_noncompetitive(const DiffusionGraph& g, std::span<const NodeId> seeds,
                                   const NodeParams& np, const ModelParams& mp,
                                   std::mt19937_64& rng) {
  Runner r(ModelKind::NonCompetitive, g, seeds, {}, 0, np, mp, &rng, false);
  return r.run();
}

SimulationTrace run_semiprogressive(const DiffusionGraph& g, std::span<const NodeId> seeds_a,
                                    std::span<const NodeId> seeds_b, Step delay_b,
                                    const NodeParams& np, const ModelParams& mp,
                                    std::mt19937_64& rng) {
  Runner r(ModelKind::SemiProgressive, g, seeds_a, seeds_b, delay_b, np, mp, &rng, false);
  return r.run();
}

SimulationTrace run_nonprogressive(const DiffusionGraph& g, std::span<const NodeId> seeds_a,
                                   std::span<const NodeId> seeds_b, Step delay_b,
                                   const NodeParams& np, const ModelParams& mp,
                                   std::mt19937_64& rng) {
  Runner r(ModelKind::NonProgressive, g, seeds_a, seeds_b, delay_b, np, mp, &rng, false);
  return r.run();
}

Step compute_horizon(const DiffusionGraph& g, std::span<const NodeId> seeds,
                     const NodeParams& np, const ModelParams& mp) {
  std::mt19937_64 unused(0);  // NC consumes no randomness
  Runner r(ModelKind::NonCompetitive, g, seeds, {}, 0, np, mp, &unused, true);
  SimulationTrace trace = r.run();
  Step last = 0;
  for (const Event& e : trace.events)
    if (e.kind == EventKind::Activate) last = std::max(last, e.step);
  return std::max<Step>(last, 1);
}

}  // namespace ffdlt
