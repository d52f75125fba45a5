#include "ffdlt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffdlt {

namespace {

std::vector<double> padded_counts(const SimulationTrace& trace, Campaign c) {
  std::vector<double> out(static_cast<std::size_t>(trace.meta.horizon) + 1, 0.0);
  double last = 0.0;
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (t < trace.counts.size())
      last = c == Campaign::A ? trace.counts[t].active_a : trace.counts[t].active_b;
    out[t] = last;
  }
  return out;
}

}  // namespace

std::vector<MetricSeries> spread_series(const SimulationTrace& trace) {
  std::vector<MetricSeries> out;
  if (trace.meta.model == ModelKind::NonCompetitive) {
    out.push_back({"spread", std::nullopt, padded_counts(trace, Campaign::A)});
  } else {
    out.push_back({"spread", Campaign::A, padded_counts(trace, Campaign::A)});
    out.push_back({"spread", Campaign::B, padded_counts(trace, Campaign::B)});
  }
  return out;
}

std::pair<MetricSeries, MetricSeries> stressed_split(const SimulationTrace& trace,
                                                     const DiffusionGraph& g) {
  if (trace.meta.model != ModelKind::NonCompetitive)
    throw std::invalid_argument("stressed_split requires a non-competitive trace");
  if (trace.meta.node_count != g.net().node_count())
    throw std::invalid_argument("stressed_split: trace and graph do not match");

  const std::size_t len = static_cast<std::size_t>(trace.meta.horizon) + 1;
  MetricSeries stressed{"stressed", std::nullopt, std::vector<double>(len, 0.0)};
  MetricSeries unstressed{"unstressed", std::nullopt, std::vector<double>(len, 0.0)};

  TraceCursor cursor(trace);
  double last_s = 0, last_u = 0;
  for (std::size_t t = 0; t < len; ++t) {
    if (cursor.advance()) {
      std::uint32_t s = 0, total = 0;
      const TrustNetwork& net = g.net();
      for (NodeId v = 0; v < net.node_count(); ++v) {
        if (!cursor.active(v)) continue;
        ++total;
        for (const auto& in : net.in_neg(v)) {
          if (cursor.active(in.src)) {
            ++s;
            break;
          }
        }
      }
      last_s = s;
      last_u = total - s;
    }
    stressed.values[t] = last_s;
    unstressed.values[t] = last_u;
  }
  return {std::move(stressed), std::move(unstressed)};
}

MetricSeries activation_loss(const SimulationTrace& base, const SimulationTrace& quiesced) {
  if (base.meta.lambda != 0.0)
    throw std::invalid_argument("activation_loss: base trace must have lambda = 0");
  if (base.meta.model != ModelKind::NonCompetitive ||
      quiesced.meta.model != ModelKind::NonCompetitive)
    throw std::invalid_argument("activation_loss requires non-competitive traces");
  if (base.meta.graph_digest != quiesced.meta.graph_digest ||
      base.meta.node_count != quiesced.meta.node_count ||
      base.meta.seeds_a != quiesced.meta.seeds_a || base.meta.rng_seed != quiesced.meta.rng_seed)
    throw std::invalid_argument("activation_loss: traces are not a matched pair");

  std::vector<double> b = padded_counts(base, Campaign::A);
  std::vector<double> q = padded_counts(quiesced, Campaign::A);
  std::size_t len = std::max(b.size(), q.size());
  MetricSeries loss{"activation_loss", std::nullopt, std::vector<double>(len, 0.0)};
  for (std::size_t t = 0; t < len; ++t) {
    double bv = t < b.size() ? b[t] : b.back();
    double qv = t < q.size() ? q[t] : q.back();
    loss.values[t] = bv > 0 ? 100.0 * (bv - qv) / bv : 0.0;
  }
  return loss;
}

SwitchStats switch_stats(const SimulationTrace& trace) {
  if (trace.meta.model == ModelKind::NonCompetitive)
    throw std::invalid_argument("switch_stats requires a competitive trace");
  SwitchStats stats;
  // A node's campaign history is replayed from the events; a switch event
  // records only the target campaign.
  std::vector<std::uint8_t> is_b(trace.meta.node_count, 0);
  std::vector<std::uint8_t> counted_a(trace.meta.node_count, 0), counted_b(trace.meta.node_count, 0);
  for (const Event& e : trace.events) {
    switch (e.kind) {
      case EventKind::Quiesce:
      case EventKind::Activate:
        is_b[e.node] = e.campaign == Campaign::B;
        break;
      case EventKind::Switch: {
        bool from_b = is_b[e.node];
        if (from_b) {
          ++stats.from_b.total;
          if (!counted_b[e.node]) { counted_b[e.node] = 1; ++stats.from_b.unique_nodes; }
        } else {
          ++stats.from_a.total;
          if (!counted_a[e.node]) { counted_a[e.node] = 1; ++stats.from_a.unique_nodes; }
        }
        is_b[e.node] = e.campaign == Campaign::B;
        break;
      }
      case EventKind::Deactivate:
        break;
    }
  }
  return stats;
}

DeactivationStats deactivation_stats(const SimulationTrace& trace) {
  if (trace.meta.model != ModelKind::NonProgressive)
    throw std::invalid_argument("deactivation_stats requires a non-progressive trace");
  DeactivationStats stats;
  std::vector<std::uint8_t> counted_a(trace.meta.node_count, 0), counted_b(trace.meta.node_count, 0);
  for (const Event& e : trace.events) {
    if (e.kind != EventKind::Deactivate) continue;
    if (e.campaign == Campaign::A) {
      ++stats.campaign_a.total;
      if (!counted_a[e.node]) { counted_a[e.node] = 1; ++stats.campaign_a.unique_nodes; }
    } else {
      ++stats.campaign_b.total;
      if (!counted_b[e.node]) { counted_b[e.node] = 1; ++stats.campaign_b.unique_nodes; }
    }
  }
  return stats;
}

SharedStats shared_spread_stats(const SimulationTrace& trace_a, const SimulationTrace& trace_b) {
  if (trace_a.meta.model != ModelKind::NonCompetitive ||
      trace_b.meta.model != ModelKind::NonCompetitive)
    throw std::invalid_argument("shared_spread_stats requires non-competitive traces");
  if (trace_a.meta.graph_digest != trace_b.meta.graph_digest ||
      trace_a.meta.node_count != trace_b.meta.node_count)
    throw std::invalid_argument("shared_spread_stats: traces are on different graphs");

  const std::uint32_t n = trace_a.meta.node_count;
  constexpr Step kNever = std::numeric_limits<Step>::max();
  std::vector<Step> time_a(n, kNever), time_b(n, kNever);
  for (const Event& e : trace_a.events)
    if (e.kind == EventKind::Activate && time_a[e.node] == kNever) time_a[e.node] = e.step;
  for (const Event& e : trace_b.events)
    if (e.kind == EventKind::Activate && time_b[e.node] == kNever) time_b[e.node] = e.step;

  SharedStats s;
  std::int64_t shared = 0, a_first = 0;
  double sum_any = 0, sum_a_first = 0, sum_b_first = 0;
  for (NodeId v = 0; v < n; ++v) {
    bool in_a = time_a[v] != kNever, in_b = time_b[v] != kNever;
    if (in_a) ++s.spread_A;
    if (in_b) ++s.spread_B;
    if (!(in_a && in_b)) continue;
    ++shared;
    sum_any += 0.5 * (static_cast<double>(time_a[v]) + static_cast<double>(time_b[v]));
    if (time_a[v] <= time_b[v]) {  // ties count for the first-started campaign
      ++a_first;
      sum_a_first += time_a[v];
    } else {
      sum_b_first += time_b[v];
    }
  }
  s.shared_fraction = s.spread_A > 0 ? static_cast<double>(shared) / s.spread_A : 0.0;
  s.pct_A_first = shared > 0 ? static_cast<double>(a_first) / shared : 0.0;
  s.avg_time_any = shared > 0 ? sum_any / shared : 0.0;
  s.avg_time_A_first = a_first > 0 ? sum_a_first / a_first : 0.0;
  std::int64_t b_first = shared - a_first;
  s.avg_time_B_first = b_first > 0 ? sum_b_first / b_first : 0.0;
  return s;
}

Aggregate aggregate_runs(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate_runs: no values");
  Aggregate a;
  a.count = values.size();
  a.min = a.max = values[0];
  // Welford, folded in run order.
  double mean = 0, m2 = 0;
  std::size_t i = 0;
  for (double v : values) {
    ++i;
    double d = v - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (v - mean);
    a.min = std::min(a.min, v);
    a.max = std::max(a.max, v);
  }
  a.mean = mean;
  a.stddev = std::sqrt(m2 / static_cast<double>(values.size()));
  return a;
}

}  // namespace ffdlt
