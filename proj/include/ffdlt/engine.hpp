#pragma once

#include <random>
#include <span>

#include "ffdlt/diffusion_graph.hpp"
#include "ffdlt/dynamics.hpp"
#include "ffdlt/trace.hpp"

namespace ffdlt {

/// Single-campaign progressive diffusion. Seeds activate directly at t = 0
/// (no quiescence). At each step t >= 1, every inactive non-quiescent node
/// whose trusted active influence (over S_{t-1}) reaches g(v,t) enters
/// quiescence for ceil(q(v,t)) steps, then turns contagious. Stops at the
/// horizon or as soon as no state can ever change; nodes still quiescent at
/// the horizon are never counted active.
SimulationTrace run_noncompetitive(const DiffusionGraph& g, std::span<const NodeId> seeds,
                                   const NodeParams& np, const ModelParams& mp,
                                   std::mt19937_64& rng);

/// Two-campaign semi-progressive diffusion: first activations pass through
/// quiescence (R1/R4), an active node switches campaign instantly when the
/// rival's trusted influence reaches g(v,t) and strictly exceeds the current
/// campaign's (R2), otherwise it keeps its state (R3); simultaneous
/// activations are tie-broken by a fixed-probability draw (R5). Campaign B's
/// seeds activate at t = delay_b; B seeds already active or quiescent then
/// are skipped (counted in the trace metadata). No node ever deactivates.
SimulationTrace run_semiprogressive(const DiffusionGraph& g, std::span<const NodeId> seeds_a,
                                    std::span<const NodeId> seeds_b, Step delay_b,
                                    const NodeParams& np, const ModelParams& mp,
                                    std::mt19937_64& rng);

/// Semi-progressive rules plus deactivation (R6): an active node whose
/// trusted influence from BOTH campaigns is below theta_v (not g) turns back
/// to inactive; it may later re-activate through quiescence with its
/// threshold clock reset.
SimulationTrace run_nonprogressive(const DiffusionGraph& g, std::span<const NodeId> seeds_a,
                                   std::span<const NodeId> seeds_b, Step delay_b,
                                   const NodeParams& np, const ModelParams& mp,
                                   std::mt19937_64& rng);

/// End-time of the non-competitive diffusion of `seeds`: runs with an
/// unbounded horizon and returns the step of the last activation event
/// (at least 1, so a degenerate diffusion still yields a usable horizon).
Step compute_horizon(const DiffusionGraph& g, std::span<const NodeId> seeds,
                     const NodeParams& np, const ModelParams& mp);

}  // namespace ffdlt
