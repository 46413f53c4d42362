#pragma once

#include <cstdint>
#include <vector>

#include "privlog/calibration.hpp"
#include "privlog/log_io.hpp"
#include "privlog/rng.hpp"

namespace privlog {

// Integer frequency noise per transition: round(Laplace(1/epsilon_d)).
struct NoiseDraws {
  double epsilon_d = 0.0;
  std::vector<std::int64_t> per_transition;  // parallel to index.transitions
};

NoiseDraws draw_transition_noise(const VariantIndex& index, double epsilon_d,
                                 RngStream& rng);

// One released copy of an input case. durations[0] is the case start offset
// in seconds, durations[i>0] the delta of event i from its predecessor; all
// values are non-negative once noise is injected.
struct ReleasedCase {
  int trace_index = -1;   // into the annotated log
  int copy_ordinal = 0;   // 0 = the original, 1.. = replicas
  std::vector<double> durations;
  std::vector<double> epsilon_effective;  // per event, after replica division
};

struct Draft {
  std::vector<int> copy_count;  // per input trace, live copies
  std::vector<ReleasedCase> cases;
};

// Algorithm: while some transition's |added| < |needed|, pick a deficient
// transition (weighted by occurrence count), then replicate or delete whole
// traversing cases (weighted by live instance counts) until that transition
// is satisfied; every move updates added on the full path of the moved case.
Draft apply_sampling(const AnnotatedLog& log, VariantIndex& index,
                     const NoiseDraws& draws, const RngForge& forge);

// Replication-only variant: |z| copies per transition, nothing deleted.
Draft apply_oversampling(const AnnotatedLog& log, VariantIndex& index,
                         const NoiseDraws& draws, const RngForge& forge);

// Adds Laplace noise to every duration: drawn in normalized space with scale
// 1/epsilon_effective, de-normalized by the group range, clamped at zero.
// epsilon_effective = epsilon_t / n for a case with n live copies; infinite
// epsilon (exempt events) and zero-range groups leave the value unchanged.
// Draws are keyed by (trace, copy, event), so visit order cannot matter.
void inject_time_noise(Draft& draft, const AnnotatedLog& log,
                       const EpsilonPlan& plan, const RngForge& forge,
                       int workers = 1);

// Scales all case start offsets by
//   original_range / (released_range + original_range) / 2
// (ranges in days between first and last case start; both zero -> factor 1).
// Returns the factor applied.
double compress_timestamps(Draft& draft, double original_range_seconds,
                           bool enabled);

// Rebuilds concrete timestamps (log_start + start offset + cumulative
// deltas, rounded to whole seconds), assigns fresh random 16-byte hex case
// ids, shuffles the traces, and orders them by released start time. Fills
// per-trace/per-event epsilon annotations (epsilon_d and the effective
// event epsilons) if `epsilons` is given.
EventLog finalize(const Draft& draft, const AnnotatedLog& log,
                  double epsilon_d, const RngForge& forge,
                  EpsilonAnnotations* epsilons = nullptr);

}  // namespace privlog
