#pragma once

#include <string>
#include <vector>

#include "privlog/dafsa.hpp"

namespace privlog {

enum class Mode { sample, filter_sample, oversample };

Mode mode_from_name(std::string_view name);
std::string_view mode_name(Mode mode);

struct Precisions {
  double start_seconds = 86400.0;  // window half-width for case start offsets
  double time_seconds = 10.0;      // window half-width for relative times
};

// One normalization group: either the single group of all case start offsets
// or the events of one DAFSA transition. Values are min-max normalized into
// [0,1]; a zero range is degenerate (every value identical).
struct GroupStats {
  bool is_start = false;
  int source = -1;
  std::string label;
  int target = -1;
  double min_value = 0.0;   // seconds
  double max_value = 0.0;   // seconds
  double range = 0.0;       // seconds
  double precision = 0.0;   // window half-width as a fraction of range, in [0,1]
  std::vector<double> norm_values;  // sorted

  bool degenerate() const { return range <= 0.0; }
};

// Fills norm_time/precision/group on every event and returns the groups.
std::vector<GroupStats> compute_group_stats(AnnotatedLog& log,
                                            const Precisions& precisions);

// Attacker's prior probability of guessing a value within the precision
// window before seeing the release, at the stated guessing advantage delta.
double worst_case_prior(double delta);

// Fraction of the group's values inside [value - p, value + p] (normalized
// units, closed window, the queried value included). Degenerate groups fall
// back to the worst-case prior.
double empirical_prior(const GroupStats& group, double normalized_value,
                       double delta);

// Fills the prior on every event (requires compute_group_stats first).
void compute_priors(AnnotatedLog& log, const std::vector<GroupStats>& groups,
                    double delta);

// Epsilon bounding the guessing advantage by delta given prior P within
// radius r. Returns +infinity when P + delta >= 1 (no positive epsilon is
// needed or possible; callers filter or exempt). Throws std::domain_error
// for P outside (0,1) or delta outside (0,1).
double epsilon_from_advantage(double prior, double delta, double radius = 1.0);

// Epsilon for the oversampling release mode: the closed-form solution of
// delta = e^-eps * tanh(eps/4) + 1 - e^-eps.
double epsilon_oversampling(double delta);

// Removes every case containing an event with prior + delta >= 1, then
// re-estimates stats and priors on the survivors and repeats to a fixed
// point. `priors` is the initial per-trace/per-event prior matrix (parallel
// to log.traces). Throws UnreleasableError if nothing survives.
struct FilterResult {
  AnnotatedLog log;                          // survivors, stats+priors refilled
  std::vector<GroupStats> groups;
  std::vector<std::string> removed_case_ids;
};
FilterResult filter_cases(const AnnotatedLog& log,
                          const std::vector<std::vector<double>>& priors,
                          double delta, const Precisions& precisions);

// Per-event epsilons (written into the log) plus the frequency epsilon for
// the chosen release mode.
struct EpsilonPlan {
  double delta = 0.0;
  Mode mode = Mode::sample;
  double epsilon_d = 0.0;
  Precisions precisions;
  bool scale_by_trace_length = false;
  std::vector<GroupStats> groups;
  std::vector<std::string> filtered_case_ids;
};

// Requires stats and priors to be filled (compute_* or filter_cases).
// Sets epsilon_t on every event: epsilon_from_advantage(prior, delta) --
// +infinity where prior + delta >= 1 -- divided by the longest trace length
// when scale_by_trace_length is on.
EpsilonPlan build_epsilon_plan(AnnotatedLog& log,
                               const std::vector<GroupStats>& groups,
                               double delta, Mode mode,
                               const Precisions& precisions,
                               bool scale_by_trace_length);

}  // namespace privlog
