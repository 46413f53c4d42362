#include "privlog/anonymizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "privlog/errors.hpp"

namespace privlog {

NoiseDraws draw_transition_noise(const VariantIndex& index, double epsilon_d,
                                 RngStream& rng) {
  if (!(epsilon_d > 0)) throw std::domain_error("epsilon_d must be positive");
  NoiseDraws draws;
  draws.epsilon_d = epsilon_d;
  draws.per_transition.reserve(index.transitions.size());
  for (std::size_t i = 0; i < index.transitions.size(); ++i)
    draws.per_transition.push_back(
        std::llround(rng.laplace(1.0 / epsilon_d)));
  return draws;
}

namespace {

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

Draft materialize(const AnnotatedLog& log, const std::vector<int>& copies) {
  Draft draft;
  draft.copy_count = copies;
  for (std::size_t t = 0; t < log.traces.size(); ++t) {
    const auto& events = log.traces[t].events;
    for (int k = 0; k < copies[t]; ++k) {
      ReleasedCase rc;
      rc.trace_index = static_cast<int>(t);
      rc.copy_ordinal = k;
      rc.durations.reserve(events.size());
      for (const auto& event : events) rc.durations.push_back(event.rel_time);
      draft.cases.push_back(std::move(rc));
    }
  }
  return draft;
}

// The shared deficiency loop. Whole cases move, so a single move shifts the
// count of every transition on the moved case's path. Each transition gets
// one pass: it runs until the accumulated shift reaches its target (or, for
// deletions, until no traversing case is left) and then retires for good.
// Retiring is essential, not an optimization: two quotas of opposite sign
// over nested variant sets can disturb each other's balance indefinitely,
// with every re-balancing move of one undoing the other, so a loop that
// polices met quotas forever has reachable states with no exit at all. A
// retired quota was met at the moment it retired; later passes may shift
// the balance again, which the per-transition bookkeeping records.
Draft run_noise_loop(const AnnotatedLog& log, VariantIndex& index,
                     const NoiseDraws& draws, const RngForge& forge,
                     bool allow_delete) {
  auto& transitions = index.transitions;
  std::int64_t total_need = 0;
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    transitions[i].needed_noise = draws.per_transition[i];
    transitions[i].added_noise = 0;
    transitions[i].quota_met = false;
    total_need += iabs(transitions[i].needed_noise);
  }

  std::vector<int> copies(log.traces.size(), 1);
  std::vector<char> retired(transitions.size(), 0);
  RngStream rng = forge.stream("sampling_picks");

  auto deficient = [&](std::size_t t) {
    return iabs(transitions[t].added_noise) < iabs(transitions[t].needed_noise);
  };

  const std::int64_t move_budget = 1'000'000 + 50 * total_need;
  std::int64_t moves = 0;

  std::vector<std::size_t> open;
  std::vector<double> weights;
  std::vector<int> candidates;
  while (true) {
    open.clear();
    weights.clear();
    for (std::size_t t = 0; t < transitions.size(); ++t) {
      if (retired[t]) continue;
      if (!deficient(t)) {  // met incidentally by earlier whole-case moves
        transitions[t].quota_met = true;
        retired[t] = 1;
        continue;
      }
      open.push_back(t);
      weights.push_back(static_cast<double>(transitions[t].count));
    }
    if (open.empty()) break;
    std::size_t t = open[rng.weighted_pick(weights)];
    auto& tr = transitions[t];

    int dir = (!allow_delete || tr.needed_noise > 0) ? 1 : -1;
    while (deficient(t)) {
      candidates.clear();
      weights.clear();
      double total = 0;
      for (int v : tr.variant_ids)
        for (int trace : index.variant_traces[v]) {
          if (dir < 0 && copies[trace] == 0) continue;
          candidates.push_back(trace);
          weights.push_back(static_cast<double>(copies[trace]));
          total += copies[trace];
        }
      if (dir < 0 && candidates.empty())
        break;  // nothing left to delete: demand is met by absence
      if (total <= 0)  // every instance is gone; revive a shape uniformly
        std::fill(weights.begin(), weights.end(), 1.0);
      int picked = candidates[rng.weighted_pick(weights)];
      copies[picked] += dir;
      for (int u : index.variant_path[log.traces[picked].variant_id])
        transitions[u].added_noise += dir;
      if (++moves > move_budget)
        throw std::runtime_error("case replication failed to converge");
    }
    tr.quota_met = !deficient(t);
    retired[t] = 1;
  }
  return materialize(log, copies);
}

}  // namespace

Draft apply_sampling(const AnnotatedLog& log, VariantIndex& index,
                     const NoiseDraws& draws, const RngForge& forge) {
  return run_noise_loop(log, index, draws, forge, true);
}

Draft apply_oversampling(const AnnotatedLog& log, VariantIndex& index,
                         const NoiseDraws& draws, const RngForge& forge) {
  return run_noise_loop(log, index, draws, forge, false);
}

void inject_time_noise(Draft& draft, const AnnotatedLog& log,
                       const EpsilonPlan& plan, const RngForge& forge,
                       int workers) {
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t c = lo; c < hi; ++c) {
      ReleasedCase& rc = draft.cases[c];
      const auto& events = log.traces[rc.trace_index].events;
      int live = draft.copy_count[rc.trace_index];
      rc.epsilon_effective.resize(events.size());
      for (std::size_t i = 0; i < events.size(); ++i) {
        const AnnotatedEvent& event = events[i];
        double eff = event.epsilon_t;
        if (!std::isinf(eff) && live > 0) eff /= live;
        rc.epsilon_effective[i] = eff;
        const GroupStats& group = plan.groups[event.group];
        if (std::isinf(eff) || group.range <= 0) continue;
        RngStream stream =
            forge.stream("time_noise", static_cast<std::uint64_t>(rc.trace_index),
                         static_cast<std::uint64_t>(rc.copy_ordinal), i);
        double shift = stream.laplace(1.0 / eff) * group.range;
        rc.durations[i] = std::max(0.0, rc.durations[i] + shift);
      }
    }
  };

  std::size_t n = draft.cases.size();
  std::size_t lanes = std::min<std::size_t>(std::max(workers, 1), n);
  if (lanes <= 1) {
    work(0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + lanes - 1) / lanes;
  for (std::size_t lane = 0; lane < lanes; ++lane) {
    std::size_t lo = lane * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(work, lo, hi);
  }
  for (auto& thread : pool) thread.join();
}

double compress_timestamps(Draft& draft, double original_range_seconds,
                           bool enabled) {
  if (!enabled) return 1.0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& rc : draft.cases) {
    lo = std::min(lo, rc.durations[0]);
    hi = std::max(hi, rc.durations[0]);
  }
  double released_range = draft.cases.empty() ? 0.0 : hi - lo;
  double original_days = original_range_seconds / kSecondsPerDay;
  double released_days = released_range / kSecondsPerDay;
  double factor = original_days == 0 && released_days == 0
                      ? 1.0
                      : original_days / (released_days + original_days) / 2;
  for (auto& rc : draft.cases) rc.durations[0] *= factor;
  return factor;
}

EventLog finalize(const Draft& draft, const AnnotatedLog& log,
                  double epsilon_d, const RngForge& forge,
                  EpsilonAnnotations* epsilons) {
  struct Row {
    Trace trace;
    std::vector<double> eff;
  };
  std::vector<Row> rows;
  rows.reserve(draft.cases.size());
  RngStream ids = forge.stream("case_ids");
  char hex[33];
  for (const auto& rc : draft.cases) {
    const auto& events = log.traces[rc.trace_index].events;
    Row row;
    std::snprintf(hex, sizeof hex, "%016llx%016llx",
                  static_cast<unsigned long long>(ids.next_u64()),
                  static_cast<unsigned long long>(ids.next_u64()));
    row.trace.case_id = hex;
    Seconds at = log.log_start;
    for (std::size_t i = 0; i < events.size(); ++i) {
      at += static_cast<Seconds>(std::llround(rc.durations[i]));
      row.trace.events.push_back({events[i].activity, at});
    }
    row.eff = rc.epsilon_effective;
    rows.push_back(std::move(row));
  }

  RngStream mixer = forge.stream("shuffle");
  mixer.shuffle(rows);
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.trace.events.front().timestamp < b.trace.events.front().timestamp;
  });

  EventLog out;
  for (auto& row : rows) {
    if (epsilons) {
      epsilons->per_trace.push_back(epsilon_d);
      epsilons->per_event.push_back(std::move(row.eff));
    }
    out.traces.push_back(std::move(row.trace));
  }
  return out;
}

}  // namespace privlog
