#include "privlog/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "privlog/errors.hpp"

namespace privlog {

Mode mode_from_name(std::string_view name) {
  if (name == "sample") return Mode::sample;
  if (name == "filter_sample" || name == "filter-sample") return Mode::filter_sample;
  if (name == "oversample") return Mode::oversample;
  throw ConfigError("unknown mode '" + std::string(name) +
                    "' (expected sample, filter_sample, or oversample)");
}

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::sample: return "sample";
    case Mode::filter_sample: return "filter_sample";
    case Mode::oversample: return "oversample";
  }
  return "?";
}

std::vector<GroupStats> compute_group_stats(AnnotatedLog& log,
                                            const Precisions& precisions) {
  if (precisions.start_seconds < 0 || precisions.time_seconds < 0)
    throw ConfigError("precision must be non-negative");

  // Group 0 holds every case start; later events group by automaton edge.
  std::map<std::tuple<int, std::string, int>, int> edge_groups;
  std::vector<GroupStats> groups;
  groups.push_back({true, -1, "", -1, 0, 0, 0, 0, {}});

  std::vector<std::vector<AnnotatedEvent*>> members(1);
  for (auto& trace : log.traces) {
    for (auto& event : trace.events) {
      int g;
      if (event.is_start) {
        g = 0;
      } else {
        auto key = std::make_tuple(event.source, event.activity, event.target);
        auto it = edge_groups.find(key);
        if (it == edge_groups.end()) {
          it = edge_groups.emplace(key, static_cast<int>(groups.size())).first;
          groups.push_back({false, event.source, event.activity, event.target,
                            0, 0, 0, 0, {}});
          members.emplace_back();
        }
        g = it->second;
      }
      event.group = g;
      members[g].push_back(&event);
    }
  }

  for (std::size_t g = 0; g < groups.size(); ++g) {
    GroupStats& stats = groups[g];
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const AnnotatedEvent* event : members[g]) {
      lo = std::min(lo, static_cast<double>(event->rel_time));
      hi = std::max(hi, static_cast<double>(event->rel_time));
    }
    if (members[g].empty()) { lo = hi = 0; }
    stats.min_value = lo;
    stats.max_value = hi;
    stats.range = hi - lo;
    double width = stats.is_start ? precisions.start_seconds : precisions.time_seconds;
    stats.precision =
        stats.range > 0 ? std::clamp(width / stats.range, 0.0, 1.0) : 0.0;
    for (AnnotatedEvent* event : members[g]) {
      event->norm_time =
          stats.range > 0
              ? (static_cast<double>(event->rel_time) - stats.min_value) /
                    stats.range
              : 1.0;
      event->precision = stats.precision;
      stats.norm_values.push_back(event->norm_time);
    }
    std::sort(stats.norm_values.begin(), stats.norm_values.end());
  }
  return groups;
}

double worst_case_prior(double delta) {
  if (!(delta > 0 && delta < 1))
    throw std::domain_error("delta must lie in (0, 1)");
  return (1 - delta) / 2;
}

double empirical_prior(const GroupStats& group, double normalized_value,
                       double delta) {
  if (group.degenerate() || group.norm_values.empty())
    return worst_case_prior(delta);
  const auto& values = group.norm_values;
  double lo = normalized_value - group.precision;
  double hi = normalized_value + group.precision;
  auto first = std::lower_bound(values.begin(), values.end(), lo);
  auto last = std::upper_bound(values.begin(), values.end(), hi);
  return static_cast<double>(last - first) / static_cast<double>(values.size());
}

void compute_priors(AnnotatedLog& log, const std::vector<GroupStats>& groups,
                    double delta) {
  for (auto& trace : log.traces)
    for (auto& event : trace.events)
      event.prior = empirical_prior(groups[event.group], event.norm_time, delta);
}

double epsilon_from_advantage(double prior, double delta, double radius) {
  if (!(delta > 0 && delta < 1))
    throw std::domain_error("delta must lie in (0, 1)");
  if (!(prior > 0 && prior < 1))
    throw std::domain_error("prior must lie in (0, 1)");
  if (!(radius > 0)) throw std::domain_error("radius must be positive");
  if (prior + delta >= 1) return std::numeric_limits<double>::infinity();
  double odds = prior / (1 - prior);
  double posterior_gap = 1 / (delta + prior) - 1;
  return -std::log(odds * posterior_gap) / radius;
}

double epsilon_oversampling(double delta) {
  if (!(delta > 0 && delta < 1))
    throw std::domain_error("delta must lie in (0, 1)");
  // Closed form of the real root of the cubic that ties the replication
  // bound to the target advantage.
  double inner = 2 * delta * delta * delta + 21 * delta * delta - 48 * delta + 25;
  inner = std::max(inner, 0.0);
  double c = std::cbrt(6.0);
  double b = std::cbrt(std::sqrt(3.0) * std::sqrt(inner) - 9 * delta + 9);
  return -2 * std::log(b / (c * c) - (delta - 1) / (c * b));
}

FilterResult filter_cases(const AnnotatedLog& log,
                          const std::vector<std::vector<double>>& priors,
                          double delta, const Precisions& precisions) {
  if (priors.size() != log.traces.size())
    throw ValidationError("prior matrix does not match the log");
  for (std::size_t t = 0; t < log.traces.size(); ++t)
    if (priors[t].size() != log.traces[t].events.size())
      throw ValidationError("prior matrix does not match the log");

  FilterResult result;
  result.log = log;
  for (std::size_t t = 0; t < log.traces.size(); ++t)
    for (std::size_t i = 0; i < priors[t].size(); ++i)
      result.log.traces[t].events[i].prior = priors[t][i];

  // Dropping a case reshapes every group it touched, so re-derive priors and
  // repeat until the survivors are all releasable.
  while (true) {
    std::vector<AnnotatedTrace> kept;
    for (const auto& trace : result.log.traces) {
      bool unbounded = false;
      for (const auto& event : trace.events)
        if (event.prior + delta >= 1) { unbounded = true; break; }
      if (unbounded)
        result.removed_case_ids.push_back(trace.case_id);
      else
        kept.push_back(trace);
    }
    bool changed = kept.size() != result.log.traces.size();
    result.log.traces = std::move(kept);
    if (result.log.traces.empty())
      throw UnreleasableError(
          "every case exceeds the advantage bound at this delta");
    if (!changed) break;
    result.groups = compute_group_stats(result.log, precisions);
    compute_priors(result.log, result.groups, delta);
  }
  if (result.groups.empty())
    result.groups = compute_group_stats(result.log, precisions);
  return result;
}

EpsilonPlan build_epsilon_plan(AnnotatedLog& log,
                               const std::vector<GroupStats>& groups,
                               double delta, Mode mode,
                               const Precisions& precisions,
                               bool scale_by_trace_length) {
  EpsilonPlan plan;
  plan.delta = delta;
  plan.mode = mode;
  plan.precisions = precisions;
  plan.scale_by_trace_length = scale_by_trace_length;
  plan.groups = groups;
  plan.epsilon_d = mode == Mode::oversample
                       ? epsilon_oversampling(delta)
                       : epsilon_from_advantage(worst_case_prior(delta), delta, 1.0);

  std::size_t longest = 0;
  for (const auto& trace : log.traces)
    longest = std::max(longest, trace.events.size());

  for (auto& trace : log.traces) {
    for (auto& event : trace.events) {
      double eps = event.prior + delta >= 1
                       ? std::numeric_limits<double>::infinity()
                       : epsilon_from_advantage(event.prior, delta, 1.0);
      if (scale_by_trace_length && longest > 0) eps /= static_cast<double>(longest);
      event.epsilon_t = eps;
    }
  }
  return plan;
}

}  // namespace privlog
