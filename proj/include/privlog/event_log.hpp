#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "privlog/time_util.hpp"

namespace privlog {

struct Event {
  std::string activity;
  Seconds timestamp = 0;  // completion time
};

// Events are kept in ascending timestamp order (ties: input order).
struct Trace {
  std::string case_id;
  std::vector<Event> events;
};

struct EventLog {
  std::vector<Trace> traces;

  std::size_t event_count() const;
  // Earliest timestamp in the log. Precondition: at least one event.
  Seconds start() const;
};

// The sequence of activity labels of a trace.
using Variant = std::vector<std::string>;

Variant variant_of(const Trace& trace);
std::set<Variant> variant_set(const EventLog& log);
// Distinct variants of the log, lexicographically sorted.
std::vector<Variant> distinct_variants(const EventLog& log);

// Per-trace start offset from the log's first timestamp plus, for every
// event after the first, the delta from its predecessor. The original
// timestamps are exactly log_start + start_offset + cumulative deltas.
struct CaseTimes {
  Seconds start_offset = 0;
  std::vector<Seconds> deltas;  // parallel to events; deltas[0] == 0
};

struct RelativeTimes {
  Seconds log_start = 0;
  std::vector<CaseTimes> cases;  // parallel to log.traces
};

RelativeTimes compute_relative_times(const EventLog& log);

// Inverse of compute_relative_times: same ids and activities as `shape`,
// timestamps rebuilt from `times`.
EventLog reconstruct_log(const EventLog& shape, const RelativeTimes& times);

// Throws ValidationError unless every trace is non-empty, activities are
// non-empty, and events are time-ordered.
void validate(const EventLog& log);

}  // namespace privlog
