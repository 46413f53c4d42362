#include "privlog/event_log.hpp"

#include <algorithm>

#include "privlog/errors.hpp"

namespace privlog {

std::size_t EventLog::event_count() const {
  std::size_t n = 0;
  for (const auto& trace : traces) n += trace.events.size();
  return n;
}

Seconds EventLog::start() const {
  bool seen = false;
  Seconds best = 0;
  for (const auto& trace : traces)
    for (const auto& event : trace.events)
      if (!seen || event.timestamp < best) {
        best = event.timestamp;
        seen = true;
      }
  if (!seen) throw ValidationError("empty log has no start timestamp");
  return best;
}

Variant variant_of(const Trace& trace) {
  Variant variant;
  variant.reserve(trace.events.size());
  for (const auto& event : trace.events) variant.push_back(event.activity);
  return variant;
}

std::set<Variant> variant_set(const EventLog& log) {
  std::set<Variant> variants;
  for (const auto& trace : log.traces) variants.insert(variant_of(trace));
  return variants;
}

std::vector<Variant> distinct_variants(const EventLog& log) {
  auto variants = variant_set(log);
  return {variants.begin(), variants.end()};
}

RelativeTimes compute_relative_times(const EventLog& log) {
  RelativeTimes times;
  times.log_start = log.start();
  times.cases.reserve(log.traces.size());
  for (const auto& trace : log.traces) {
    CaseTimes ct;
    ct.start_offset = trace.events.front().timestamp - times.log_start;
    ct.deltas.resize(trace.events.size(), 0);
    for (std::size_t i = 1; i < trace.events.size(); ++i)
      ct.deltas[i] = trace.events[i].timestamp - trace.events[i - 1].timestamp;
    times.cases.push_back(std::move(ct));
  }
  return times;
}

EventLog reconstruct_log(const EventLog& shape, const RelativeTimes& times) {
  EventLog out = shape;
  for (std::size_t t = 0; t < out.traces.size(); ++t) {
    Seconds at = times.log_start + times.cases[t].start_offset;
    for (std::size_t i = 0; i < out.traces[t].events.size(); ++i) {
      if (i > 0) at += times.cases[t].deltas[i];
      out.traces[t].events[i].timestamp = at;
    }
  }
  return out;
}

void validate(const EventLog& log) {
  if (log.traces.empty()) throw ValidationError("the log has no cases");
  for (const auto& trace : log.traces) {
    if (trace.events.empty())
      throw ValidationError("case '" + trace.case_id + "' has no events");
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      if (trace.events[i].activity.empty())
        throw ValidationError("case '" + trace.case_id +
                              "' has an event with an empty activity");
      if (i > 0 && trace.events[i].timestamp < trace.events[i - 1].timestamp)
        throw ValidationError("case '" + trace.case_id +
                              "' events are not time-ordered");
    }
  }
}

}  // namespace privlog
