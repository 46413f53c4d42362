#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "privlog/event_log.hpp"

namespace privlog {

enum class LogFormat { xes, csv };

LogFormat format_from_name(std::string_view name);  // "xes" | "csv"

struct CsvColumns {
  std::string case_id = "case_id";
  std::string activity = "activity";
  std::string timestamp = "timestamp";
};

// Per-trace / per-event epsilon values attached to a released log.
// Infinite values are written as "inf".
struct EpsilonAnnotations {
  std::vector<double> per_trace;               // parallel to traces
  std::vector<std::vector<double>> per_event;  // parallel to traces/events
};

EventLog parse_event_log(const std::string& path, LogFormat format,
                         const CsvColumns& columns = {});
EventLog parse_event_log_text(std::string_view text, LogFormat format,
                              const CsvColumns& columns = {});

void write_event_log(const EventLog& log, const std::string& path,
                     LogFormat format,
                     const EpsilonAnnotations* epsilons = nullptr);
std::string write_event_log_text(const EventLog& log, LogFormat format,
                                 const EpsilonAnnotations* epsilons = nullptr);

}  // namespace privlog
