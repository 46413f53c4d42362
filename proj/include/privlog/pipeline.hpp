#pragma once

#include <cstdint>
#include <string>

#include "privlog/anonymizer.hpp"
#include "privlog/metrics.hpp"

namespace privlog {

struct RunConfig {
  std::string input;
  std::string output;
  LogFormat format = LogFormat::csv;
  double delta = 0.3;
  Mode mode = Mode::sample;
  double start_precision_days = 1.0;
  double time_precision_seconds = 10.0;
  std::uint64_t seed = 0;
  bool compress = true;
  bool scale_by_trace_length = false;
  std::string report_path;
  int workers = 1;
};

// Throws ConfigError on out-of-range values.
void validate(const RunConfig& config);

struct AnonymizeOutcome {
  EventLog released;
  EpsilonAnnotations epsilons;
  std::string report_json;  // includes runtime_ms
};

// The whole release pipeline on an in-memory log (no file I/O):
// relative times -> DAFSA -> annotate -> stats -> priors -> [filter] ->
// epsilon plan -> frequency noise -> sampling/oversampling -> time noise ->
// compression -> finalize.
AnonymizeOutcome anonymize_log(const EventLog& input, const RunConfig& config);

struct InspectSummary {
  std::size_t trace_count = 0;
  std::size_t event_count = 0;
  std::size_t variant_count = 0;
  int dafsa_states = 0;
  int dafsa_transitions = 0;
  ContingencyTable contingency;
};

InspectSummary inspect_log(const EventLog& log);
std::string to_text(const InspectSummary& summary);

// CLI entry points; read/write files, map errors to exit codes.
struct ExitCode {
  static constexpr int ok = 0;
  static constexpr int internal = 1;
  static constexpr int config = 2;
  static constexpr int parse = 3;
  static constexpr int unreleasable = 4;
  static constexpr int io = 5;
};

int cmd_anonymize(const RunConfig& config);
int cmd_evaluate(const std::string& original_path,
                 const std::string& released_path, LogFormat format,
                 const std::string& report_path, const std::string& csv_label);
int cmd_inspect(const std::string& input_path, LogFormat format, bool dot);

}  // namespace privlog
