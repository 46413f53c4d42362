#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "privlog/errors.hpp"
#include "privlog/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"differentially private release of event logs"};
  app.require_subcommand(1);

  privlog::RunConfig config;
  std::string format = "csv";
  std::string mode = "sample";

  auto* anon = app.add_subcommand(
      "anonymize", "release a noised copy of a log under a guessing-advantage bound");
  anon->add_option("--input", config.input, "input log file")->required();
  anon->add_option("--output", config.output, "where to write the released log")
      ->required();
  anon->add_option("--format", format, "log format: csv or xes")
      ->check(CLI::IsMember({"csv", "xes"}));
  anon->add_option("--delta", config.delta,
                   "guessing-advantage bound, strictly between 0 and 1");
  anon->add_option("--mode", mode, "sample, filter_sample, or oversample")
      ->check(CLI::IsMember({"sample", "filter_sample", "oversample"}));
  anon->add_option("--start-precision-days", config.start_precision_days,
                   "attacker precision for case start times, in days");
  anon->add_option("--time-precision-seconds", config.time_precision_seconds,
                   "attacker precision for event deltas, in seconds");
  anon->add_option("--seed", config.seed, "master seed; same seed, same output");
  anon->add_flag("--compress,!--no-compress", config.compress,
                 "shrink released case start offsets (default on)");
  anon->add_flag("--scale-by-trace-length", config.scale_by_trace_length,
                 "divide event epsilons by the longest case length");
  anon->add_option("--report", config.report_path,
                   "write a JSON run report to this path");
  anon->add_option("--workers", config.workers,
                   "threads for time-noise injection");

  std::string original, released, report_path, csv_label;
  bool dot = false;
  auto* eval = app.add_subcommand(
      "evaluate", "compare a released log against its original");
  eval->add_option("--input", original, "original log file")->required();
  eval->add_option("--released", released, "released log file")->required();
  eval->add_option("--format", format, "log format: csv or xes")
      ->check(CLI::IsMember({"csv", "xes"}));
  eval->add_option("--report", report_path, "also write the result to this path");
  eval->add_option("--csv-row", csv_label,
                   "emit a CSV row labeled with this string instead of JSON");

  auto* insp = app.add_subcommand(
      "inspect", "summarize a log's variants, automaton, and transition counts");
  insp->add_option("--input", original, "log file")->required();
  insp->add_option("--format", format, "log format: csv or xes")
      ->check(CLI::IsMember({"csv", "xes"}));
  insp->add_flag("--dot", dot, "also print the automaton in DOT form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : privlog::ExitCode::config;
  }

  try {
    privlog::LogFormat fmt = privlog::format_from_name(format);
    if (anon->parsed()) {
      config.format = fmt;
      config.mode = privlog::mode_from_name(mode);
      return privlog::cmd_anonymize(config);
    }
    if (eval->parsed())
      return privlog::cmd_evaluate(original, released, fmt, report_path,
                                   csv_label);
    return privlog::cmd_inspect(original, fmt, dot);
  } catch (const privlog::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return privlog::ExitCode::config;
  }
}
