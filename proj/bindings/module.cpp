#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "privlog/errors.hpp"
#include "privlog/pipeline.hpp"

namespace py = pybind11;
using namespace privlog;

namespace {

RunConfig make_config(const std::string& format, double delta,
                      const std::string& mode, std::uint64_t seed,
                      double start_precision_days,
                      double time_precision_seconds, bool compress,
                      bool scale_by_trace_length, int workers) {
  RunConfig config;
  config.format = format_from_name(format);
  config.delta = delta;
  config.mode = mode_from_name(mode);
  config.seed = seed;
  config.start_precision_days = start_precision_days;
  config.time_precision_seconds = time_precision_seconds;
  config.compress = compress;
  config.scale_by_trace_length = scale_by_trace_length;
  config.workers = workers;
  return config;
}

py::dict report_to_dict(const MetricsReport& report) {
  py::dict out;
  out["jaccard"] = report.jaccard;
  out["emd_frequency"] = report.emd_frequency;
  out["emd_time_months"] = report.emd_time_months;
  out["original_variants"] = report.original_variants;
  out["released_variants"] = report.released_variants;
  out["missing_variants"] = report.missing_variants;
  out["added_variants"] = report.added_variants;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "differentially private release of event logs";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<UnreleasableError>(m, "UnreleasableError",
                                            PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  m.def(
      "anonymize_text",
      [](const std::string& text, const std::string& format, double delta,
         const std::string& mode, std::uint64_t seed,
         double start_precision_days, double time_precision_seconds,
         bool compress, bool scale_by_trace_length, int workers) {
        RunConfig config = make_config(
            format, delta, mode, seed, start_precision_days,
            time_precision_seconds, compress, scale_by_trace_length, workers);
        EventLog log = parse_event_log_text(text, config.format);
        AnonymizeOutcome outcome = anonymize_log(log, config);
        std::string released = write_event_log_text(
            outcome.released, config.format, &outcome.epsilons);
        return py::make_tuple(released, outcome.report_json);
      },
      py::arg("text"), py::arg("format") = "csv", py::arg("delta") = 0.3,
      py::arg("mode") = "sample", py::arg("seed") = 0,
      py::arg("start_precision_days") = 1.0,
      py::arg("time_precision_seconds") = 10.0, py::arg("compress") = true,
      py::arg("scale_by_trace_length") = false, py::arg("workers") = 1,
      "Anonymize a log given as text; returns (released_text, report_json).");

  m.def(
      "anonymize_file",
      [](const std::string& input, const std::string& output,
         const std::string& format, double delta, const std::string& mode,
         std::uint64_t seed, double start_precision_days,
         double time_precision_seconds, bool compress,
         bool scale_by_trace_length, int workers) {
        RunConfig config = make_config(
            format, delta, mode, seed, start_precision_days,
            time_precision_seconds, compress, scale_by_trace_length, workers);
        config.input = input;
        config.output = output;
        EventLog log = parse_event_log(input, config.format);
        AnonymizeOutcome outcome = anonymize_log(log, config);
        write_event_log(outcome.released, output, config.format,
                        &outcome.epsilons);
        return outcome.report_json;
      },
      py::arg("input"), py::arg("output"), py::arg("format") = "csv",
      py::arg("delta") = 0.3, py::arg("mode") = "sample", py::arg("seed") = 0,
      py::arg("start_precision_days") = 1.0,
      py::arg("time_precision_seconds") = 10.0, py::arg("compress") = true,
      py::arg("scale_by_trace_length") = false, py::arg("workers") = 1,
      "Anonymize a log file in place of the CLI; returns the report JSON.");

  m.def(
      "evaluate_text",
      [](const std::string& original, const std::string& released,
         const std::string& format) {
        LogFormat fmt = format_from_name(format);
        MetricsReport report = evaluate(parse_event_log_text(original, fmt),
                                        parse_event_log_text(released, fmt));
        return report_to_dict(report);
      },
      py::arg("original"), py::arg("released"), py::arg("format") = "csv",
      "Utility-loss metrics between two logs given as text.");

  m.def(
      "evaluate_files",
      [](const std::string& original, const std::string& released,
         const std::string& format) {
        LogFormat fmt = format_from_name(format);
        MetricsReport report = evaluate(parse_event_log(original, fmt),
                                        parse_event_log(released, fmt));
        return report_to_dict(report);
      },
      py::arg("original"), py::arg("released"), py::arg("format") = "csv",
      "Utility-loss metrics between two log files.");

  m.def(
      "inspect_text",
      [](const std::string& text, const std::string& format) {
        EventLog log = parse_event_log_text(text, format_from_name(format));
        return to_text(inspect_log(log));
      },
      py::arg("text"), py::arg("format") = "csv",
      "Human-readable summary of a log's variants and automaton.");

  m.def(
      "dafsa_dot",
      [](const std::vector<Variant>& variants) {
        return to_dot(build_minimal_dafsa(variants));
      },
      py::arg("variants"),
      "Minimal automaton of the given variants, in DOT form.");

  m.def("worst_case_prior", &worst_case_prior, py::arg("delta"),
        "The prior that yields the smallest epsilon for a given delta.");
  m.def("epsilon_from_advantage", &epsilon_from_advantage, py::arg("prior"),
        py::arg("delta"), py::arg("radius") = 1.0,
        "Epsilon that caps the attacker's guessing advantage at delta.");
  m.def("epsilon_oversampling", &epsilon_oversampling, py::arg("delta"),
        "Epsilon for the replication-only mode at a given delta.");
}
