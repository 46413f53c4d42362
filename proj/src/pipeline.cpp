#include "privlog/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include <json.hpp>

#include "privlog/errors.hpp"

namespace privlog {

namespace {

using json = nlohmann::ordered_json;

// JSON has no infinity literal; reports write it as the string "inf".
json eps_value(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("failed writing '" + path + "'");
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.delta > 0 && config.delta < 1))
    throw ConfigError("delta must lie strictly between 0 and 1");
  if (!(config.start_precision_days >= 0))
    throw ConfigError("start precision must be non-negative");
  if (!(config.time_precision_seconds >= 0))
    throw ConfigError("time precision must be non-negative");
  if (config.workers < 1) throw ConfigError("workers must be at least 1");
}

AnonymizeOutcome anonymize_log(const EventLog& input, const RunConfig& config) {
  validate(config);
  validate(input);
  if (input.traces.empty()) throw ValidationError("the log has no cases");
  auto started = std::chrono::steady_clock::now();

  Precisions precisions{config.start_precision_days * kSecondsPerDay,
                        config.time_precision_seconds};

  Dafsa dafsa = build_minimal_dafsa(distinct_variants(input));
  AnnotatedLog annotated = annotate_log(input, dafsa);
  std::size_t input_traces = annotated.traces.size();
  std::size_t input_events = annotated.event_count();
  std::size_t input_variants = annotated.variants.size();

  double original_range = 0;
  for (const auto& trace : input.traces)
    original_range =
        std::max(original_range, static_cast<double>(
                                     trace.events.front().timestamp -
                                     annotated.log_start));

  std::vector<GroupStats> groups = compute_group_stats(annotated, precisions);
  compute_priors(annotated, groups, config.delta);

  std::vector<std::string> filtered_ids;
  if (config.mode == Mode::filter_sample) {
    std::vector<std::vector<double>> priors;
    priors.reserve(annotated.traces.size());
    for (const auto& trace : annotated.traces) {
      std::vector<double> row;
      row.reserve(trace.events.size());
      for (const auto& event : trace.events) row.push_back(event.prior);
      priors.push_back(std::move(row));
    }
    FilterResult filtered =
        filter_cases(annotated, priors, config.delta, precisions);
    annotated = std::move(filtered.log);
    groups = std::move(filtered.groups);
    filtered_ids = std::move(filtered.removed_case_ids);
  }

  EpsilonPlan plan =
      build_epsilon_plan(annotated, groups, config.delta, config.mode,
                         precisions, config.scale_by_trace_length);
  plan.filtered_case_ids = filtered_ids;

  VariantIndex index = build_variant_index(annotated);
  RngForge forge(config.seed);
  RngStream z_stream = forge.stream("transition_noise");
  NoiseDraws draws = draw_transition_noise(index, plan.epsilon_d, z_stream);

  Draft draft = config.mode == Mode::oversample
                    ? apply_oversampling(annotated, index, draws, forge)
                    : apply_sampling(annotated, index, draws, forge);
  inject_time_noise(draft, annotated, plan, forge, config.workers);
  double factor = compress_timestamps(draft, original_range, config.compress);

  AnonymizeOutcome outcome;
  outcome.released =
      finalize(draft, annotated, plan.epsilon_d, forge, &outcome.epsilons);

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();

  json report;
  report["delta"] = config.delta;
  report["mode"] = mode_name(config.mode);
  report["seed"] = config.seed;
  report["epsilon_d"] = plan.epsilon_d;
  report["start_precision_days"] = config.start_precision_days;
  report["time_precision_seconds"] = config.time_precision_seconds;
  report["scale_by_trace_length"] = config.scale_by_trace_length;
  report["compress"] = config.compress;
  report["compression_factor"] = factor;
  report["input"] = {{"traces", input_traces},
                     {"events", input_events},
                     {"variants", input_variants}};
  report["released"] = {{"traces", outcome.released.traces.size()},
                        {"events", outcome.released.event_count()},
                        {"variants", distinct_variants(outcome.released).size()}};
  report["filtered_cases"] = filtered_ids;

  struct EpsAgg {
    double lo = std::numeric_limits<double>::infinity();
    double sum = 0;
    std::size_t n = 0;
  };
  std::map<std::tuple<int, std::string, int>, EpsAgg> eps_by_edge;
  for (const auto& trace : annotated.traces)
    for (const auto& event : trace.events) {
      EpsAgg& agg = eps_by_edge[{event.source, event.activity, event.target}];
      agg.lo = std::min(agg.lo, event.epsilon_t);
      agg.sum += event.epsilon_t;
      ++agg.n;
    }
  json transitions = json::array();
  for (const auto& tr : index.transitions) {
    const EpsAgg& agg = eps_by_edge[{tr.source, tr.label, tr.target}];
    json row;
    row["source"] = tr.source;
    row["label"] = tr.label;
    row["target"] = tr.target;
    row["count"] = tr.count;
    row["epsilon_t_min"] = agg.n ? eps_value(agg.lo) : json(nullptr);
    row["epsilon_t_mean"] =
        agg.n ? eps_value(agg.sum / static_cast<double>(agg.n)) : json(nullptr);
    transitions.push_back(std::move(row));
  }
  report["transitions"] = std::move(transitions);
  report["runtime_ms"] = elapsed;
  outcome.report_json = report.dump(2) + "\n";
  return outcome;
}

InspectSummary inspect_log(const EventLog& log) {
  InspectSummary summary;
  summary.trace_count = log.traces.size();
  summary.event_count = log.event_count();
  Dafsa dafsa = build_minimal_dafsa(distinct_variants(log));
  AnnotatedLog annotated = annotate_log(log, dafsa);
  summary.variant_count = annotated.variants.size();
  summary.dafsa_states = dafsa.state_count();
  summary.dafsa_transitions = dafsa.transition_count();
  summary.contingency = contingency_table(annotated);
  return summary;
}

std::string to_text(const InspectSummary& summary) {
  std::string out;
  out += "cases:       " + std::to_string(summary.trace_count) + "\n";
  out += "events:      " + std::to_string(summary.event_count) + "\n";
  out += "variants:    " + std::to_string(summary.variant_count) + "\n";
  out += "states:      " + std::to_string(summary.dafsa_states) + "\n";
  out += "transitions: " + std::to_string(summary.dafsa_transitions) + "\n";
  for (const auto& row : summary.contingency)
    out += "  s" + std::to_string(row.source) + " -" + row.label + "-> s" +
           std::to_string(row.target) + ": " + std::to_string(row.count) + "\n";
  return out;
}

namespace {

int run_guarded(const std::function<void()>& body) {
  try {
    body();
    return ExitCode::ok;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCode::config;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCode::parse;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCode::parse;
  } catch (const UnreleasableError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCode::unreleasable;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return ExitCode::io;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return ExitCode::internal;
  }
}

}  // namespace

int cmd_anonymize(const RunConfig& config) {
  return run_guarded([&] {
    validate(config);
    if (config.input.empty() || config.output.empty())
      throw ConfigError("anonymize needs --input and --output");
    EventLog log = parse_event_log(config.input, config.format);
    AnonymizeOutcome outcome = anonymize_log(log, config);
    write_event_log(outcome.released, config.output, config.format,
                    &outcome.epsilons);
    if (!config.report_path.empty())
      write_text_file(config.report_path, outcome.report_json);
    std::fprintf(stderr, "released %zu cases (%zu events) to %s\n",
                 outcome.released.traces.size(),
                 outcome.released.event_count(), config.output.c_str());
  });
}

int cmd_evaluate(const std::string& original_path,
                 const std::string& released_path, LogFormat format,
                 const std::string& report_path, const std::string& csv_label) {
  return run_guarded([&] {
    if (original_path.empty() || released_path.empty())
      throw ConfigError("evaluate needs --input and --released");
    EventLog original = parse_event_log(original_path, format);
    EventLog released = parse_event_log(released_path, format);
    MetricsReport report = evaluate(original, released);
    std::string body;
    if (csv_label.empty())
      body = to_json(report) + "\n";
    else
      body = csv_header() + "\n" + to_csv_row(report, csv_label) + "\n";
    std::fputs(body.c_str(), stdout);
    if (!report_path.empty()) write_text_file(report_path, body);
  });
}

int cmd_inspect(const std::string& input_path, LogFormat format, bool dot) {
  return run_guarded([&] {
    if (input_path.empty()) throw ConfigError("inspect needs --input");
    EventLog log = parse_event_log(input_path, format);
    InspectSummary summary = inspect_log(log);
    std::fputs(to_text(summary).c_str(), stdout);
    if (dot) {
      Dafsa dafsa = build_minimal_dafsa(distinct_variants(log));
      std::fputs(to_dot(dafsa).c_str(), stdout);
    }
  });
}

}  // namespace privlog
