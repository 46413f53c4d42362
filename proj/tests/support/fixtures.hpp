#pragma once

// Shared test data: the six-case reference log exercised throughout the
// suite, its reference per-event priors, and small random-instance
// generators for property tests.

#include <algorithm>
#include <string>
#include <vector>

#include "privlog/event_log.hpp"
#include "privlog/log_io.hpp"
#include "privlog/rng.hpp"
#include "privlog/time_util.hpp"

namespace fixtures {

inline privlog::Seconds ts(const char* text) {
  return privlog::parse_timestamp(text);
}

// Six cases over activities A..E; variants ABC x3, DAEC, DABC, AEC.
inline privlog::EventLog reference_log() {
  using privlog::Event;
  using privlog::Trace;
  privlog::EventLog log;
  log.traces = {
      Trace{"1",
            {Event{"A", ts("2020-08-08 10:20")}, Event{"B", ts("2020-08-08 10:50")},
             Event{"C", ts("2020-08-08 16:15")}}},
      Trace{"2",
            {Event{"D", ts("2020-08-08 12:37")}, Event{"A", ts("2020-08-08 14:37")},
             Event{"E", ts("2020-08-08 15:07")}, Event{"C", ts("2020-08-08 20:31")}}},
      Trace{"3",
            {Event{"A", ts("2020-08-09 13:30")}, Event{"B", ts("2020-08-09 13:55")},
             Event{"C", ts("2020-08-09 20:55")}}},
      Trace{"4",
            {Event{"D", ts("2020-08-09 15:00")}, Event{"A", ts("2020-08-09 17:00")},
             Event{"B", ts("2020-08-09 17:40")}, Event{"C", ts("2020-08-09 23:05")}}},
      Trace{"5",
            {Event{"A", ts("2020-08-09 17:25")}, Event{"E", ts("2020-08-09 17:55")},
             Event{"C", ts("2020-08-10 23:55")}}},
      Trace{"6",
            {Event{"A", ts("2020-08-11 17:00")}, Event{"B", ts("2020-08-11 17:27")},
             Event{"C", ts("2020-08-11 23:45")}}},
  };
  return log;
}

inline std::string reference_csv() {
  return privlog::write_event_log_text(reference_log(), privlog::LogFormat::csv);
}

// Published per-event priors of the reference log at delta = 0.3 (case 1's
// B event is the 0.75 that triggers filtering). Used verbatim as the input
// matrix of the filtering scenario.
inline std::vector<std::vector<double>> reference_priors() {
  return {
      {0.33, 0.75, 0.33},
      {0.33, 0.35, 0.35, 0.33},
      {0.5, 0.5, 0.167},
      {0.5, 0.35, 0.25, 0.33},
      {0.5, 0.35, 0.17},
      {0.17, 0.5, 0.17},
  };
}

// Priors the window-count estimator itself yields for the reference log at
// delta = 0.3 with the default precisions (one day for starts, ten seconds
// for relative times). Sixteen cells agree with the table above; the other
// four (1-B, 3-B, 6-B, 2-C) differ because no symmetric window over those
// groups reproduces those exact values.
inline std::vector<std::vector<double>> estimated_priors() {
  return {
      {2.0 / 6, 1.0 / 4, 2.0 / 6},
      {2.0 / 6, 0.35, 0.35, 1.0 / 6},
      {3.0 / 6, 1.0 / 4, 1.0 / 6},
      {3.0 / 6, 0.35, 1.0 / 4, 2.0 / 6},
      {3.0 / 6, 0.35, 1.0 / 6},
      {1.0 / 6, 1.0 / 4, 1.0 / 6},
  };
}

// Expected per-event epsilon_t of the filtered reference log at delta = 0.3
// (cases 2..6), tolerance 0.01.
inline std::vector<std::vector<double>> filtered_epsilons() {
  return {
      {1.39, 1.24, 1.24, 1.39},
      {1.8, 1.24, 1.39},
      {1.79, 1.24, 1.24, 1.39},
      {1.79, 1.24, 1.39},
      {1.39, 1.24, 1.39},
  };
}

// Expected re-estimated priors of the filtered reference log.
inline std::vector<std::vector<double>> filtered_priors() {
  return {
      {0.2, 0.35, 0.35, 0.2},
      {0.6, 0.33, 0.2},
      {0.6, 0.35, 0.33, 0.2},
      {0.6, 0.35, 0.2},
      {0.2, 0.33, 0.2},
  };
}

// Random small log: up to `max_cases` cases over up to `max_activities`
// labels, variant lengths 1..max_len, second-scale noise-friendly times.
inline privlog::EventLog random_log(privlog::RngStream& rng,
                                    std::size_t max_cases = 50,
                                    std::size_t max_activities = 8,
                                    std::size_t max_len = 8) {
  privlog::EventLog log;
  std::size_t n_cases = 1 + rng.below(max_cases);
  std::size_t n_acts = 1 + rng.below(max_activities);
  privlog::Seconds base = 1596880800;  // 2020-08-08T10:00:00Z
  for (std::size_t c = 0; c < n_cases; ++c) {
    privlog::Trace trace;
    trace.case_id = "c" + std::to_string(c + 1);
    std::size_t len = 1 + rng.below(max_len);
    privlog::Seconds t = base + static_cast<privlog::Seconds>(rng.below(10 * 86400));
    for (std::size_t i = 0; i < len; ++i) {
      std::string activity(1, static_cast<char>('a' + rng.below(n_acts)));
      trace.events.push_back({activity, t});
      t += static_cast<privlog::Seconds>(rng.below(7200));
    }
    log.traces.push_back(std::move(trace));
  }
  return log;
}

// Order-insensitive equality: traces sorted by (case id, first timestamp).
inline bool same_log(const privlog::EventLog& a, const privlog::EventLog& b) {
  auto canon = [](const privlog::EventLog& log) {
    std::vector<privlog::Trace> traces = log.traces;
    std::sort(traces.begin(), traces.end(),
              [](const privlog::Trace& x, const privlog::Trace& y) {
                if (x.case_id != y.case_id) return x.case_id < y.case_id;
                if (x.events.empty() || y.events.empty())
                  return x.events.size() < y.events.size();
                return x.events.front().timestamp < y.events.front().timestamp;
              });
    return traces;
  };
  auto ta = canon(a);
  auto tb = canon(b);
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].case_id != tb[i].case_id) return false;
    if (ta[i].events.size() != tb[i].events.size()) return false;
    for (std::size_t j = 0; j < ta[i].events.size(); ++j) {
      if (ta[i].events[j].activity != tb[i].events[j].activity) return false;
      if (ta[i].events[j].timestamp != tb[i].events[j].timestamp) return false;
    }
  }
  return true;
}

}  // namespace fixtures
