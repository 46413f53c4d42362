#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "privlog/event_log.hpp"

namespace privlog {

// 1 - |A n B| / |A u B| over the two logs' variant sets; two empty logs
// compare as distance 0.
double jaccard_variants(const EventLog& a, const EventLog& b);

// Directly-follows graph: one arc per consecutive activity pair, with its
// frequency and the summed waiting time in months (30-day months).
struct DfgArc {
  std::string from;
  std::string to;
  std::int64_t frequency = 0;
  double total_months = 0.0;
};
std::vector<DfgArc> build_dfg(const EventLog& log);  // sorted by (from, to)

// 1-D earth mover's distance between two weight multisets, each carrying
// total mass 1 (the integral of |F_u - F_v|). Throws std::domain_error if
// either multiset is empty.
double emd(std::vector<double> u, std::vector<double> v);

struct MetricsReport {
  double jaccard = 0.0;
  double emd_frequency = 0.0;
  double emd_time_months = 0.0;
  std::size_t original_variants = 0;
  std::size_t released_variants = 0;
  std::size_t missing_variants = 0;  // in original, not released
  std::size_t added_variants = 0;    // in released, not original
};

// DFG arc multisets are aligned on the union of arc keys; an arc absent from
// one log contributes weight 0 on that side.
MetricsReport evaluate(const EventLog& original, const EventLog& released);

std::string to_json(const MetricsReport& report);
std::string csv_header();
std::string to_csv_row(const MetricsReport& report, std::string_view label);

}  // namespace privlog
