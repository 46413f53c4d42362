#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "privlog/metrics.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace privlog;

namespace {

EventLog tiny(const std::vector<std::vector<const char*>>& variants) {
  EventLog log;
  int c = 0;
  for (const auto& v : variants) {
    Trace trace;
    trace.case_id = std::to_string(++c);
    Seconds t = fixtures::ts("2020-08-08 10:00");
    for (const char* a : v) {
      trace.events.push_back({a, t});
      t += 3600;
    }
    log.traces.push_back(std::move(trace));
  }
  return log;
}

}  // namespace

TEST_CASE("variant distance is zero on itself, one when disjoint") {
  EventLog log = fixtures::reference_log();
  CHECK(jaccard_variants(log, log) == 0.0);
  CHECK(jaccard_variants(tiny({{"a"}}), tiny({{"b"}})) == 1.0);
  // {ab} vs {ab, cd}: intersection 1, union 2.
  CHECK(jaccard_variants(tiny({{"a", "b"}}), tiny({{"a", "b"}, {"c", "d"}})) ==
        doctest::Approx(0.5));
}

TEST_CASE("directly-follows graph counts arcs and sums waiting months") {
  EventLog log = tiny({{"a", "b", "c"}, {"a", "c"}});
  auto dfg = build_dfg(log);
  REQUIRE(dfg.size() == 3);  // a->b, a->c, b->c, sorted
  CHECK(dfg[0].from == "a");
  CHECK(dfg[0].to == "b");
  CHECK(dfg[0].frequency == 1);
  CHECK(dfg[0].total_months == doctest::Approx(3600.0 / (30 * 86400)));
  CHECK(dfg[1].from == "a");
  CHECK(dfg[1].to == "c");
  CHECK(dfg[2].from == "b");
  CHECK(dfg[2].to == "c");

  auto reference = build_dfg(fixtures::reference_log());
  std::int64_t total = 0;
  for (const auto& arc : reference) total += arc.frequency;
  CHECK(total == 20 - 6);  // events minus one start per case
}

TEST_CASE("earth mover distance on hand-checked pairs") {
  CHECK(emd({0.0}, {1.0}) == doctest::Approx(1.0));
  CHECK(emd({0.0, 1.0}, {1.0, 2.0}) == doctest::Approx(1.0));
  CHECK(emd({5.0, 5.0}, {5.0, 5.0}) == doctest::Approx(0.0));
  CHECK(emd({0.0, 10.0}, {5.0, 5.0}) == doctest::Approx(5.0));
  CHECK(emd({1.0, 2.0, 3.0}, {2.0}) == doctest::Approx(2.0 / 3.0));
  CHECK_THROWS_AS(emd({}, {1.0}), std::domain_error);
  CHECK_THROWS_AS(emd({1.0}, {}), std::domain_error);
}

TEST_CASE("earth mover distance equals the transport solve") {
  RngStream rng(17);
  for (int round = 0; round < 100; ++round) {
    std::vector<double> u(1 + rng.below(10)), v(1 + rng.below(10));
    for (double& x : u) x = std::floor(rng.uniform01() * 40) / 4.0;
    for (double& x : v) x = std::floor(rng.uniform01() * 40) / 4.0;
    double fast = emd(u, v);
    double slow = oracles::emd_by_transport(u, v);
    CHECK(fast == doctest::Approx(slow).epsilon(1e-9));
  }
}

TEST_CASE("evaluation of a log against itself is all zeros") {
  EventLog log = fixtures::reference_log();
  MetricsReport report = evaluate(log, log);
  CHECK(report.jaccard == 0.0);
  CHECK(report.emd_frequency == doctest::Approx(0.0));
  CHECK(report.emd_time_months == doctest::Approx(0.0));
  CHECK(report.original_variants == 4);
  CHECK(report.released_variants == 4);
  CHECK(report.missing_variants == 0);
  CHECK(report.added_variants == 0);
}

TEST_CASE("evaluation counts missing and added variants") {
  EventLog original = tiny({{"a", "b"}, {"c", "d"}});
  EventLog released = tiny({{"a", "b"}, {"e", "f"}});
  MetricsReport report = evaluate(original, released);
  CHECK(report.missing_variants == 1);
  CHECK(report.added_variants == 1);
  CHECK(report.jaccard == doctest::Approx(2.0 / 3.0));
  // Swapping one unit-frequency arc for another leaves the frequency
  // distribution itself unchanged, so the frequency distance stays zero.
  CHECK(report.emd_frequency == doctest::Approx(0.0));
}

TEST_CASE("evaluation registers frequency shifts") {
  EventLog original = tiny({{"a", "b"}, {"a", "b"}, {"c", "d"}});
  EventLog released = tiny({{"a", "b"}, {"c", "d"}});
  MetricsReport report = evaluate(original, released);
  // Arc frequencies {2,1} vs {1,1}: half a unit of mass moves distance one.
  CHECK(report.emd_frequency == doctest::Approx(0.5));
}

TEST_CASE("evaluation tolerates single-event logs") {
  EventLog original = tiny({{"a"}});
  EventLog released = tiny({{"a"}});
  MetricsReport report = evaluate(original, released);  // no arcs at all
  CHECK(report.jaccard == 0.0);
  CHECK(report.emd_frequency == 0.0);
}

TEST_CASE("report serialization") {
  MetricsReport report;
  report.jaccard = 0.125;
  report.original_variants = 4;
  std::string json = to_json(report);
  CHECK(json.find("\"jaccard\": 0.125") != std::string::npos);
  CHECK(json.find("\"original_variants\": 4") != std::string::npos);
  CHECK(csv_header().substr(0, 6) == "label,");
  std::string row = to_csv_row(report, "run1");
  CHECK(row.substr(0, 5) == "run1,");
  CHECK(row.find("0.125") != std::string::npos);
}
