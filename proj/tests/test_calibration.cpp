#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "privlog/calibration.hpp"
#include "privlog/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace privlog;

namespace {

AnnotatedLog annotated_reference() {
  EventLog log = fixtures::reference_log();
  return annotate_log(log, build_minimal_dafsa(distinct_variants(log)));
}

}  // namespace

TEST_CASE("frequency epsilon from the worst-case prior") {
  CHECK(worst_case_prior(0.3) == doctest::Approx(0.35));
  CHECK(epsilon_from_advantage(worst_case_prior(0.2), 0.2) ==
        doctest::Approx(0.8109).epsilon(1e-3));
  CHECK(epsilon_from_advantage(worst_case_prior(0.3), 0.3) ==
        doctest::Approx(1.2380).epsilon(1e-3));
  CHECK(epsilon_from_advantage(worst_case_prior(0.4), 0.4) ==
        doctest::Approx(1.6946).epsilon(1e-3));
  // Same value in closed form: 2 ln((1+delta)/(1-delta)).
  for (double delta : {0.1, 0.25, 0.5, 0.75}) {
    CHECK(epsilon_from_advantage(worst_case_prior(delta), delta) ==
          doctest::Approx(2 * std::log((1 + delta) / (1 - delta))));
  }
}

TEST_CASE("per-event epsilon at representative priors") {
  CHECK(epsilon_from_advantage(0.2, 0.3) == doctest::Approx(1.39).epsilon(0.01));
  CHECK(epsilon_from_advantage(0.35, 0.3) == doctest::Approx(1.24).epsilon(0.01));
  CHECK(epsilon_from_advantage(0.33, 0.3) == doctest::Approx(1.24).epsilon(0.01));
  CHECK(epsilon_from_advantage(0.6, 0.3) == doctest::Approx(1.79).epsilon(0.01));
  CHECK(epsilon_from_advantage(0.2, 0.3) == doctest::Approx(std::log(4.0)));
  CHECK(epsilon_from_advantage(0.6, 0.3) == doctest::Approx(std::log(6.0)));
}

TEST_CASE("epsilon bound edge cases") {
  CHECK(std::isinf(epsilon_from_advantage(0.7, 0.3)));
  CHECK(std::isinf(epsilon_from_advantage(0.75, 0.3)));
  CHECK(std::isinf(epsilon_from_advantage(0.9999, 0.3)));
  CHECK_THROWS_AS(epsilon_from_advantage(0.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(epsilon_from_advantage(1.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(epsilon_from_advantage(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(epsilon_from_advantage(0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(epsilon_from_advantage(0.5, 0.3, 0.0), std::domain_error);
  CHECK_THROWS_AS(worst_case_prior(0.0), std::domain_error);
  // Scaling the radius scales the epsilon.
  CHECK(epsilon_from_advantage(0.2, 0.3, 2.0) ==
        doctest::Approx(epsilon_from_advantage(0.2, 0.3) / 2));
}

TEST_CASE("oversampling epsilon matches the bisection oracle") {
  CHECK(epsilon_oversampling(0.3) == doctest::Approx(0.2834).epsilon(1e-3));
  for (double delta = 0.05; delta < 0.96; delta += 0.05) {
    double closed = epsilon_oversampling(delta);
    double bisect = oracles::epsilon_oversampling_bisect(delta);
    CHECK(closed == doctest::Approx(bisect).epsilon(1e-6));
    CHECK(oracles::oversampling_advantage(closed) ==
          doctest::Approx(delta).epsilon(1e-9));
  }
  CHECK_THROWS_AS(epsilon_oversampling(0.0), std::domain_error);
  CHECK_THROWS_AS(epsilon_oversampling(1.0), std::domain_error);
}

TEST_CASE("group statistics of the reference log") {
  AnnotatedLog log = annotated_reference();
  auto groups = compute_group_stats(log, Precisions{});

  // One start group plus one group per automaton edge that carries a
  // non-start event (the two root edges carry only starts).
  CHECK(groups.size() == 5);
  CHECK(groups[0].is_start);
  CHECK(groups[0].norm_values.size() == 6);
  CHECK(groups[0].min_value == 0);
  CHECK(groups[0].max_value == doctest::Approx(283200.0));
  CHECK(groups[0].precision == doctest::Approx(86400.0 / 283200.0));
  CHECK(groups[0].norm_values.front() == doctest::Approx(0.0));
  CHECK(groups[0].norm_values.back() == doctest::Approx(1.0));

  // Every event points at a group that contains its normalized time.
  for (const auto& trace : log.traces)
    for (const auto& event : trace.events) {
      REQUIRE(event.group >= 0);
      REQUIRE(event.group < static_cast<int>(groups.size()));
      CHECK(event.is_start == groups[event.group].is_start);
      if (!groups[event.group].degenerate()) {
        CHECK(event.norm_time >= -1e-12);
        CHECK(event.norm_time <= 1 + 1e-12);
      } else {
        CHECK(event.norm_time == 1.0);
      }
    }
}

TEST_CASE("empirical priors of the reference log") {
  AnnotatedLog log = annotated_reference();
  auto groups = compute_group_stats(log, Precisions{});
  compute_priors(log, groups, 0.3);

  auto expected = fixtures::estimated_priors();
  REQUIRE(log.traces.size() == expected.size());
  for (std::size_t t = 0; t < expected.size(); ++t) {
    REQUIRE(log.traces[t].events.size() == expected[t].size());
    for (std::size_t i = 0; i < expected[t].size(); ++i)
      CHECK(log.traces[t].events[i].prior ==
            doctest::Approx(expected[t][i]).epsilon(0.002));
  }
}

TEST_CASE("empirical prior equals the window-count oracle") {
  RngStream rng(31);
  for (int round = 0; round < 100; ++round) {
    GroupStats group;
    std::size_t n = 2 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i)
      group.norm_values.push_back(rng.uniform01());
    std::sort(group.norm_values.begin(), group.norm_values.end());
    group.range = 1000.0;
    group.precision = rng.uniform01() * 0.5;
    double value = group.norm_values[rng.below(n)];
    CHECK(empirical_prior(group, value, 0.3) ==
          doctest::Approx(oracles::prior_count_in_window(
              group.norm_values, value, group.precision)));
  }
}

TEST_CASE("degenerate groups fall back to the worst case") {
  GroupStats group;
  group.range = 0.0;
  group.norm_values = {1.0, 1.0, 1.0};
  CHECK(empirical_prior(group, 1.0, 0.3) == doctest::Approx(0.35));
  CHECK(empirical_prior(group, 1.0, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("filtering removes the flagged case and re-estimates") {
  AnnotatedLog log = annotated_reference();
  compute_group_stats(log, Precisions{});
  FilterResult result =
      filter_cases(log, fixtures::reference_priors(), 0.3, Precisions{});

  CHECK(result.removed_case_ids == std::vector<std::string>{"1"});
  REQUIRE(result.log.traces.size() == 5);
  CHECK(result.log.traces[0].case_id == "2");

  auto expected = fixtures::filtered_priors();
  for (std::size_t t = 0; t < expected.size(); ++t) {
    REQUIRE(result.log.traces[t].events.size() == expected[t].size());
    for (std::size_t i = 0; i < expected[t].size(); ++i)
      CHECK(result.log.traces[t].events[i].prior ==
            doctest::Approx(expected[t][i]).epsilon(0.02));
  }

  // Fixed point: no surviving event violates the bound.
  for (const auto& trace : result.log.traces)
    for (const auto& event : trace.events) CHECK(event.prior + 0.3 < 1);
}

TEST_CASE("filtering everything is an error") {
  AnnotatedLog log = annotated_reference();
  compute_group_stats(log, Precisions{});
  std::vector<std::vector<double>> priors;
  for (const auto& trace : log.traces)
    priors.emplace_back(trace.events.size(), 0.9);
  CHECK_THROWS_AS(filter_cases(log, priors, 0.3, Precisions{}),
                  UnreleasableError);
}

TEST_CASE("filtering validates the prior matrix shape") {
  AnnotatedLog log = annotated_reference();
  compute_group_stats(log, Precisions{});
  std::vector<std::vector<double>> priors(3);
  CHECK_THROWS_AS(filter_cases(log, priors, 0.3, Precisions{}), ValidationError);
}

TEST_CASE("epsilon plan on the filtered reference log") {
  AnnotatedLog log = annotated_reference();
  compute_group_stats(log, Precisions{});
  FilterResult filtered =
      filter_cases(log, fixtures::reference_priors(), 0.3, Precisions{});
  EpsilonPlan plan = build_epsilon_plan(filtered.log, filtered.groups, 0.3,
                                        Mode::filter_sample, Precisions{}, false);

  CHECK(plan.epsilon_d == doctest::Approx(1.2380).epsilon(1e-3));
  auto expected = fixtures::filtered_epsilons();
  for (std::size_t t = 0; t < expected.size(); ++t)
    for (std::size_t i = 0; i < expected[t].size(); ++i)
      CHECK(filtered.log.traces[t].events[i].epsilon_t ==
            doctest::Approx(expected[t][i]).epsilon(0.01));
}

TEST_CASE("trace-length scaling divides every epsilon") {
  AnnotatedLog base = annotated_reference();
  auto groups = compute_group_stats(base, Precisions{});
  compute_priors(base, groups, 0.3);
  AnnotatedLog scaled = base;
  build_epsilon_plan(base, groups, 0.3, Mode::sample, Precisions{}, false);
  build_epsilon_plan(scaled, groups, 0.3, Mode::sample, Precisions{}, true);
  for (std::size_t t = 0; t < base.traces.size(); ++t)
    for (std::size_t i = 0; i < base.traces[t].events.size(); ++i) {
      double full = base.traces[t].events[i].epsilon_t;
      double part = scaled.traces[t].events[i].epsilon_t;
      if (std::isinf(full))
        CHECK(std::isinf(part));
      else
        CHECK(part == doctest::Approx(full / 4));  // longest case has 4 events
    }
}

TEST_CASE("unbounded events get infinite epsilon in non-filtering modes") {
  // Two cases whose starts sit 1 second apart: the start window covers the
  // whole group, so the prior is 1 and no finite epsilon can bound it.
  EventLog log;
  log.traces = {{"1", {{"a", fixtures::ts("2020-08-08 10:00")}}},
                {"2", {{"a", fixtures::ts("2020-08-08 10:00")}}}};
  log.traces[1].events[0].timestamp += 1;
  AnnotatedLog annotated =
      annotate_log(log, build_minimal_dafsa(distinct_variants(log)));
  auto groups = compute_group_stats(annotated, Precisions{});
  compute_priors(annotated, groups, 0.3);
  EpsilonPlan plan = build_epsilon_plan(annotated, groups, 0.3, Mode::sample,
                                        Precisions{}, false);
  CHECK(plan.epsilon_d > 0);
  for (const auto& trace : annotated.traces)
    for (const auto& event : trace.events) {
      CHECK(event.prior == doctest::Approx(1.0));
      CHECK(std::isinf(event.epsilon_t));
    }
}

TEST_CASE("mode names round-trip") {
  for (Mode mode : {Mode::sample, Mode::filter_sample, Mode::oversample})
    CHECK(mode_from_name(std::string(mode_name(mode))) == mode);
  CHECK(mode_from_name("filter-sample") == Mode::filter_sample);
  CHECK_THROWS_AS(mode_from_name("bogus"), ConfigError);
}
