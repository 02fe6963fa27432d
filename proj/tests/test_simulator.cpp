#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "seedbank/exact.hpp"
#include "seedbank/simulator.hpp"
#include "support/stats.hpp"

using namespace seedbank;

namespace {
const ModelParams kUnit{1.0, 1.0, 0.0, 0.0};
}

TEST_CASE("a single plant is already absorbed") {
  const auto traj = simulate_counts(1, 0, kUnit, Variant::standard(),
                                    StopCondition::absorption(), {11, 0});
  CHECK(traj.events.empty());
  CHECK(traj.terminal_reason == TerminalReason::Absorbed);
  CHECK(traj.final_time() == 0.0);
}

TEST_CASE("identical spec and inputs reproduce the trajectory") {
  const auto a = simulate_counts(40, 3, kUnit, Variant::standard(),
                                 StopCondition::absorption(), {99, 5});
  const auto b = simulate_counts(40, 3, kUnit, Variant::standard(),
                                 StopCondition::absorption(), {99, 5});
  REQUIRE(a.events.size() == b.events.size());
  for (std::size_t i = 0; i < a.events.size(); ++i) {
    CHECK(a.events[i].time == b.events[i].time);
    CHECK(a.events[i].kind == b.events[i].kind);
    CHECK(a.events[i].state_after == b.events[i].state_after);
  }
}

TEST_CASE("first deactivation from two plants") {
  // P(first event deactivates) = 2 c1 / (1 + 2 c1) = 2/3; otherwise the
  // trajectory passes through (1,0) and ends with the lone plant
  // deactivating.
  const int reps = 100000;
  int first_is_deactivation = 0;
  for (int r = 0; r < reps; ++r) {
    const auto traj = simulate_counts(2, 0, kUnit, Variant::standard(),
                                      StopCondition::first_deactivation(), {17, std::uint64_t(r)});
    REQUIRE(traj.terminal_reason == TerminalReason::StopConditionMet);
    REQUIRE(traj.events.back().kind == EventKind::Deactivation);
    if (traj.events.size() == 1) {
      ++first_is_deactivation;
      CHECK(traj.events[0].state_after == BlockState{1, 1});
    } else {
      REQUIRE(traj.events.size() == 2);
      CHECK(traj.events[0].kind == EventKind::Coalescence);
      CHECK(traj.events[0].state_after == BlockState{1, 0});
      CHECK(traj.events[1].state_after == BlockState{0, 1});
    }
  }
  const double p = 2.0 / 3.0;
  const double se = std::sqrt(p * (1.0 - p) / reps);
  CHECK(std::abs(double(first_is_deactivation) / reps - p) < 3.0 * se);
}

TEST_CASE("plants-reach stop ends at the first hit") {
  for (int r = 0; r < 200; ++r) {
    const auto traj = simulate_counts(5, 0, kUnit, Variant::standard(),
                                      StopCondition::plants_reach(3), {23, std::uint64_t(r)});
    REQUIRE(traj.terminal_reason == TerminalReason::StopConditionMet);
    REQUIRE(traj.final_state().plants == 3);
    for (std::size_t i = 0; i + 1 < traj.events.size(); ++i)
      CHECK(traj.events[i].state_after.plants != 3);
  }
  const auto already = simulate_counts(5, 0, kUnit, Variant::standard(),
                                       StopCondition::plants_reach(5), {23, 0});
  CHECK(already.events.empty());
  CHECK(already.terminal_reason == TerminalReason::StopConditionMet);
  CHECK_THROWS_AS(simulate_counts(5, 0, kUnit, Variant::standard(),
                                  StopCondition::plants_reach(6), {23, 0}),
                  std::invalid_argument);
}

TEST_CASE("trajectory invariants under the standard variant") {
  for (int r = 0; r < 300; ++r) {
    const auto traj = simulate_counts(25, 0, kUnit, Variant::standard(),
                                      StopCondition::absorption(), {31, std::uint64_t(r)});
    REQUIRE(traj.terminal_reason == TerminalReason::Absorbed);
    BlockState prev = traj.initial_state;
    double t_prev = 0.0;
    bool seen_deactivation = false;
    for (const auto& ev : traj.events) {
      CHECK(ev.time > t_prev);
      CHECK(ev.state_after == apply_event(prev, ev.kind));
      CHECK(ev.state_after.total() <= prev.total());
      if (ev.kind == EventKind::Coalescence) CHECK(ev.state_after.total() == prev.total() - 1);
      if (ev.kind == EventKind::Activation) CHECK(seen_deactivation);
      seen_deactivation |= ev.kind == EventKind::Deactivation;
      t_prev = ev.time;
      prev = ev.state_after;
    }
  }
}

TEST_CASE("bounded variant never exceeds the bank capacity") {
  const int m = 3;
  for (int r = 0; r < 200; ++r) {
    const auto traj = simulate_counts(20, m, ModelParams{2.0, 0.5, 0.0, 0.0}, Variant::bounded(m),
                                      StopCondition::absorption(), {37, std::uint64_t(r)});
    for (const auto& ev : traj.events) CHECK(ev.state_after.seeds <= m);
  }
  CHECK_THROWS_AS(simulate_counts(5, 4, kUnit, Variant::bounded(3),
                                  StopCondition::absorption(), {37, 0}),
                  std::invalid_argument);
}

TEST_CASE("first-event frequencies follow the transition rates") {
  const ModelParams params{0.8, 1.7, 0.0, 0.0};
  const BlockState start{5, 3};
  const RateSet rates = rate_set(start, params);
  const int reps = 100000;
  std::map<EventKind, long> counts;
  for (int r = 0; r < reps; ++r) {
    const auto traj = simulate_counts(start.plants, start.seeds, params, Variant::standard(),
                                      StopCondition::absorption(), {41, std::uint64_t(r)});
    ++counts[traj.events.at(0).kind];
  }
  const double total = rates.total();
  for (const auto& [kind, rate] : transition_rates(start, params)) {
    const double p = rate / total;
    const double se = std::sqrt(p * (1.0 - p) / reps);
    CHECK(std::abs(double(counts[kind]) / reps - p) < 3.0 * se);
  }
}

TEST_CASE("exhausting the event budget is an explicit terminal reason") {
  const auto traj = simulate_counts(100, 0, kUnit, Variant::standard(),
                                    StopCondition::absorption(), {43, 0}, 5);
  CHECK(traj.terminal_reason == TerminalReason::EventBudgetExceeded);
  CHECK(traj.events.size() == 5);
}

TEST_CASE("direct first-deactivation sampler: two-plant law") {
  const ModelParams params{0.5, 1.0, 0.0, 0.0};
  const int reps = 100000;
  int at_one = 0;
  for (int r = 0; r < reps; ++r) {
    const auto s = sample_first_deactivation(2, params, {47, std::uint64_t(r)});
    REQUIRE((s.n_at_gamma == 0 || s.n_at_gamma == 1));
    REQUIRE(s.gamma > 0.0);
    at_one += s.n_at_gamma == 1;
  }
  const double se = std::sqrt(0.25 / reps);
  CHECK(std::abs(double(at_one) / reps - 0.5) < 3.0 * se);
}

TEST_CASE("direct sampler: strong deactivation pins N(gamma) near n-1") {
  const ModelParams params{50.0, 1.0, 0.0, 0.0};
  const int reps = 20000;
  int at_top = 0;
  for (int r = 0; r < reps; ++r)
    at_top += sample_first_deactivation(5, params, {53, std::uint64_t(r)}).n_at_gamma == 4;
  const double p = 100.0 / 104.0;  // 2 c1 / (n - 1 + 2 c1)
  const double se = std::sqrt(p * (1.0 - p) / reps);
  CHECK(std::abs(double(at_top) / reps - p) < 3.0 * se);
}

TEST_CASE("direct sampler matches the exact pmf of N(gamma)") {
  // 3e5 draws keep the multinomial noise floor (~0.0065 here) clear of the
  // 0.01 total-variation budget
  const int n = 100;
  const ModelParams params{1.0, 1.0, 0.0, 0.0};
  const auto pmf = pmf_n_at_gamma(n, params.c1);
  const int reps = 300000;
  std::map<long, long> counts;
  for (int r = 0; r < reps; ++r)
    ++counts[sample_first_deactivation(n, params, {59, std::uint64_t(r)}).n_at_gamma];
  std::map<long, double> law;
  for (long m = 0; m < n; ++m) law[m] = pmf.at(m);
  CHECK(testsupport::tv_distance(counts, law, reps) <= 0.01);
}

TEST_CASE("direct sampler agrees in law with the event-driven chain") {
  const int n = 6, reps = 100000;
  const ModelParams params{0.7, 1.9, 0.0, 0.0};
  std::vector<double> gamma_direct, gamma_chain;
  std::map<long, long> direct_counts, chain_counts;
  for (int r = 0; r < reps; ++r) {
    const auto d = sample_first_deactivation(n, params, {61, std::uint64_t(r)});
    gamma_direct.push_back(d.gamma);
    ++direct_counts[d.n_at_gamma];

    const auto traj = simulate_counts(n, 0, params, Variant::standard(),
                                      StopCondition::first_deactivation(), {67, std::uint64_t(r)});
    gamma_chain.push_back(traj.final_time());
    ++chain_counts[traj.final_state().plants];
  }
  const double d = testsupport::two_sample_ks_statistic(gamma_direct, gamma_chain);
  CHECK(testsupport::two_sample_ks_p_value(d, gamma_direct.size(), gamma_chain.size()) > 0.01);

  double tv = 0.0;
  for (long m = 0; m < n; ++m)
    tv += std::abs(double(direct_counts[m]) - double(chain_counts[m])) / reps;
  CHECK(0.5 * tv <= 0.01);
}

TEST_CASE("mutation superposition edge cases") {
  const auto traj = simulate_counts(10, 0, kUnit, Variant::standard(),
                                    StopCondition::absorption(), {71, 0});
  const auto none = superimpose_mutations(traj, kUnit, {73, 0});
  CHECK(none.active == 0);
  CHECK(none.inactive == 0);

  const ModelParams active_only{1.0, 1.0, 2.0, 0.0};
  const auto counts = superimpose_mutations(traj, active_only, {73, 1});
  CHECK(counts.inactive == 0);

  const auto partial = simulate_counts(10, 0, kUnit, Variant::standard(),
                                       StopCondition::first_deactivation(), {71, 1});
  CHECK_THROWS_AS(superimpose_mutations(partial, kUnit, {73, 2}), std::invalid_argument);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(simulate_counts(0, 0, kUnit, Variant::standard(),
                                  StopCondition::absorption(), {1, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_first_deactivation(1, kUnit, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(StopCondition::time_horizon(0.0), std::invalid_argument);
}
