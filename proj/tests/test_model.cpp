#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "seedbank/model.hpp"
#include "seedbank/rng.hpp"

using namespace seedbank;

TEST_CASE("validate accepts parameter sets satisfying the invariants") {
  CHECK_NOTHROW(validate({1.0, 1.0, 0.0, 0.0}));
  CHECK_NOTHROW(validate({0.5, 2.0, 1.0, 0.3}));
}

TEST_CASE("validate rejects boundary and non-finite parameters") {
  CHECK_THROWS_AS(validate({0.0, 1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1.0, 0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({-1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1.0, 1.0, -0.1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1.0, 1.0, 0.0, -0.1}), std::invalid_argument);
  CHECK_THROWS_AS(validate({std::numeric_limits<double>::quiet_NaN(), 1.0, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate({std::numeric_limits<double>::infinity(), 1.0, 0.0, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("transition rates of the standard chain") {
  const ModelParams params{1.0, 2.0, 0.0, 0.0};
  const auto rates = transition_rates({3, 2}, params);
  REQUIRE(rates.size() == 3);
  CHECK(rates[0] == std::pair{EventKind::Coalescence, 3.0});
  CHECK(rates[1] == std::pair{EventKind::Deactivation, 3.0});
  CHECK(rates[2] == std::pair{EventKind::Activation, 4.0});
}

TEST_CASE("state (1,0) still deactivates at rate c1") {
  const ModelParams params{0.7, 1.3, 0.0, 0.0};
  const auto rates = transition_rates({1, 0}, params);
  REQUIRE(rates.size() == 1);
  CHECK(rates[0] == std::pair{EventKind::Deactivation, 0.7});
}

TEST_CASE("bounded variant folds deactivation into coalescence when the bank is full") {
  const ModelParams params{1.0, 2.0, 0.0, 0.0};
  const auto rates = transition_rates({3, 2}, params, Variant::bounded(2));
  REQUIRE(rates.size() == 2);
  CHECK(rates[0] == std::pair{EventKind::Coalescence, 6.0});
  CHECK(rates[1] == std::pair{EventKind::Activation, 4.0});
}

TEST_CASE("rate properties over random states") {
  RngStream rng({20260810, 0});
  for (int trial = 0; trial < 2000; ++trial) {
    const int plants = int(rng.next_below(200));
    const int seeds = int(rng.next_below(200));
    if (plants + seeds == 0) continue;
    const ModelParams params{0.1 + 3.0 * rng.next_unit_open(),
                             0.1 + 3.0 * rng.next_unit_open(), 0.0, 0.0};
    const BlockState state{plants, seeds};

    const auto listed = transition_rates(state, params);
    double sum = 0.0;
    for (const auto& [kind, rate] : listed) {
      CHECK(rate > 0.0);
      sum += rate;
    }
    // total rate is exactly C(i,2) + c1 i + c2 j
    CHECK(sum == pair_count(plants) + params.c1 * plants + params.c2 * seeds);

    // bounded and standard chains agree strictly below the bank capacity
    const auto bounded = transition_rates(state, params, Variant::bounded(seeds + 1));
    CHECK(bounded == listed);
  }
}

TEST_CASE("event kinds move the state as documented") {
  CHECK(apply_event({3, 2}, EventKind::Coalescence) == BlockState{2, 2});
  CHECK(apply_event({3, 2}, EventKind::Deactivation) == BlockState{2, 3});
  CHECK(apply_event({3, 2}, EventKind::Activation) == BlockState{4, 1});
}

TEST_CASE("bounded variant rejects states above capacity") {
  const ModelParams params{1.0, 1.0, 0.0, 0.0};
  CHECK_THROWS_AS(rate_set({2, 3}, params, Variant::bounded(2)), std::invalid_argument);
  CHECK_THROWS_AS(Variant::bounded(0), std::invalid_argument);
}
