#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <vector>

#include "seedbank/numerics.hpp"
#include "seedbank/sampling.hpp"
#include "support/stats.hpp"

using namespace seedbank;

namespace {

std::vector<int> counts(std::initializer_list<int> values) { return std::vector<int>(values); }

// Expectation of O_j (or R_j) by direct enumeration over A(k,n).
double enumerated_expectation(int j, int k, int n, double c1, bool old_blocks) {
  double e = 0.0;
  for (const auto& cfg : enumerate_A(k, n)) {
    const int count = old_blocks ? cfg.old_counts[j - 1] : cfg.recent_counts[j - 1];
    e += count * spectrum_probability(cfg, k, n, c1);
  }
  return e;
}

}  // namespace

TEST_CASE("enumeration of A(k,n) at the corners") {
  const auto all_old = enumerate_A(4, 4);
  REQUIRE(all_old.size() == 1);
  CHECK(all_old[0].old_counts == counts({4, 0, 0, 0}));
  CHECK(all_old[0].recent_counts == counts({0, 0, 0, 0}));

  const auto two_leaf = enumerate_A(1, 2);
  REQUIRE(two_leaf.size() == 2);
  for (const auto& cfg : two_leaf) {
    const bool merged =
        cfg.old_counts == counts({0, 1}) && cfg.recent_counts == counts({0, 0});
    const bool split =
        cfg.old_counts == counts({1, 0}) && cfg.recent_counts == counts({1, 0});
    CHECK((merged || split));
  }

  const auto three_leaf = enumerate_A(2, 3);
  REQUIRE(three_leaf.size() == 2);
  for (const auto& cfg : three_leaf) {
    const bool pair_old =
        cfg.old_counts == counts({1, 1, 0}) && cfg.recent_counts == counts({0, 0, 0});
    const bool singleton_recent =
        cfg.old_counts == counts({2, 0, 0}) && cfg.recent_counts == counts({1, 0, 0});
    CHECK((pair_old || singleton_recent));
  }
}

TEST_CASE("enumeration guards its size") {
  CHECK_THROWS_AS(enumerate_A(1, 15), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_A(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_Abar(5, 4), std::invalid_argument);
}

TEST_CASE("spectrum probabilities for two leaves") {
  Configuration merged{counts({0, 1}), counts({0, 0})};
  Configuration split{counts({1, 0}), counts({1, 0})};
  CHECK(spectrum_probability(merged, 1, 2, 1.0) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(spectrum_probability(split, 1, 2, 1.0) == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(spectrum_probability(merged, 2, 2, 1.0), std::invalid_argument);
}

TEST_CASE("spectrum law is normalized over A(k,n)") {
  for (const double c1 : {0.5, 1.0, 2.0}) {
    for (int n = 2; n <= 8; ++n) {
      for (int k = 1; k <= n; ++k) {
        KahanAccumulator total;
        for (const auto& cfg : enumerate_A(k, n))
          total.add(spectrum_probability(cfg, k, n, c1));
        CHECK(std::abs(total.value() - 1.0) <= 1e-10);
      }
    }
  }
}

TEST_CASE("marginal law of the old blocks for two leaves") {
  CHECK(marginal_old_probability(counts({0, 1}), 1, 2, 1.0) ==
        Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(marginal_old_probability(counts({1, 0}), 1, 2, 1.0) ==
        Catch::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_THROWS_AS(marginal_old_probability(counts({0, 0, 1}), 1, 2, 1.0), std::invalid_argument);
  // weight above n violates the Abar constraint
  CHECK_THROWS_AS(marginal_old_probability(counts({1, 0, 1}), 2, 3, 1.0), std::invalid_argument);
}

TEST_CASE("marginal equals the spectrum law summed over recent blocks") {
  for (const double c1 : {0.5, 1.0, 2.0}) {
    for (int n = 2; n <= 8; ++n) {
      for (int k = 1; k <= n; ++k) {
        std::map<std::vector<int>, double> summed;
        for (const auto& cfg : enumerate_A(k, n))
          summed[cfg.old_counts] += spectrum_probability(cfg, k, n, c1);
        for (const auto& a : enumerate_Abar(k, n)) {
          const double direct = marginal_old_probability(a, k, n, c1);
          const auto it = summed.find(a);
          const double by_sum = it == summed.end() ? 0.0 : it->second;
          CHECK(std::abs(direct - by_sum) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("law of Z for two leaves and the all-old corner") {
  const auto pmf = pmf_Z(1, 2, 1.0);
  CHECK(pmf.at(1) == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(pmf.at(2) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));

  const auto degenerate = pmf_Z(5, 5, 0.7);
  CHECK(degenerate.at(5) == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("law of Z is the pushforward of the marginal law") {
  for (const double c1 : {0.5, 1.0, 2.0}) {
    for (int n = 2; n <= 8; ++n) {
      for (int k = 1; k <= n; ++k) {
        std::vector<double> pushforward(std::size_t(n + 1), 0.0);
        for (const auto& a : enumerate_Abar(k, n)) {
          long z = 0;
          for (std::size_t i = 0; i < a.size(); ++i) z += long(i + 1) * a[i];
          pushforward[std::size_t(z)] += marginal_old_probability(a, k, n, c1);
        }
        const auto pmf = pmf_Z(k, n, c1);
        for (int z = k; z <= n; ++z)
          CHECK(std::abs(pmf.at(z) - pushforward[std::size_t(z)]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("conditional expectations for two leaves") {
  CHECK(expected_old(1, 1, 2, 1.0) == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(expected_old(2, 1, 2, 1.0) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(expected_recent(1, 1, 2, 1.0) == Catch::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(expected_old(3, 1, 2, 1.0) == 0.0);
  CHECK(expected_recent(2, 1, 2, 1.0) == 0.0);
}

TEST_CASE("conditional expectations match enumeration") {
  for (const double c1 : {0.5, 1.0, 2.0}) {
    for (int n = 2; n <= 8; ++n) {
      for (int k = 1; k <= n; ++k) {
        double old_total = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double eo = expected_old(j, k, n, c1);
          const double er = expected_recent(j, k, n, c1);
          CHECK(std::abs(eo - enumerated_expectation(j, k, n, c1, true)) <= 1e-10);
          CHECK(std::abs(er - enumerated_expectation(j, k, n, c1, false)) <= 1e-10);
          old_total += eo;
        }
        CHECK(std::abs(old_total - double(k)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("generalized binomial agrees with the direct product in log space") {
  for (const double c1 : {0.5, 1.3, 2.0}) {
    const double x = 2.0 * c1;
    double log_direct = 0.0;
    for (long t = 1; t <= 1000; ++t) {
      log_direct += std::log((x + double(t - 1)) / double(t));
      const double log_lib = log_generalized_binomial(x + double(t) - 1.0, t);
      CHECK(std::abs(log_lib - log_direct) <= 1e-10 * std::max(1.0, std::abs(log_direct)));
    }
  }
  CHECK(log_ascending_factorial(3.7, 0) == 0.0);
}

TEST_CASE("urn with zero steps returns the initial tables") {
  const auto cfg = hoppe_urn_sample(6, 6, 1.0, {401, 0});
  CHECK(cfg.old_counts == counts({6, 0, 0, 0, 0, 0}));
  CHECK(cfg.recent_counts == counts({0, 0, 0, 0, 0, 0}));
}

TEST_CASE("single urn step uses the black-ball weight") {
  const int reps = 100000;
  int opened = 0;
  for (int r = 0; r < reps; ++r) {
    const auto cfg = hoppe_urn_sample(1, 2, 1.0, {409, std::uint64_t(r)});
    opened += cfg.recent_counts[0] == 1;
  }
  const double p = 2.0 / 3.0;
  const double se = std::sqrt(p * (1.0 - p) / reps);
  CHECK(std::abs(double(opened) / reps - p) < 3.0 * se);
}

TEST_CASE("urn frequencies match the spectrum law") {
  const int n = 8, k = 3, reps = 100000;
  const double c1 = 1.0;
  std::map<Configuration, long> draws;
  for (int r = 0; r < reps; ++r) ++draws[hoppe_urn_sample(k, n, c1, {419, std::uint64_t(r)})];
  std::map<Configuration, double> law;
  for (const auto& cfg : enumerate_A(k, n)) law[cfg] = spectrum_probability(cfg, k, n, c1);
  CHECK(testsupport::tv_distance(draws, law, reps) <= 0.02);
}
