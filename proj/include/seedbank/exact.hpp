#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seedbank/model.hpp"
#include "seedbank/numerics.hpp"

namespace seedbank {

// Probability mass function on a contiguous integer support
// [first, first + size - 1].
struct ExactPmf {
  long first = 0;
  std::vector<double> probabilities;

  long last() const { return first + long(probabilities.size()) - 1; }
  double at(long value) const {
    if (value < first || value > last()) return 0.0;
    return probabilities[std::size_t(value - first)];
  }
  double total() const {
    KahanAccumulator acc;
    for (double p : probabilities) acc.add(p);
    return acc.value();
  }
  // P(X <= value)
  double cdf(long value) const {
    KahanAccumulator acc;
    for (long v = first; v <= std::min(value, last()); ++v)
      acc.add(probabilities[std::size_t(v - first)]);
    return value >= first ? acc.value() : 0.0;
  }
};

// Exact law of the plant count at the first deactivation, starting from
// (n, 0):
//   P(N(gamma) = m) = 2c1/(m+2c1) * prod_{i=m+1}^{n-1} i/(i+2c1),  1 <= m <= n-1
//   P(N(gamma) = 0) = prod_{i=1}^{n-1} i/(i+2c1)
// The m = 0 term is the no-deactivation path: once a single plant remains
// it deactivates with certainty.  Products are accumulated in log space.
inline ExactPmf pmf_n_at_gamma(int n, double c1) {
  if (n < 2) throw std::invalid_argument("pmf_n_at_gamma requires n >= 2");
  if (!(std::isfinite(c1) && c1 > 0.0)) throw std::invalid_argument("c1 must be positive");
  const double two_c1 = 2.0 * c1;
  ExactPmf pmf;
  pmf.first = 0;
  pmf.probabilities.assign(std::size_t(n), 0.0);
  double log_survival = 0.0;  // log prod_{i=m+1}^{n-1} i/(i+2c1)
  for (int m = n - 1; m >= 1; --m) {
    pmf.probabilities[std::size_t(m)] = std::exp(std::log(two_c1 / (m + two_c1)) + log_survival);
    log_survival += std::log(m / (m + two_c1));
  }
  pmf.probabilities[0] = std::exp(log_survival);
  return pmf;
}

enum class Functional { PlantTime, SeedTime, ElapsedTime };

inline const char* to_string(Functional f) {
  switch (f) {
    case Functional::PlantTime: return "plant-time";
    case Functional::SeedTime: return "seed-time";
    case Functional::ElapsedTime: return "elapsed-time";
  }
  return "unknown";
}

// Expected accumulated functional until absorption at (1,0), for every state
// (i, j) with 1 <= i + j <= n.  Because coalescence decreases the total
// block count while flips preserve it, the first-step equations split into
// one tridiagonal system per level k = i + j, solved for k = 1, ..., n.
class ExpectationTable {
 public:
  ExpectationTable(int n, const ModelParams& params, Functional functional)
      : n_(n), functional_(functional) {
    validate(params);
    if (n < 1) throw std::invalid_argument("expectation table requires n >= 1");
    levels_.resize(std::size_t(n));
    solve(params);
  }

  int sample_size() const { return n_; }
  Functional functional() const { return functional_; }

  // Expected functional from state (i, j); (1, 0) is 0 by definition.
  double value(int plants, int seeds) const {
    const int k = plants + seeds;
    if (plants < 0 || seeds < 0 || k < 1 || k > n_)
      throw std::out_of_range("state outside the table");
    return levels_[std::size_t(k - 1)][std::size_t(plants)];
  }
  double value(BlockState s) const { return value(s.plants, s.seeds); }

 private:
  double reward(int plants, int seeds) const {
    switch (functional_) {
      case Functional::PlantTime: return double(plants);
      case Functional::SeedTime: return double(seeds);
      case Functional::ElapsedTime: return 1.0;
    }
    return 0.0;
  }

  void solve(const ModelParams& params) {
    const double c1 = params.c1, c2 = params.c2;

    // level 1: (1,0) absorbs; (0,1) activates into it after Exp(c2)
    levels_[0] = {reward(0, 1) / c2, 0.0};

    std::vector<double> diag, upper, rhs;
    for (int k = 2; k <= n_; ++k) {
      auto& h = levels_[std::size_t(k - 1)];
      const auto& below = levels_[std::size_t(k - 2)];
      h.assign(std::size_t(k + 1), 0.0);
      diag.assign(std::size_t(k + 1), 0.0);
      upper.assign(std::size_t(k + 1), 0.0);
      rhs.assign(std::size_t(k + 1), 0.0);

      // row i: (C(i,2)+c1 i+c2 j) h_i - c1 i h_{i-1} - c2 j h_{i+1}
      //        = r(i,j) + C(i,2) * below[i-1],   j = k - i
      for (int i = 0; i <= k; ++i) {
        const double coal = pair_count(i);
        const double lower = c1 * i;
        const double up = c2 * double(k - i);
        diag[std::size_t(i)] = coal + lower + up;
        upper[std::size_t(i)] = up;
        rhs[std::size_t(i)] = reward(i, k - i) + (i >= 2 ? coal * below[std::size_t(i - 1)] : 0.0);
        if (i > 0) {
          // forward elimination against the already-reduced row i-1
          const double m = lower / diag[std::size_t(i - 1)];
          diag[std::size_t(i)] -= m * upper[std::size_t(i - 1)];
          rhs[std::size_t(i)] += m * rhs[std::size_t(i - 1)];
        }
        if (!(diag[std::size_t(i)] > 0.0) || !std::isfinite(diag[std::size_t(i)]))
          throw std::runtime_error("tridiagonal elimination lost diagonal dominance");
      }
      h[std::size_t(k)] = rhs[std::size_t(k)] / diag[std::size_t(k)];
      for (int i = k - 1; i >= 0; --i)
        h[std::size_t(i)] =
            (rhs[std::size_t(i)] + upper[std::size_t(i)] * h[std::size_t(i + 1)]) /
            diag[std::size_t(i)];
    }
  }

  int n_;
  Functional functional_;
  std::vector<std::vector<double>> levels_;  // levels_[k-1][i], i = 0..k
};

inline ExpectationTable expectations(int n, const ModelParams& params, Functional functional) {
  return ExpectationTable(n, params, functional);
}

// |c1 E[A_n] - c2 E[I_n]| / (c1 E[A_n]) from precomputed tables.
inline double balance_residual(int n, const ModelParams& params,
                               const ExpectationTable& plant_time,
                               const ExpectationTable& seed_time) {
  if (n < 2) throw std::invalid_argument("balance_residual requires n >= 2");
  const double lhs = params.c1 * plant_time.value(n, 0);
  const double rhs = params.c2 * seed_time.value(n, 0);
  return std::abs(lhs - rhs) / lhs;
}

inline double balance_residual(int n, const ModelParams& params) {
  const ExpectationTable plant_time(n, params, Functional::PlantTime);
  const ExpectationTable seed_time(n, params, Functional::SeedTime);
  return balance_residual(n, params, plant_time, seed_time);
}

// Moments of the limit of n*gamma_n; absence encodes divergence.
struct GammaMoments {
  std::optional<double> mean;
  std::optional<double> variance;
};

inline GammaMoments gamma_law_moments(double c1) {
  if (!(std::isfinite(c1) && c1 > 0.0)) throw std::invalid_argument("c1 must be positive");
  GammaMoments moments;
  if (c1 > 0.5) moments.mean = 2.0 / (2.0 * c1 - 1.0);
  if (c1 > 1.0) moments.variance = 4.0 * c1 / ((c1 - 1.0) * (2.0 * c1 - 1.0) * (2.0 * c1 - 1.0));
  return moments;
}

}  // namespace seedbank
