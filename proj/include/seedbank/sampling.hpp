#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "seedbank/exact.hpp"
#include "seedbank/model.hpp"
#include "seedbank/numerics.hpp"
#include "seedbank/rng.hpp"

namespace seedbank {

// Block-size configuration at the first activation: old_counts[i-1] is the
// number of active blocks of size i (lineages that never deactivated),
// recent_counts[i-1] the number of dormant blocks of size i.
struct Configuration {
  std::vector<int> old_counts;
  std::vector<int> recent_counts;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;

  int total_old_blocks() const { return std::accumulate(old_counts.begin(), old_counts.end(), 0); }
  long weighted_size() const {
    long z = 0;
    for (std::size_t i = 0; i < old_counts.size(); ++i) z += long(i + 1) * old_counts[i];
    for (std::size_t i = 0; i < recent_counts.size(); ++i) z += long(i + 1) * recent_counts[i];
    return z;
  }
  long old_weighted_size() const {
    long z = 0;
    for (std::size_t i = 0; i < old_counts.size(); ++i) z += long(i + 1) * old_counts[i];
    return z;
  }
};

// Membership in A(k,n): sum of old counts k, total weighted size n.
inline bool in_A(const Configuration& cfg, int k, int n) {
  return int(cfg.old_counts.size()) == n && int(cfg.recent_counts.size()) == n &&
         cfg.total_old_blocks() == k && cfg.weighted_size() == n;
}

// Membership of an old-count vector in Abar(k,n): k blocks, weight <= n.
inline bool in_Abar(const std::vector<int>& old_counts, int k, int n) {
  if (int(old_counts.size()) != n) return false;
  long blocks = 0, weight = 0;
  for (std::size_t i = 0; i < old_counts.size(); ++i) {
    if (old_counts[i] < 0) return false;
    blocks += old_counts[i];
    weight += long(i + 1) * old_counts[i];
  }
  return blocks == k && weight <= n;
}

namespace detail {

inline void check_enumeration_size(int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  if (n > 14) throw std::invalid_argument("enumeration is limited to n <= 14");
}

// Multiplicity vectors with exactly `parts` parts of size <= max_size and
// total weight `weight`.
template <class Emit>
void enum_exact_parts(int weight, int parts, int max_size, std::vector<int>& mult, Emit&& emit) {
  if (parts == 0) {
    if (weight == 0) emit(mult);
    return;
  }
  if (max_size < 1 || weight < parts || weight > parts * max_size) return;
  const int max_count = std::min(parts, weight / max_size);
  for (int count = 0; count <= max_count; ++count) {
    mult[std::size_t(max_size - 1)] = count;
    enum_exact_parts(weight - count * max_size, parts - count, max_size - 1, mult, emit);
  }
  mult[std::size_t(max_size - 1)] = 0;
}

// Multiplicity vectors of arbitrary partitions of `weight` into parts of
// size <= max_size.
template <class Emit>
void enum_partitions(int weight, int max_size, std::vector<int>& mult, Emit&& emit) {
  if (weight == 0) {
    emit(mult);
    return;
  }
  if (max_size < 1) return;
  for (int count = 0; count <= weight / max_size; ++count) {
    mult[std::size_t(max_size - 1)] = count;
    enum_partitions(weight - count * max_size, max_size - 1, mult, emit);
  }
  mult[std::size_t(max_size - 1)] = 0;
}

}  // namespace detail

// Exhaustive, duplicate-free enumeration of Abar(k,n): old-count vectors
// with k blocks of total size at most n.
inline std::vector<std::vector<int>> enumerate_Abar(int k, int n) {
  detail::check_enumeration_size(k, n);
  std::vector<std::vector<int>> out;
  std::vector<int> mult(std::size_t(n), 0);
  for (int z = k; z <= n; ++z)
    detail::enum_exact_parts(z, k, n, mult, [&](const std::vector<int>& a) { out.push_back(a); });
  return out;
}

// Exhaustive, duplicate-free enumeration of A(k,n).
inline std::vector<Configuration> enumerate_A(int k, int n) {
  detail::check_enumeration_size(k, n);
  std::vector<Configuration> out;
  std::vector<int> a(std::size_t(n), 0), b(std::size_t(n), 0);
  for (int z = k; z <= n; ++z) {
    detail::enum_exact_parts(z, k, n, a, [&](const std::vector<int>& old_counts) {
      detail::enum_partitions(n - z, n, b, [&](const std::vector<int>& recent_counts) {
        out.push_back({old_counts, recent_counts});
      });
    });
  }
  return out;
}

// Conditional law of the spectrum at the first activation given k active
// blocks:
//   P(cfg) = (n-k)! k! / (k+2c1)_(n-k)
//            * prod_i 1/a_i!  * prod_j (1/b_j!) (2c1/j)^{b_j}
// evaluated in log space.
inline double spectrum_probability(const Configuration& cfg, int k, int n, double c1) {
  if (!in_A(cfg, k, n)) throw std::invalid_argument("configuration outside A(k,n)");
  const double two_c1 = 2.0 * c1;
  double log_p = log_factorial(n - k) + log_factorial(k) -
                 log_ascending_factorial(double(k) + two_c1, n - k);
  for (int count : cfg.old_counts) log_p -= log_factorial(count);
  for (std::size_t j = 0; j < cfg.recent_counts.size(); ++j) {
    const int count = cfg.recent_counts[j];
    log_p -= log_factorial(count);
    if (count > 0) log_p += count * std::log(two_c1 / double(j + 1));
  }
  return std::exp(log_p);
}

// Marginal law of the old-block spectrum:
//   P(O = a) = k!/(a_1! ... a_n!) * C(2c1+n-z-1, n-z) / C(2c1+n-1, n-k)
// with z the weighted size of a; generalized binomials via ascending
// factorials.
inline double marginal_old_probability(const std::vector<int>& old_counts, int k, int n,
                                       double c1) {
  if (!in_Abar(old_counts, k, n)) throw std::invalid_argument("vector outside Abar(k,n)");
  const double two_c1 = 2.0 * c1;
  long z = 0;
  double log_p = log_factorial(k);
  for (std::size_t i = 0; i < old_counts.size(); ++i) {
    log_p -= log_factorial(old_counts[i]);
    z += long(i + 1) * old_counts[i];
  }
  log_p += log_generalized_binomial(two_c1 + double(n - z) - 1.0, n - z);
  log_p -= log_generalized_binomial(two_c1 + double(n) - 1.0, n - k);
  return std::exp(log_p);
}

// Law of Z = sum_i i * O_i, the number of leaves that have not visited the
// seed bank:
//   P(Z = z) = C(2c1+n-z-1, n-z) C(z-1, z-k) / C(2c1+n-1, n-k),  z = k..n.
inline ExactPmf pmf_Z(int k, int n, double c1) {
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  const double two_c1 = 2.0 * c1;
  ExactPmf pmf;
  pmf.first = k;
  pmf.probabilities.resize(std::size_t(n - k + 1));
  const double log_denominator = log_generalized_binomial(two_c1 + double(n) - 1.0, n - k);
  for (int z = k; z <= n; ++z)
    pmf.probabilities[std::size_t(z - k)] =
        std::exp(log_generalized_binomial(two_c1 + double(n - z) - 1.0, n - z) +
                 log_binomial(z - 1, z - k) - log_denominator);
  return pmf;
}

// E[O_j | k] = k C(2c1+n-j-1, n-j-k+1) / C(2c1+n-1, n-k); 0 out of range.
inline double expected_old(int j, int k, int n, double c1) {
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  if (j < 1 || j > n - k + 1) return 0.0;
  const double two_c1 = 2.0 * c1;
  return double(k) * std::exp(log_generalized_binomial(two_c1 + double(n - j) - 1.0, n - j - k + 1) -
                              log_generalized_binomial(two_c1 + double(n) - 1.0, n - k));
}

// E[R_j | k] = (2c1/j) C(2c1+n-j-1, n-j-k) / C(2c1+n-1, n-k); 0 out of range.
inline double expected_recent(int j, int k, int n, double c1) {
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  if (j < 1 || j > n - k) return 0.0;
  const double two_c1 = 2.0 * c1;
  return (two_c1 / double(j)) *
         std::exp(log_generalized_binomial(two_c1 + double(n - j) - 1.0, n - j - k) -
                  log_generalized_binomial(two_c1 + double(n) - 1.0, n - k));
}

// Forward sampler for the conditional spectrum: a Hoppe urn started from k
// old tables of one customer each and a black ball of weight 2c1.  Each of
// the n-k steps opens a new recent table with probability proportional to
// 2c1, otherwise joins an existing table proportionally to its size.
inline Configuration hoppe_urn_sample(int k, int n, double c1, RngSpec rng_spec) {
  if (k < 1 || k > n) throw std::invalid_argument("k must lie in [1, n]");
  RngStream rng(rng_spec);
  const double two_c1 = 2.0 * c1;
  std::vector<int> old_sizes(std::size_t(k), 1), recent_sizes;
  for (int customers = k; customers < n; ++customers) {
    double pick = rng.next_unit_open() * (double(customers) + two_c1) - two_c1;
    if (pick < 0.0) {
      recent_sizes.push_back(1);
      continue;
    }
    bool joined = false;
    for (auto sizes : {&old_sizes, &recent_sizes}) {
      for (int& size : *sizes) {
        if (pick < double(size)) {
          ++size;
          joined = true;
          break;
        }
        pick -= double(size);
      }
      if (joined) break;
    }
    if (!joined) ++old_sizes.front();  // unreachable: the walk subtracts exact integers
  }
  Configuration cfg;
  cfg.old_counts.assign(std::size_t(n), 0);
  cfg.recent_counts.assign(std::size_t(n), 0);
  for (int size : old_sizes) ++cfg.old_counts[std::size_t(size - 1)];
  for (int size : recent_sizes) ++cfg.recent_counts[std::size_t(size - 1)];
  return cfg;
}

}  // namespace seedbank
