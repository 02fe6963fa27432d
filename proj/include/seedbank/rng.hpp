#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace seedbank {

// Replicate addressing for reproducible Monte Carlo: the pair
// (base_seed, replicate_index) fully determines one random stream, so
// replicates can run on any number of threads in any order.
struct RngSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t replicate_index = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace detail

// xoshiro256++ stream, state derived from (base_seed, replicate_index)
// through splitmix64.  Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(RngSpec spec) {
    std::uint64_t x = spec.base_seed;
    detail::splitmix64(x);
    x ^= 0xd1b54a32d192ed03ull * (spec.replicate_index + 1);
    for (auto& word : state_) word = detail::splitmix64(x);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  // Uniform on the open interval (0, 1); never returns an endpoint, so
  // -log(u) is finite and strictly positive.
  double next_unit_open() { return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double next_exponential(double rate) { return -std::log(next_unit_open()) / rate; }

  bool next_bernoulli(double p) { return next_unit_open() < p; }

  // Uniform integer in [0, n).
  std::uint32_t next_below(std::uint32_t n) {
    return std::uint32_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  long next_poisson(double mean) {
    if (mean <= 0.0) return 0;
    std::poisson_distribution<long> dist(mean);
    return dist(*this);
  }

 private:
  std::uint64_t state_[4];
};

}  // namespace seedbank
