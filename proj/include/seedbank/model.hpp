#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace seedbank {

// Free parameters of the seed bank coalescent: per-lineage deactivation and
// activation intensities, plus mutation rates per unit of active and
// inactive branch length.
struct ModelParams {
  double c1 = 1.0;
  double c2 = 1.0;
  double mu_active = 0.0;
  double mu_inactive = 0.0;
};

inline ModelParams validate(const ModelParams& params) {
  if (!(std::isfinite(params.c1) && params.c1 > 0.0))
    throw std::invalid_argument("c1 must be positive");
  if (!(std::isfinite(params.c2) && params.c2 > 0.0))
    throw std::invalid_argument("c2 must be positive");
  if (!(std::isfinite(params.mu_active) && params.mu_active >= 0.0))
    throw std::invalid_argument("mu_active must be non-negative");
  if (!(std::isfinite(params.mu_inactive) && params.mu_inactive >= 0.0))
    throw std::invalid_argument("mu_inactive must be non-negative");
  return params;
}

// Block-counting state: number of active (plant) and dormant (seed) blocks.
struct BlockState {
  int plants = 0;
  int seeds = 0;

  int total() const { return plants + seeds; }
  friend bool operator==(const BlockState&, const BlockState&) = default;
};

enum class EventKind { Coalescence, Deactivation, Activation };

inline const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Coalescence: return "coalescence";
    case EventKind::Deactivation: return "deactivation";
    case EventKind::Activation: return "activation";
  }
  return "unknown";
}

// Standard chain, or the bounded variant whose bank holds at most
// bank_capacity seeds; a deactivation into a full bank removes the lineage
// through the coalescence channel instead.
struct Variant {
  std::optional<int> bank_capacity;

  static Variant standard() { return {}; }
  static Variant bounded(int m) {
    if (m < 1) throw std::invalid_argument("bank capacity must be positive");
    return {m};
  }
  bool is_bounded() const { return bank_capacity.has_value(); }
};

// i*(i-1)/2 evaluated in integer arithmetic before conversion, exact in
// double for every block count a sample can produce.
inline double pair_count(std::int64_t i) { return double(i * (i - 1) / 2); }

struct RateSet {
  double coalescence = 0.0;
  double deactivation = 0.0;
  double activation = 0.0;

  double total() const { return coalescence + deactivation + activation; }
};

inline RateSet rate_set(BlockState state, const ModelParams& params,
                        Variant variant = Variant::standard()) {
  RateSet rates;
  rates.coalescence = pair_count(state.plants);
  rates.deactivation = params.c1 * state.plants;
  rates.activation = params.c2 * state.seeds;
  if (variant.is_bounded()) {
    if (state.seeds > *variant.bank_capacity)
      throw std::invalid_argument("state exceeds bank capacity");
    if (state.seeds == *variant.bank_capacity) {
      rates.coalescence += rates.deactivation;
      rates.deactivation = 0.0;
    }
  }
  return rates;
}

// Positive-rate transitions out of a state; zero-rate channels are omitted.
inline std::vector<std::pair<EventKind, double>> transition_rates(
    BlockState state, const ModelParams& params, Variant variant = Variant::standard()) {
  const RateSet rates = rate_set(state, params, variant);
  std::vector<std::pair<EventKind, double>> out;
  if (rates.coalescence > 0.0) out.emplace_back(EventKind::Coalescence, rates.coalescence);
  if (rates.deactivation > 0.0) out.emplace_back(EventKind::Deactivation, rates.deactivation);
  if (rates.activation > 0.0) out.emplace_back(EventKind::Activation, rates.activation);
  return out;
}

inline BlockState apply_event(BlockState state, EventKind kind) {
  switch (kind) {
    case EventKind::Coalescence: return {state.plants - 1, state.seeds};
    case EventKind::Deactivation: return {state.plants - 1, state.seeds + 1};
    case EventKind::Activation: return {state.plants + 1, state.seeds - 1};
  }
  throw std::logic_error("unreachable event kind");
}

}  // namespace seedbank
