#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "seedbank/model.hpp"
#include "seedbank/numerics.hpp"
#include "seedbank/rng.hpp"

namespace seedbank {

struct StopCondition {
  enum class Kind { Absorption, FirstDeactivation, FirstActivation, PlantsReach, TimeHorizon };

  Kind kind = Kind::Absorption;
  int level = 0;
  double horizon = 0.0;

  static StopCondition absorption() { return {Kind::Absorption, 0, 0.0}; }
  static StopCondition first_deactivation() { return {Kind::FirstDeactivation, 0, 0.0}; }
  static StopCondition first_activation() { return {Kind::FirstActivation, 0, 0.0}; }
  static StopCondition plants_reach(int level) { return {Kind::PlantsReach, level, 0.0}; }
  static StopCondition time_horizon(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("time horizon must be positive");
    return {Kind::TimeHorizon, 0, t};
  }
};

enum class TerminalReason { Absorbed, StopConditionMet, EventBudgetExceeded };

inline const char* to_string(TerminalReason reason) {
  switch (reason) {
    case TerminalReason::Absorbed: return "absorbed";
    case TerminalReason::StopConditionMet: return "stop-condition-met";
    case TerminalReason::EventBudgetExceeded: return "event-budget-exceeded";
  }
  return "unknown";
}

struct TrajectoryEvent {
  double time;
  EventKind kind;
  BlockState state_after;
};

struct Trajectory {
  BlockState initial_state;
  std::vector<TrajectoryEvent> events;
  TerminalReason terminal_reason = TerminalReason::Absorbed;

  BlockState final_state() const {
    return events.empty() ? initial_state : events.back().state_after;
  }
  double final_time() const { return events.empty() ? 0.0 : events.back().time; }
};

inline bool is_absorbed(BlockState state) { return state.plants == 1 && state.seeds == 0; }

// Generous cap on the number of simulated events; absorption from n plants
// takes O(n) events with high probability, so exhausting the budget flags a
// pathological configuration rather than truncating a result.
inline std::uint64_t default_event_budget(int n0) {
  return 50ull * std::uint64_t(n0 > 0 ? n0 : 0) + 1'000'000ull;
}

namespace detail {

inline void check_initial_state(BlockState state, Variant variant) {
  if (state.plants < 0 || state.seeds < 0 || state.total() < 1)
    throw std::invalid_argument("initial state must hold at least one block");
  if (variant.is_bounded() && state.seeds > *variant.bank_capacity)
    throw std::invalid_argument("initial seeds exceed bank capacity");
}

inline bool stop_holds_initially(StopCondition stop, BlockState state) {
  switch (stop.kind) {
    case StopCondition::Kind::Absorption: return is_absorbed(state);
    case StopCondition::Kind::PlantsReach: return state.plants == stop.level;
    default: return false;
  }
}

}  // namespace detail

// Event-driven simulation of the block-counting chain: draw the holding
// time from Exponential(total rate), then the event with probability
// proportional to its rate.  The observer is invoked as
// obs(time, kind, state_after) once per event, in order.  State (1,0) keeps
// its deactivation rate, so runs that only stop at a deactivation or an
// activation continue past absorption.
template <class Observer>
TerminalReason run_counts_chain(BlockState state, const ModelParams& params, Variant variant,
                                StopCondition stop, RngStream& rng, std::uint64_t event_budget,
                                Observer&& obs) {
  using Kind = StopCondition::Kind;
  if (stop.kind == Kind::PlantsReach && (stop.level < 1 || stop.level > state.plants))
    throw std::invalid_argument("PlantsReach level must lie in [1, initial plants]");
  if (detail::stop_holds_initially(stop, state))
    return stop.kind == Kind::Absorption ? TerminalReason::Absorbed
                                         : TerminalReason::StopConditionMet;

  double t = 0.0;
  for (std::uint64_t n_events = 0; n_events < event_budget; ++n_events) {
    const RateSet rates = rate_set(state, params, variant);
    const double total = rates.total();
    t += rng.next_exponential(total);
    if (stop.kind == Kind::TimeHorizon && t > stop.horizon) return TerminalReason::StopConditionMet;

    const double u = rng.next_unit_open() * total;
    EventKind kind;
    if (u < rates.coalescence)
      kind = EventKind::Coalescence;
    else if (u < rates.coalescence + rates.deactivation)
      kind = EventKind::Deactivation;
    else
      kind = EventKind::Activation;
    state = apply_event(state, kind);
    obs(t, kind, state);

    switch (stop.kind) {
      case Kind::Absorption:
        if (is_absorbed(state)) return TerminalReason::Absorbed;
        break;
      case Kind::FirstDeactivation:
        if (kind == EventKind::Deactivation) return TerminalReason::StopConditionMet;
        break;
      case Kind::FirstActivation:
        if (kind == EventKind::Activation) return TerminalReason::StopConditionMet;
        break;
      case Kind::PlantsReach:
        if (state.plants == stop.level) return TerminalReason::StopConditionMet;
        break;
      case Kind::TimeHorizon:
        break;
    }
  }
  return TerminalReason::EventBudgetExceeded;
}

inline Trajectory simulate_counts(int n0, int m0, const ModelParams& params, Variant variant,
                                  StopCondition stop, RngSpec rng_spec,
                                  std::uint64_t event_budget = 0) {
  validate(params);
  const BlockState initial{n0, m0};
  detail::check_initial_state(initial, variant);
  if (event_budget == 0) event_budget = default_event_budget(n0);

  RngStream rng(rng_spec);
  Trajectory traj;
  traj.initial_state = initial;
  traj.terminal_reason =
      run_counts_chain(initial, params, variant, stop, rng, event_budget,
                       [&](double t, EventKind kind, BlockState state_after) {
                         traj.events.push_back({t, kind, state_after});
                       });
  return traj;
}

struct FirstDeactivationSample {
  int n_at_gamma = 0;
  double gamma = 0.0;
};

// O(n) direct sampler for (N(gamma), gamma).  Before the first deactivation
// the plant count is a pure death chain; the transition leaving level i+1
// is a deactivation with probability 2*c1/(i + 2*c1), independently across
// levels, and level i+1 is held for Exponential(C(i+1,2) + c1*(i+1)).  If
// no deactivation happens down to one plant, that plant deactivates after a
// further Exponential(c1) hold and N(gamma) = 0.
inline FirstDeactivationSample sample_first_deactivation(int n, const ModelParams& params,
                                                         RngSpec rng_spec) {
  validate(params);
  if (n < 2) throw std::invalid_argument("sample_first_deactivation requires n >= 2");
  RngStream rng(rng_spec);
  const double two_c1 = 2.0 * params.c1;
  double gamma = 0.0;
  for (int level = n; level >= 2; --level) {
    gamma += rng.next_exponential(pair_count(level) + params.c1 * level);
    if (rng.next_unit_open() * (double(level - 1) + two_c1) < two_c1) return {level - 1, gamma};
  }
  gamma += rng.next_exponential(params.c1);
  return {0, gamma};
}

namespace detail {

// Exact piecewise-constant integrals of the plant and seed counts over the
// trajectory, accumulated chronologically with compensated summation and
// frozen once the chain first hits (1,0).
inline std::pair<double, double> integrate_lengths(const Trajectory& traj) {
  KahanAccumulator active, inactive;
  BlockState state = traj.initial_state;
  double t_prev = 0.0;
  for (const auto& ev : traj.events) {
    if (is_absorbed(state)) break;
    const double dt = ev.time - t_prev;
    active.add(double(state.plants) * dt);
    inactive.add(double(state.seeds) * dt);
    state = ev.state_after;
    t_prev = ev.time;
  }
  return {active.value(), inactive.value()};
}

}  // namespace detail

struct MutationCounts {
  long active = 0;
  long inactive = 0;

  long total() const { return active + inactive; }
};

// Conditionally on the branch lengths, mutation counts are Poisson with
// means mu_active * A and mu_inactive * I.
inline MutationCounts superimpose_mutations(const Trajectory& traj, const ModelParams& params,
                                            RngSpec rng_spec) {
  validate(params);
  if (traj.terminal_reason != TerminalReason::Absorbed)
    throw std::invalid_argument("superimpose_mutations requires a trajectory run to absorption");
  const auto [active_length, inactive_length] = detail::integrate_lengths(traj);
  RngStream rng(rng_spec);
  MutationCounts counts;
  counts.active = params.mu_active > 0.0 ? rng.next_poisson(params.mu_active * active_length) : 0;
  counts.inactive =
      params.mu_inactive > 0.0 ? rng.next_poisson(params.mu_inactive * inactive_length) : 0;
  return counts;
}

}  // namespace seedbank
