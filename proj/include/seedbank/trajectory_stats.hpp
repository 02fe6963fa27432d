#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seedbank/model.hpp"
#include "seedbank/numerics.hpp"
#include "seedbank/partition.hpp"
#include "seedbank/rng.hpp"
#include "seedbank/simulator.hpp"

namespace seedbank {

// Stopping times of one realization started from (n, 0).  gamma is the
// first deactivation, theta the first activation, sigma the first visit to
// (1,0); a field is absent when the run stopped before the event.
// n_at_gamma and n_at_theta are plant counts just after the event;
// m_at_theta is the seed count just before the activation (so it is always
// at least 1 when theta is present).
struct StoppingSummary {
  std::optional<double> gamma;
  std::optional<double> theta;
  std::optional<double> sigma;
  int n_at_gamma = 0;
  int n_at_theta = 0;
  int m_at_theta = 0;
  int sup_seeds = 0;
};

// Time-integrals of the plant and seed counts up to sigma; total is defined
// as active + inactive.
struct BranchLengths {
  double active = 0.0;
  double inactive = 0.0;
  double total = 0.0;
};

namespace detail {

struct SummaryObserver {
  BlockState state;
  double t_prev = 0.0;
  StoppingSummary stops;
  KahanAccumulator active_length, inactive_length;

  explicit SummaryObserver(BlockState initial) : state(initial) {
    stops.sup_seeds = initial.seeds;
    if (is_absorbed(initial)) stops.sigma = 0.0;
  }

  void operator()(double t, EventKind kind, BlockState after) {
    if (!stops.sigma) {
      const double dt = t - t_prev;
      active_length.add(double(state.plants) * dt);
      inactive_length.add(double(state.seeds) * dt);
    }
    if (kind == EventKind::Deactivation && !stops.gamma) {
      stops.gamma = t;
      stops.n_at_gamma = after.plants;
    }
    if (kind == EventKind::Activation && !stops.theta) {
      stops.theta = t;
      stops.n_at_theta = after.plants;
      stops.m_at_theta = after.seeds + 1;
    }
    if (!stops.sigma && is_absorbed(after)) stops.sigma = t;
    stops.sup_seeds = std::max(stops.sup_seeds, after.seeds);
    state = after;
    t_prev = t;
  }

  BranchLengths lengths() const {
    BranchLengths out;
    out.active = active_length.value();
    out.inactive = inactive_length.value();
    out.total = out.active + out.inactive;
    return out;
  }
};

}  // namespace detail

inline StoppingSummary stopping_summary(const Trajectory& traj) {
  detail::SummaryObserver obs(traj.initial_state);
  for (const auto& ev : traj.events) obs(ev.time, ev.kind, ev.state_after);
  return obs.stops;
}

inline BranchLengths branch_lengths(const Trajectory& traj) {
  if (traj.terminal_reason != TerminalReason::Absorbed)
    throw std::invalid_argument("branch_lengths requires a trajectory run to absorption");
  detail::SummaryObserver obs(traj.initial_state);
  for (const auto& ev : traj.events) obs(ev.time, ev.kind, ev.state_after);
  return obs.lengths();
}

// Stops, branch lengths and mutation counts of one replicate, computed in a
// single streaming pass so large samples need no stored event log.  Agrees
// event-for-event with simulate_counts on the same RngSpec.
struct ReplicateSummary {
  StoppingSummary stops;
  BranchLengths lengths;
  MutationCounts mutations;
  TerminalReason terminal = TerminalReason::Absorbed;
};

inline ReplicateSummary simulate_summary(int n0, int m0, const ModelParams& params,
                                         Variant variant, StopCondition stop, RngSpec rng_spec,
                                         std::uint64_t event_budget = 0) {
  validate(params);
  const BlockState initial{n0, m0};
  detail::check_initial_state(initial, variant);
  if (event_budget == 0) event_budget = default_event_budget(n0);

  RngStream rng(rng_spec);
  detail::SummaryObserver obs(initial);
  ReplicateSummary out;
  out.terminal = run_counts_chain(initial, params, variant, stop, rng, event_budget, obs);
  out.stops = obs.stops;
  out.lengths = obs.lengths();
  if (out.terminal == TerminalReason::Absorbed) {
    out.mutations.active =
        params.mu_active > 0.0 ? rng.next_poisson(params.mu_active * out.lengths.active) : 0;
    out.mutations.inactive =
        params.mu_inactive > 0.0 ? rng.next_poisson(params.mu_inactive * out.lengths.inactive) : 0;
  }
  return out;
}

// Counts of active blocks by size (old: never deactivated before the first
// activation) and dormant blocks by size (recent) in a partition snapshot.
struct BlockSpectrum {
  std::vector<int> old_counts;     // old_counts[i-1] = number of plant blocks of size i
  std::vector<int> recent_counts;  // recent_counts[i-1] = number of seed blocks of size i
  int active_blocks = 0;           // k
};

enum class SnapshotConvention { PreActivation, PostActivation };

// Spectrum of the partition at the first activation.  The convention names
// which limit the snapshot represents: under PreActivation (default) the
// about-to-activate block still counts as a seed.
inline BlockSpectrum spectrum_at_first_activation(
    const MarkedPartition& snapshot,
    SnapshotConvention convention = SnapshotConvention::PreActivation) {
  (void)convention;  // the counting itself is limit-independent
  check_partition(snapshot);
  const int n = snapshot.leaf_count();
  BlockSpectrum spectrum;
  spectrum.old_counts.assign(n, 0);
  spectrum.recent_counts.assign(n, 0);
  for (const auto& block : snapshot.blocks) {
    const int size = int(block.leaves.size());
    if (block.flag == BlockFlag::Plant) {
      ++spectrum.old_counts[size - 1];
      ++spectrum.active_blocks;
    } else {
      ++spectrum.recent_counts[size - 1];
    }
  }
  return spectrum;
}

// Convenience overload: picks the left or right limit snapshot out of a
// run stopped at the first activation.
inline BlockSpectrum spectrum_at_first_activation(const PartitionRun& run,
                                                  SnapshotConvention convention) {
  if (run.trajectory.events.empty() ||
      run.trajectory.events.back().kind != EventKind::Activation)
    throw std::invalid_argument("run did not stop at an activation");
  const MarkedPartition& snapshot = convention == SnapshotConvention::PreActivation
                                        ? run.before_final_event()
                                        : run.final_partition();
  return spectrum_at_first_activation(snapshot, convention);
}

}  // namespace seedbank
