#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "seedbank/model.hpp"
#include "seedbank/rng.hpp"
#include "seedbank/simulator.hpp"

namespace seedbank {

enum class BlockFlag { Plant, Seed };
enum class LeafColor { White, Blue };

// Leaf-labelled marked partition of [n]: each block carries a plant/seed
// flag, each leaf a white/blue color.  Blue marks leaves whose block has
// been through the seed bank and reactivated.
struct MarkedPartition {
  struct Block {
    std::vector<int> leaves;  // labels in [1, n]
    BlockFlag flag = BlockFlag::Plant;
  };

  std::vector<Block> blocks;
  std::vector<LeafColor> colors;  // indexed by leaf label - 1

  int leaf_count() const { return int(colors.size()); }
  int plant_blocks() const {
    int k = 0;
    for (const auto& b : blocks) k += (b.flag == BlockFlag::Plant);
    return k;
  }
  int seed_blocks() const { return int(blocks.size()) - plant_blocks(); }
};

inline MarkedPartition singleton_partition(int n) {
  if (n < 1) throw std::invalid_argument("partition needs at least one leaf");
  MarkedPartition p;
  p.blocks.resize(n);
  for (int i = 0; i < n; ++i) p.blocks[i].leaves = {i + 1};
  p.colors.assign(n, LeafColor::White);
  return p;
}

// Throws unless the blocks partition [n] exactly.
inline void check_partition(const MarkedPartition& partition) {
  const int n = partition.leaf_count();
  std::vector<char> seen(n, 0);
  for (const auto& block : partition.blocks) {
    if (block.leaves.empty()) throw std::invalid_argument("empty block in partition");
    for (int leaf : block.leaves) {
      if (leaf < 1 || leaf > n) throw std::invalid_argument("leaf label outside [1, n]");
      if (seen[leaf - 1]++) throw std::invalid_argument("leaf appears in two blocks");
    }
  }
  for (char s : seen)
    if (!s) throw std::invalid_argument("leaf missing from partition");
}

enum class SnapshotPolicy { StopOnly, FullHistory };

// simulate_partition output.  With SnapshotPolicy::StopOnly, `snapshots`
// holds the partition just before the final event and the final partition
// (a single entry when no event fired); with FullHistory it holds the
// initial partition followed by one snapshot per event.
struct PartitionRun {
  Trajectory trajectory;
  std::vector<MarkedPartition> snapshots;

  const MarkedPartition& final_partition() const { return snapshots.back(); }
  const MarkedPartition& before_final_event() const {
    return snapshots.size() >= 2 ? snapshots[snapshots.size() - 2] : snapshots.back();
  }
};

// Block-level simulation of the coalescent: a uniformly chosen pair of
// plant blocks merges at a coalescence, a uniformly chosen plant (seed)
// block flips at a deactivation (activation), and an activation paints the
// leaves of the activated block blue.  The induced (plant, seed) counts
// follow the same law as simulate_counts.
inline PartitionRun simulate_partition(int n, const ModelParams& params, StopCondition stop,
                                       RngSpec rng_spec,
                                       SnapshotPolicy policy = SnapshotPolicy::StopOnly,
                                       std::uint64_t event_budget = 0) {
  validate(params);
  if (n < 1) throw std::invalid_argument("simulate_partition requires n >= 1");
  if (event_budget == 0) event_budget = default_event_budget(n);

  MarkedPartition partition = singleton_partition(n);
  // Index lists by flag; block identities are positions in partition.blocks
  // that stay valid because merges copy into the surviving block.
  std::vector<int> plant_ids(n), seed_ids;
  std::iota(plant_ids.begin(), plant_ids.end(), 0);
  std::vector<char> alive(n, 1);

  PartitionRun run;
  run.trajectory.initial_state = {n, 0};
  if (policy == SnapshotPolicy::FullHistory) run.snapshots.push_back(partition);

  auto live_partition = [&]() {
    MarkedPartition out;
    out.colors = partition.colors;
    for (std::size_t id = 0; id < partition.blocks.size(); ++id)
      if (alive[id]) out.blocks.push_back(partition.blocks[id]);
    return out;
  };

  MarkedPartition before_last = live_partition();
  RngStream rng(rng_spec);
  run.trajectory.terminal_reason = run_counts_chain(
      BlockState{n, 0}, params, Variant::standard(), stop, rng, event_budget,
      [&](double t, EventKind kind, BlockState state_after) {
        if (policy == SnapshotPolicy::StopOnly) before_last = live_partition();
        switch (kind) {
          case EventKind::Coalescence: {
            const auto np = std::uint32_t(plant_ids.size());
            const std::uint32_t i = rng.next_below(np);
            std::uint32_t j = rng.next_below(np - 1);
            if (j >= i) ++j;
            const int keep = plant_ids[i], drop = plant_ids[j];
            auto& dst = partition.blocks[keep].leaves;
            const auto& src = partition.blocks[drop].leaves;
            dst.insert(dst.end(), src.begin(), src.end());
            alive[drop] = 0;
            plant_ids[j] = plant_ids.back();
            plant_ids.pop_back();
            break;
          }
          case EventKind::Deactivation: {
            const std::uint32_t i = rng.next_below(std::uint32_t(plant_ids.size()));
            const int id = plant_ids[i];
            partition.blocks[id].flag = BlockFlag::Seed;
            plant_ids[i] = plant_ids.back();
            plant_ids.pop_back();
            seed_ids.push_back(id);
            break;
          }
          case EventKind::Activation: {
            const std::uint32_t i = rng.next_below(std::uint32_t(seed_ids.size()));
            const int id = seed_ids[i];
            partition.blocks[id].flag = BlockFlag::Plant;
            for (int leaf : partition.blocks[id].leaves)
              partition.colors[leaf - 1] = LeafColor::Blue;
            seed_ids[i] = seed_ids.back();
            seed_ids.pop_back();
            plant_ids.push_back(id);
            break;
          }
        }
        run.trajectory.events.push_back({t, kind, state_after});
        if (policy == SnapshotPolicy::FullHistory) run.snapshots.push_back(live_partition());
      });

  if (policy == SnapshotPolicy::StopOnly) {
    if (!run.trajectory.events.empty()) run.snapshots.push_back(std::move(before_last));
    run.snapshots.push_back(live_partition());
  }
  return run;
}

}  // namespace seedbank
