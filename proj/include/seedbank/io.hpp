#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seedbank/csv.hpp"
#include "seedbank/exact.hpp"
#include "seedbank/sampling.hpp"
#include "seedbank/simulator.hpp"
#include "seedbank/trajectory_stats.hpp"

namespace seedbank {

// Event log of one trajectory: time, event, plants, seeds.
inline std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "time,event,plants,seeds\n";
  for (const auto& ev : traj.events)
    out += CsvRow()
               .add(ev.time)
               .add(to_string(ev.kind))
               .add(ev.state_after.plants)
               .add(ev.state_after.seeds)
               .str();
  return out;
}

inline const std::string& replicate_summary_csv_header() {
  static const std::string header =
      "replicate,gamma,theta,sigma,n_at_gamma,n_at_theta,m_at_theta,sup_seeds,A,I,L,"
      "S_active,S_inactive\n";
  return header;
}

inline std::string replicate_summary_csv_row(std::uint64_t replicate,
                                             const ReplicateSummary& summary) {
  return CsvRow()
      .add(replicate)
      .add(summary.stops.gamma)
      .add(summary.stops.theta)
      .add(summary.stops.sigma)
      .add(summary.stops.n_at_gamma)
      .add(summary.stops.n_at_theta)
      .add(summary.stops.m_at_theta)
      .add(summary.stops.sup_seeds)
      .add(summary.lengths.active)
      .add(summary.lengths.inactive)
      .add(summary.lengths.total)
      .add(summary.mutations.active)
      .add(summary.mutations.inactive)
      .str();
}

// Expectation table as (i, j, value) rows.
inline std::string expectation_table_csv(const ExpectationTable& table) {
  std::string out = "i,j,value\n";
  const int n = table.sample_size();
  for (int k = 1; k <= n; ++k)
    for (int i = 0; i <= k; ++i)
      out += CsvRow().add(i).add(k - i).add(table.value(i, k - i)).str();
  return out;
}

// Pmf as (value, probability) rows.
inline std::string pmf_csv(const ExactPmf& pmf) {
  std::string out = "value,probability\n";
  for (long v = pmf.first; v <= pmf.last(); ++v)
    out += CsvRow().add(v).add(pmf.at(v)).str();
  return out;
}

namespace detail {

inline std::string join_counts(const std::vector<int>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(counts[i]);
  }
  return out;
}

}  // namespace detail

// Spectrum law rows: k, a-vector, b-vector, probability.
inline std::string spectrum_law_csv(int k, int n, double c1) {
  std::string out = "k,a,b,probability\n";
  for (const auto& cfg : enumerate_A(k, n))
    out += CsvRow()
               .add(k)
               .add('"' + detail::join_counts(cfg.old_counts) + '"')
               .add('"' + detail::join_counts(cfg.recent_counts) + '"')
               .add(spectrum_probability(cfg, k, n, c1))
               .str();
  return out;
}

// Conditional expectations of O_j and R_j as (j, E_O, E_R) rows.
inline std::string spectrum_expectation_csv(int k, int n, double c1) {
  std::string out = "j,E_O,E_R\n";
  for (int j = 1; j <= n; ++j)
    out += CsvRow()
               .add(j)
               .add(expected_old(j, k, n, c1))
               .add(expected_recent(j, k, n, c1))
               .str();
  return out;
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace seedbank
