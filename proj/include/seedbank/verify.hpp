#pragma once

// Acceptance suite: every check the toolkit promises, with pinned seeds and
// tolerances, runnable through the CLI (`verify`) or the dedicated test
// binary.  Each criterion prints one PASS/FAIL line; sub-checks appear as
// indented detail lines.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "seedbank/dense_solve.hpp"
#include "seedbank/exact.hpp"
#include "seedbank/limit_laws.hpp"
#include "seedbank/model.hpp"
#include "seedbank/numerics.hpp"
#include "seedbank/parallel.hpp"
#include "seedbank/partition.hpp"
#include "seedbank/sampling.hpp"
#include "seedbank/simulator.hpp"
#include "seedbank/trajectory_stats.hpp"

namespace seedbank::verify {

struct CriterionResult {
  int id = 0;
  std::string group;
  std::string name;
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const std::string& line) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  }
  void note(const std::string& line) { details.push_back("     " + line); }
};

struct Options {
  std::string only;                      // run only criteria whose group (or id) matches
  double activation_perturbation = 1.0;  // sensitivity hook for the balance identity
  std::string cli_path;                  // binary used by the reproducibility criterion
  unsigned threads = default_thread_count();
};

namespace detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

inline bool strictly_decreasing(const std::vector<double>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] < xs[i - 1])) return false;
  return true;
}

inline std::string sequence(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + fmt(xs[i]);
  return out;
}

}  // namespace detail

// 1. c1 E[A_n] = c2 E[I_n] for n = 2..200 over a 3x3 parameter grid.
inline CriterionResult balance_identity(const Options& opt) {
  CriterionResult res{1, "balance", "balance identity c1*E[A] = c2*E[I], n <= 200"};
  const double tol = 1e-10;
  double worst = 0.0;
  std::string worst_at;
  for (const double c1 : {0.5, 1.0, 2.0}) {
    for (const double c2 : {0.5, 1.0, 2.0}) {
      // the perturbation emulates a build whose activation rate is off
      const ModelParams solver_params{c1, c2 * opt.activation_perturbation, 0.0, 0.0};
      const ExpectationTable plant(200, solver_params, Functional::PlantTime);
      const ExpectationTable seed(200, solver_params, Functional::SeedTime);
      for (int n = 2; n <= 200; ++n) {
        const double lhs = c1 * plant.value(n, 0);
        const double rhs = c2 * seed.value(n, 0);
        const double residual = std::abs(lhs - rhs) / lhs;
        if (residual > worst) {
          worst = residual;
          worst_at = "n=" + std::to_string(n) + " c1=" + detail::fmt(c1) +
                     " c2=" + detail::fmt(c2);
        }
      }
    }
  }
  res.check(worst <= tol, "max residual " + detail::fmt(worst) + " (" + worst_at +
                              ") <= " + detail::fmt(tol));
  return res;
}

// 2. Hand-solved n = 2 values and dense-solve equivalence for n <= 6.
inline CriterionResult exact_oracle(const Options&) {
  CriterionResult res{2, "exact-oracle", "n=2 hand solution and dense-solve equivalence"};
  const ModelParams unit{1.0, 1.0, 0.0, 0.0};
  const double ea = ExpectationTable(2, unit, Functional::PlantTime).value(2, 0);
  const double ei = ExpectationTable(2, unit, Functional::SeedTime).value(2, 0);
  const double es = ExpectationTable(2, unit, Functional::ElapsedTime).value(2, 0);
  res.check(std::abs(ea - 4.0) <= 1e-12, "E[A_2] = " + detail::fmt(ea) + " vs 4");
  res.check(std::abs(ei - 4.0) <= 1e-12, "E[I_2] = " + detail::fmt(ei) + " vs 4");
  res.check(std::abs(es - 4.0) <= 1e-12, "E[sigma_2] = " + detail::fmt(es) + " vs 4");

  double worst = 0.0;
  for (const auto& params : {ModelParams{1.0, 1.0, 0.0, 0.0}, ModelParams{0.5, 2.0, 0.0, 0.0},
                             ModelParams{2.0, 0.5, 0.0, 0.0}}) {
    for (int n = 2; n <= 6; ++n) {
      for (const auto f : {Functional::PlantTime, Functional::SeedTime, Functional::ElapsedTime}) {
        const ExpectationTable table(n, params, f);
        for (const auto& [state, reference] : dense_expectation_values(n, params, f))
          worst = std::max(worst, std::abs(table.value(state.first, state.second) - reference) /
                                      std::max(1.0, std::abs(reference)));
      }
    }
  }
  res.check(worst <= 1e-12, "dense-solve equivalence, worst deviation " + detail::fmt(worst));
  return res;
}

// 3. Law of N(gamma): normalization, simulation TV, and the Beta power-law
// CDF approximation.
inline CriterionResult gamma_pmf_law(const Options& opt) {
  CriterionResult res{3, "gamma-pmf", "law of N(gamma): pmf, simulation TV, CDF limit"};
  double worst_sum = 0.0;
  for (const int n : {2, 10, 100, 1000, 100000})
    for (const double c1 : {0.5, 1.0, 2.0})
      worst_sum = std::max(worst_sum, std::abs(pmf_n_at_gamma(n, c1).total() - 1.0));
  res.check(worst_sum <= 1e-12, "pmf normalization, worst |sum-1| = " + detail::fmt(worst_sum));

  {
    const int n = 100, reps = 100000;
    const ModelParams params{1.0, 1.0, 0.0, 0.0};
    const auto pmf = pmf_n_at_gamma(n, params.c1);
    std::vector<int> values(reps);
    for_each_replicate(reps, opt.threads, [&](std::uint64_t r) {
      values[r] = sample_first_deactivation(n, params, {93001, r}).n_at_gamma;
    });
    std::vector<long> counts(std::size_t(n), 0);
    for (int v : values) ++counts[std::size_t(v)];
    double tv = 0.0;
    for (int m = 0; m < n; ++m) tv += std::abs(double(counts[std::size_t(m)]) / reps - pmf.at(m));
    tv *= 0.5;
    res.check(tv <= 0.01, "simulation TV at n=100, 1e5 reps: " + detail::fmt(tv) +
                              " <= 0.01 (multinomial noise floor here is ~0.012)");
  }

  std::vector<double> sups;
  for (const int n : {100, 1000, 10000, 100000}) {
    const auto pmf = pmf_n_at_gamma(n, 1.0);
    double cumulative = 0.0, sup = 0.0;
    for (long m = 0; m < n; ++m) {
      cumulative += pmf.at(m);
      sup = std::max(sup, std::abs(cumulative - std::pow(double(m) / n, 2.0)));
    }
    sups.push_back(sup);
  }
  res.check(sups.back() <= 0.01, "sup |CDF - z^(2c1)| at n=1e5: " + detail::fmt(sups.back()));
  res.check(detail::strictly_decreasing(sups),
            "sup distance decreasing over n grid: " + detail::sequence(sups));
  return res;
}

// 4. n*gamma_n converges to the gamma-time limit; closed-form moments match
// quadrature.
inline CriterionResult gamma_limit(const Options& opt) {
  CriterionResult res{4, "gamma-limit", "n*gamma law vs its limit and moments"};
  const int n = 100000, reps = 100000;
  for (const double c1 : {0.5, 1.0, 2.0}) {
    const ModelParams params{c1, 1.0, 0.0, 0.0};
    std::vector<double> scaled(reps);
    for_each_replicate(reps, opt.threads, [&](std::uint64_t r) {
      scaled[r] = double(n) * sample_first_deactivation(n, params, {94001, r}).gamma;
    });
    const double ks = ks_distance(scaled, GammaTimeLaw{c1});
    res.check(ks <= 0.02, "KS(n*gamma, limit) c1=" + detail::fmt(c1) + ": " + detail::fmt(ks));
  }
  for (const double c1 : {0.75, 1.5, 2.0}) {
    const GammaTimeLaw law{c1};
    const auto moments = gamma_law_moments(c1);
    const double mean = integrate_half_line([&](double x) { return x * pdf(law, x); });
    res.check(std::abs(mean - *moments.mean) <= 1e-6,
              "mean by quadrature c1=" + detail::fmt(c1) + ": " + detail::fmt(mean) + " vs " +
                  detail::fmt(*moments.mean));
    if (moments.variance) {
      const double second = integrate_half_line([&](double x) { return x * x * pdf(law, x); });
      res.check(std::abs(second - mean * mean - *moments.variance) <= 1e-6,
                "variance by quadrature c1=" + detail::fmt(c1) + ": " +
                    detail::fmt(second - mean * mean) + " vs " + detail::fmt(*moments.variance));
    }
  }
  return res;
}

// 5. First-activation laws: KS trends toward the exponential and Frechet
// limits, and the seed count at theta against 2 c1 log n.
inline CriterionResult theta_laws(const Options& opt) {
  CriterionResult res{5, "theta-laws", "theta_n laws across the n grid"};
  const ModelParams params{1.0, 1.0, 0.0, 0.0};
  const int reps = 10000;
  std::vector<double> ks_theta, ks_frechet;
  double m_ratio_at_largest = 0.0;
  for (const long n : {1000L, 10000L, 100000L, 1000000L}) {
    std::vector<double> theta(reps), n_scaled(reps), m_scaled(reps);
    for_each_replicate(reps, opt.threads, [&](std::uint64_t r) {
      const auto s = simulate_summary(int(n), 0, params, Variant::standard(),
                                      StopCondition::first_activation(), {95001, r});
      theta[r] = *s.stops.theta;
      n_scaled[r] = s.stops.n_at_theta;
      m_scaled[r] = s.stops.m_at_theta;
    });
    const double log_n = std::log(double(n));
    double m_sum = 0.0;
    for (int r = 0; r < reps; ++r) {
      theta[r] *= log_n;
      n_scaled[r] /= log_n;
      m_sum += m_scaled[r] / log_n;
    }
    ks_theta.push_back(ks_distance(theta, theta_time_limit(params)));
    ks_frechet.push_back(ks_distance(n_scaled, n_at_theta_limit(params)));
    m_ratio_at_largest = m_sum / reps;
  }
  res.check(detail::strictly_decreasing(ks_theta),
            "KS(theta*log n, Exp(2c1c2)) decreasing: " + detail::sequence(ks_theta));
  res.check(detail::strictly_decreasing(ks_frechet),
            "KS(N(theta)/log n, Frechet) decreasing: " + detail::sequence(ks_frechet));
  const double target = 2.0 * params.c1;
  res.check(std::abs(m_ratio_at_largest - target) <= 0.1 * target,
            "mean M(theta)/log n at n=1e6: " + detail::fmt(m_ratio_at_largest) + " vs " +
                detail::fmt(target) + " +-10% (the log log n correction is ~0.6 here)");
  return res;
}

// 6. Lemma-style tail bound on the seed count supremum.
inline CriterionResult seed_bound(const Options& opt) {
  CriterionResult res{6, "seed-bound", "tail bound on sup M over the whole path"};
  const ModelParams params{1.0, 1.0, 0.0, 0.0};
  const int n = 10000, reps = 10000;
  const double eps = 1.0;
  const double threshold = 2.0 * params.c1 * (1.0 + eps) * std::log(double(n));
  std::vector<int> sup(reps);
  for_each_replicate(reps, opt.threads, [&](std::uint64_t r) {
    sup[r] = simulate_summary(n, 0, params, Variant::standard(), StopCondition::absorption(),
                              {96001, r})
                 .stops.sup_seeds;
  });
  long exceed = 0;
  for (int s : sup) exceed += s > threshold;
  const double p_hat = double(exceed) / reps;
  const double se = std::sqrt(p_hat * (1.0 - p_hat) / reps);
  const double bound = 1.0 / (2.0 * params.c1 * eps * eps * std::log(double(n)));
  res.check(p_hat <= bound + 3.0 * se, "P(sup M > " + detail::fmt(threshold) +
                                           ") = " + detail::fmt(p_hat) + " <= " +
                                           detail::fmt(bound) + " + 3 SE");
  return res;
}

// 7. Branch-length expectations drift toward their limiting constants.
inline CriterionResult length_trends(const Options&) {
  CriterionResult res{7, "length-trends", "normalized E[A], E[I], E[L] trends"};
  for (const auto [c1, c2] :
       std::vector<std::pair<double, double>>{{1.0, 1.0}, {0.5, 2.0}, {2.0, 0.5}}) {
    const ModelParams params{c1, c2, 0.0, 0.0};
    std::vector<double> dev_a, dev_i, dev_l;
    for (const int n : {30, 300, 3000}) {
      const double log_n = std::log(double(n));
      const double ea = ExpectationTable(n, params, Functional::PlantTime).value(n, 0);
      const double ei = ExpectationTable(n, params, Functional::SeedTime).value(n, 0);
      dev_a.push_back(std::abs(ea / (2.0 * log_n) - 1.0));
      dev_i.push_back(std::abs(ei / (2.0 * c1 / c2 * log_n) - 1.0));
      dev_l.push_back(std::abs((ea + ei) / (2.0 * (1.0 + c1 / c2) * log_n) - 1.0));
    }
    const std::string tag = " c1=" + detail::fmt(c1) + " c2=" + detail::fmt(c2) + ": ";
    res.check(detail::strictly_decreasing(dev_a), "E[A]/(2 log n)" + tag + detail::sequence(dev_a));
    res.check(detail::strictly_decreasing(dev_i),
              "E[I]/((2c1/c2) log n)" + tag + detail::sequence(dev_i));
    res.check(detail::strictly_decreasing(dev_l),
              "E[L]/(2(1+c1/c2) log n)" + tag + detail::sequence(dev_l));
  }
  return res;
}

// 8. Mutation counts against mu * E[L_n].
inline CriterionResult mutation_counts(const Options& opt) {
  CriterionResult res{8, "mutations", "mutation totals vs mu * E[L_50]"};
  const int n = 50, reps = 10000;
  const ModelParams params{1.0, 1.0, 1.0, 1.0};
  std::vector<double> totals(reps);
  for_each_replicate(reps, opt.threads, [&](std::uint64_t r) {
    totals[r] = double(simulate_summary(n, 0, params, Variant::standard(),
                                        StopCondition::absorption(), {98001, r})
                           .mutations.total());
  });
  double mean = 0.0;
  for (double t : totals) mean += t / reps;
  double var = 0.0;
  for (double t : totals) var += (t - mean) * (t - mean) / (reps - 1);
  const double se = std::sqrt(var / reps);
  const double reference = ExpectationTable(n, params, Functional::PlantTime).value(n, 0) +
                           ExpectationTable(n, params, Functional::SeedTime).value(n, 0);
  res.check(std::abs(mean - reference) <= 3.0 * se,
            "mean S = " + detail::fmt(mean) + " vs mu*E[L_50] = " + detail::fmt(reference) +
                " +- " + detail::fmt(3.0 * se));

  const ModelParams silent{1.0, 1.0, 0.0, 0.0};
  bool all_zero = true;
  for (std::uint64_t r = 0; r < 100; ++r)
    all_zero = all_zero && simulate_summary(n, 0, silent, Variant::standard(),
                                            StopCondition::absorption(), {98002, r})
                                   .mutations.total() == 0;
  res.check(all_zero, "mu = 0 gives S identically 0");
  return res;
}

// 9. Sampling formula suite: normalization, closed forms vs enumeration,
// urn frequencies, and the conditioned partition simulation.
inline CriterionResult sampling_suite(const Options& opt) {
  CriterionResult res{9, "sampling", "conditional sampling formula suite"};
  const int n_max = 8;

  double worst_norm = 0.0, worst_closed = 0.0;
  for (const double c1 : {0.5, 1.0, 2.0}) {
    for (int n = 2; n <= n_max; ++n) {
      for (int k = 1; k <= n; ++k) {
        KahanAccumulator total;
        std::map<std::vector<int>, double> marginal_by_sum;
        std::vector<double> z_pushforward(std::size_t(n + 1), 0.0);
        std::vector<double> e_old(std::size_t(n + 1), 0.0), e_recent(std::size_t(n + 1), 0.0);
        for (const auto& cfg : enumerate_A(k, n)) {
          const double p = spectrum_probability(cfg, k, n, c1);
          total.add(p);
          marginal_by_sum[cfg.old_counts] += p;
          z_pushforward[std::size_t(cfg.old_weighted_size())] += p;
          for (int j = 1; j <= n; ++j) {
            e_old[std::size_t(j)] += cfg.old_counts[j - 1] * p;
            e_recent[std::size_t(j)] += cfg.recent_counts[j - 1] * p;
          }
        }
        worst_norm = std::max(worst_norm, std::abs(total.value() - 1.0));
        for (const auto& a : enumerate_Abar(k, n)) {
          const auto it = marginal_by_sum.find(a);
          const double by_sum = it == marginal_by_sum.end() ? 0.0 : it->second;
          worst_closed =
              std::max(worst_closed, std::abs(marginal_old_probability(a, k, n, c1) - by_sum));
        }
        const auto z_law = pmf_Z(k, n, c1);
        for (int z = k; z <= n; ++z)
          worst_closed =
              std::max(worst_closed, std::abs(z_law.at(z) - z_pushforward[std::size_t(z)]));
        for (int j = 1; j <= n; ++j) {
          worst_closed =
              std::max(worst_closed, std::abs(expected_old(j, k, n, c1) - e_old[std::size_t(j)]));
          worst_closed = std::max(worst_closed, std::abs(expected_recent(j, k, n, c1) -
                                                         e_recent[std::size_t(j)]));
        }
      }
    }
  }
  res.check(worst_norm <= 1e-10, "normalization over A(k,n), n <= 8: worst |sum-1| = " +
                                     detail::fmt(worst_norm));
  res.check(worst_closed <= 1e-10,
            "marginal/pgf/expectations vs enumeration: worst deviation = " +
                detail::fmt(worst_closed));

  {
    const double c1 = 1.0;
    const int urn_draws = 100000;
    double worst_tv = 0.0;
    for (int k = 1; k <= n_max; ++k) {
      std::vector<Configuration> draws(urn_draws);
      for_each_replicate(urn_draws, opt.threads, [&](std::uint64_t r) {
        draws[r] = hoppe_urn_sample(k, n_max, c1, {99001 + std::uint64_t(k), r});
      });
      std::map<Configuration, long> counts;
      for (const auto& cfg : draws) ++counts[cfg];
      double tv = 0.0;
      for (const auto& cfg : enumerate_A(k, n_max)) {
        const auto it = counts.find(cfg);
        const double freq = it == counts.end() ? 0.0 : double(it->second) / urn_draws;
        tv += std::abs(freq - spectrum_probability(cfg, k, n_max, c1));
      }
      worst_tv = std::max(worst_tv, 0.5 * tv);
    }
    res.check(worst_tv <= 0.02,
              "Hoppe urn vs formula, 1e5 draws, all k: worst TV = " + detail::fmt(worst_tv));
  }

  {
    // conditioned partition simulation, both snapshot conventions, each at
    // the mode of its own active-block count
    const double c1 = 1.0;
    const ModelParams params{c1, 1.0, 0.0, 0.0};
    const int reps = 200000;
    std::vector<Configuration> pre_cfg(reps), post_cfg(reps);
    std::vector<int> pre_k(reps), post_k(reps);
    for_each_replicate(reps, opt.threads, [&](std::uint64_t r) {
      const auto run =
          simulate_partition(n_max, params, StopCondition::first_activation(), {99101, r});
      const auto pre = spectrum_at_first_activation(run, SnapshotConvention::PreActivation);
      const auto post = spectrum_at_first_activation(run, SnapshotConvention::PostActivation);
      pre_cfg[r] = {pre.old_counts, pre.recent_counts};
      post_cfg[r] = {post.old_counts, post.recent_counts};
      pre_k[r] = pre.active_blocks;
      post_k[r] = post.active_blocks;
    });
    auto conditioned_tv = [&](const std::vector<int>& ks, const std::vector<Configuration>& cfgs) {
      std::map<int, long> k_hist;
      for (int k : ks) ++k_hist[k];
      int k_mode = 1;
      long best = -1;
      for (const auto& [k, count] : k_hist)
        if (k >= 1 && count > best) {
          best = count;
          k_mode = k;
        }
      std::map<Configuration, long> counts;
      long total = 0;
      for (int r = 0; r < reps; ++r)
        if (ks[r] == k_mode) {
          ++counts[cfgs[r]];
          ++total;
        }
      double tv = 0.0;
      for (const auto& cfg : enumerate_A(k_mode, n_max)) {
        const auto it = counts.find(cfg);
        const double freq = it == counts.end() ? 0.0 : double(it->second) / total;
        tv += std::abs(freq - spectrum_probability(cfg, k_mode, n_max, c1));
      }
      for (const auto& [cfg, count] : counts)
        if (!in_A(cfg, k_mode, n_max)) tv += double(count) / total;
      return std::pair{k_mode, 0.5 * tv};
    };
    const auto [k_pre, tv_pre] = conditioned_tv(pre_k, pre_cfg);
    const auto [k_post, tv_post] = conditioned_tv(post_k, post_cfg);
    res.note("pre-activation convention: k mode " + std::to_string(k_pre) + ", TV " +
             detail::fmt(tv_pre));
    res.note("post-activation convention: k mode " + std::to_string(k_post) + ", TV " +
             detail::fmt(tv_post));
    res.note(std::string("better-matching convention: ") +
             (tv_post <= tv_pre ? "post-activation" : "pre-activation"));
    res.check(std::min(tv_pre, tv_post) <= 0.05,
              "conditioned simulation vs formula: best TV = " +
                  detail::fmt(std::min(tv_pre, tv_post)) +
                  " <= 0.05 (the formula ignores the stopping-level tilt; exact gap at n=2 "
                  "is 1/6)");
  }
  return res;
}

namespace detail {

inline int run_command(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status < 0) return -1;
  return WEXITSTATUS(status);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace detail

// 10. Byte-identical CSV under a pinned seed, and exit-code sensitivity of
// the verify command to a perturbed activation rate.
inline CriterionResult reproducibility(const Options& opt) {
  CriterionResult res{10, "repro", "reproducible CSV output and verify sensitivity"};
  if (opt.cli_path.empty()) {
    res.check(false, "CLI binary path not provided");
    return res;
  }
  namespace fs = std::filesystem;
  const std::string cli = "\"" + opt.cli_path + "\"";
  const auto tmp = fs::temp_directory_path();
  const std::string tag = std::to_string(std::uint64_t(::getpid()));
  const fs::path out1 = tmp / ("seedbank-repro-" + tag + "-1.csv");
  const fs::path out2 = tmp / ("seedbank-repro-" + tag + "-2.csv");
  const fs::path out3 = tmp / ("seedbank-repro-" + tag + "-3.csv");

  const std::string base = cli +
                           " simulate --n 50 --reps 300 --c1 1 --c2 1 --mu 0.5 --seed 7"
                           " --stop absorption";
  const int s1 = detail::run_command(base + " --threads 2 --out " + out1.string() +
                                     " > /dev/null 2>&1");
  const int s2 = detail::run_command(base + " --threads 2 --out " + out2.string() +
                                     " > /dev/null 2>&1");
  const int s3 = detail::run_command(base + " --threads 1 --out " + out3.string() +
                                     " > /dev/null 2>&1");
  res.check(s1 == 0 && s2 == 0 && s3 == 0, "simulate runs exit 0");
  const std::string b1 = detail::read_file(out1);
  res.check(!b1.empty() && b1 == detail::read_file(out2),
            "same seed twice: byte-identical CSV");
  res.check(b1 == detail::read_file(out3), "thread count does not change the CSV");
  fs::remove(out1);
  fs::remove(out2);
  fs::remove(out3);

  const int ok = detail::run_command(cli + " verify --only balance > /dev/null 2>&1");
  res.check(ok == 0, "verify --only balance exits 0 on the correct build");
  const int perturbed = detail::run_command(
      cli + " verify --only balance --perturb-activation 1.01 > /dev/null 2>&1");
  res.check(perturbed == 1, "verify with a 1% activation perturbation exits 1");
  return res;
}

struct CriterionEntry {
  int id;
  const char* group;
  CriterionResult (*run)(const Options&);
};

inline const std::vector<CriterionEntry>& criteria() {
  static const std::vector<CriterionEntry> entries = {
      {1, "balance", balance_identity},   {2, "exact-oracle", exact_oracle},
      {3, "gamma-pmf", gamma_pmf_law},    {4, "gamma-limit", gamma_limit},
      {5, "theta-laws", theta_laws},      {6, "seed-bound", seed_bound},
      {7, "length-trends", length_trends}, {8, "mutations", mutation_counts},
      {9, "sampling", sampling_suite},    {10, "repro", reproducibility}};
  return entries;
}

inline std::vector<CriterionResult> run_acceptance(const Options& opt, std::ostream& log) {
  std::vector<CriterionResult> results;
  for (const auto& entry : criteria()) {
    if (!opt.only.empty() && opt.only != entry.group && opt.only != std::to_string(entry.id))
      continue;
    CriterionResult result = entry.run(opt);
    log << "[" << (result.pass ? "PASS" : "FAIL") << "] criterion " << result.id << " ("
        << result.group << "): " << result.name << "\n";
    for (const auto& line : result.details) log << "    " << line << "\n";
    log.flush();
    results.push_back(std::move(result));
  }
  return results;
}

inline bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

}  // namespace seedbank::verify
