#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "seedbank/model.hpp"
#include "seedbank/rng.hpp"

namespace seedbank {

// The four reference limit laws.  Out-of-support arguments clamp the CDF to
// 0 or 1; they never throw.

// Beta(alpha, 1): CDF x^alpha on [0, 1].  The limit of N(gamma)/n has
// alpha = 2*c1.
struct BetaLaw {
  double alpha;
};

// Law of 2(1-Y)/Y with Y ~ Beta(2c1, 1): density c1 (2/(2+x))^(2c1+1) on
// x >= 0; the limit of n*gamma_n.
struct GammaTimeLaw {
  double c1;
};

// Frechet with shape 1: CDF exp(-scale/x) on x > 0.  The limit of
// N(theta)/log n has scale = 4*c1*c2.
struct FrechetLaw {
  double scale;
};

// Exponential(rate); the limit of theta_n * log n has rate = 2*c1*c2.
struct ExponentialLaw {
  double rate;
};

using LimitLaw = std::variant<BetaLaw, GammaTimeLaw, FrechetLaw, ExponentialLaw>;

inline BetaLaw n_at_gamma_limit(const ModelParams& p) { return {2.0 * p.c1}; }
inline GammaTimeLaw gamma_time_limit(const ModelParams& p) { return {p.c1}; }
inline FrechetLaw n_at_theta_limit(const ModelParams& p) { return {4.0 * p.c1 * p.c2}; }
inline ExponentialLaw theta_time_limit(const ModelParams& p) { return {2.0 * p.c1 * p.c2}; }

inline double cdf(const BetaLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::pow(x, law.alpha);
}
inline double cdf(const GammaTimeLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  return 1.0 - std::pow(2.0 / (2.0 + x), 2.0 * law.c1);
}
inline double cdf(const FrechetLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  return std::exp(-law.scale / x);
}
inline double cdf(const ExponentialLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  return -std::expm1(-law.rate * x);
}

inline double pdf(const BetaLaw& law, double x) {
  if (x < 0.0 || x > 1.0) return 0.0;
  return law.alpha * std::pow(x, law.alpha - 1.0);
}
inline double pdf(const GammaTimeLaw& law, double x) {
  if (x < 0.0) return 0.0;
  return law.c1 * std::pow(2.0 / (2.0 + x), 2.0 * law.c1 + 1.0);
}
inline double pdf(const FrechetLaw& law, double x) {
  if (x <= 0.0) return 0.0;
  return law.scale / (x * x) * std::exp(-law.scale / x);
}
inline double pdf(const ExponentialLaw& law, double x) {
  if (x < 0.0) return 0.0;
  return law.rate * std::exp(-law.rate * x);
}

inline double quantile(const BetaLaw& law, double u) { return std::pow(u, 1.0 / law.alpha); }
inline double quantile(const GammaTimeLaw& law, double u) {
  return 2.0 * (std::pow(1.0 - u, -1.0 / (2.0 * law.c1)) - 1.0);
}
inline double quantile(const FrechetLaw& law, double u) {
  if (u <= 0.0) return 0.0;
  return law.scale / -std::log(u);
}
inline double quantile(const ExponentialLaw& law, double u) {
  return -std::log1p(-u) / law.rate;
}

inline double cdf(const LimitLaw& law, double x) {
  return std::visit([x](const auto& l) { return cdf(l, x); }, law);
}
inline double pdf(const LimitLaw& law, double x) {
  return std::visit([x](const auto& l) { return pdf(l, x); }, law);
}
inline double quantile(const LimitLaw& law, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("quantile argument outside [0,1]");
  return std::visit([u](const auto& l) { return quantile(l, u); }, law);
}

// Inverse-transform sampling.
inline double sample(const LimitLaw& law, RngStream& rng) {
  return quantile(law, rng.next_unit_open());
}

// The same law as GammaTimeLaw through the Beta representation 2(1-Y)/Y;
// kept as an independent route for distribution checks.
inline double sample_gamma_time_via_beta(const GammaTimeLaw& law, RngStream& rng) {
  const double y = quantile(BetaLaw{2.0 * law.c1}, rng.next_unit_open());
  return 2.0 * (1.0 - y) / y;
}

// sup_x |empirical CDF - law CDF| over the sample points.
inline double ks_distance(std::vector<double> samples, const LimitLaw& law) {
  if (samples.empty()) throw std::invalid_argument("ks_distance requires a non-empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(law, samples[i]);
    d = std::max(d, std::max(f - double(i) / n, double(i + 1) / n - f));
  }
  return d;
}

}  // namespace seedbank
