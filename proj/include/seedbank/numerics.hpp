#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace seedbank {

// Compensated (Kahan) summation; keeps branch-length integrals and other
// long accumulations stable independent of trajectory length.
struct KahanAccumulator {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// log(t!)
inline double log_factorial(std::int64_t t) {
  if (t < 0) throw std::invalid_argument("factorial of a negative integer");
  return std::lgamma(double(t) + 1.0);
}

// log of the ascending factorial x_(t) = x (x+1) ... (x+t-1), x > 0.
inline double log_ascending_factorial(double x, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("ascending factorial of negative length");
  if (!(x > 0)) throw std::invalid_argument("ascending factorial base must be positive");
  if (t == 0) return 0.0;
  return std::lgamma(x + double(t)) - std::lgamma(x);
}

// log C(x, t) for real x with x - t + 1 > 0, via C(x, t) = (x-t+1)_(t) / t!.
inline double log_generalized_binomial(double x, std::int64_t t) {
  if (t < 0) throw std::invalid_argument("binomial with negative lower index");
  return log_ascending_factorial(x - double(t) + 1.0, t) - log_factorial(t);
}

// log C(n, t) for integer arguments, 0 when out of range handled by caller.
inline double log_binomial(std::int64_t n, std::int64_t t) {
  if (t < 0 || t > n) throw std::invalid_argument("binomial index out of range");
  return log_factorial(n) - log_factorial(t) - log_factorial(n - t);
}

namespace detail {

// One doubly-infinite trapezoid pass for the double-exponential rules below.
template <class G>
double de_sum(G&& g, double h, double tmax) {
  KahanAccumulator acc;
  acc.add(g(0.0));
  for (double t = h; t <= tmax; t += h) {
    const double a = g(t);
    const double b = g(-t);
    if (std::isfinite(a)) acc.add(a);
    if (std::isfinite(b)) acc.add(b);
  }
  return acc.value();
}

}  // namespace detail

// tanh-sinh quadrature of f over the finite interval (a, b); tolerates
// integrable endpoint singularities.
template <class F>
double integrate_finite(F&& f, double a, double b, int max_level = 10) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double pi2 = 1.5707963267948966;
  auto g = [&](double t) {
    const double s = pi2 * std::sinh(t);
    const double x = mid + half * std::tanh(s);
    const double c = std::cosh(s);
    const double w = half * pi2 * std::cosh(t) / (c * c);
    if (x <= a || x >= b || w == 0.0) return 0.0;
    return w * f(x);
  };
  const double tmax = 4.6;
  double h = 1.0;
  double prev = h * detail::de_sum(g, h, tmax);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double cur = h * detail::de_sum(g, h, tmax);
    if (level >= 3 && std::abs(cur - prev) <= 1e-13 * (std::abs(cur) + 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

// exp-sinh quadrature of f over (0, +inf).
template <class F>
double integrate_half_line(F&& f, int max_level = 10) {
  const double pi2 = 1.5707963267948966;
  auto g = [&](double t) {
    const double x = std::exp(pi2 * std::sinh(t));
    const double w = pi2 * std::cosh(t) * x;
    if (!std::isfinite(x) || x == 0.0) return 0.0;
    return w * f(x);
  };
  const double tmax = 4.6;
  double h = 1.0;
  double prev = h * detail::de_sum(g, h, tmax);
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    double cur = h * detail::de_sum(g, h, tmax);
    if (level >= 3 && std::abs(cur - prev) <= 1e-13 * (std::abs(cur) + 1e-300)) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace seedbank
