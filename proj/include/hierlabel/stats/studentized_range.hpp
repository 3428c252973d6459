#pragma once

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include "hierlabel/error.hpp"

namespace hierlabel::stats {

inline constexpr double kInfiniteDf = std::numeric_limits<double>::infinity();

namespace detail {

using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;

/// P(range of k standard normals <= w).
inline double normal_range_cdf(double w, int k) {
  if (w <= 0) return 0.0;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  auto f = [&](double z) {
    const double phi = std::exp(-0.5 * z * z) * 0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2;
    const double band = 0.5 * (std::erfc(-z * inv_sqrt2) - std::erfc(-(z - w) * inv_sqrt2));
    return phi * std::pow(band, k - 1);
  };
  return k * Quadrature::integrate(f, -9.0, 9.0 + w, 15, 1e-12);
}

}  // namespace detail

/// P(Q <= q) for the studentized range with k means and df degrees of
/// freedom; df = kInfiniteDf gives the normal range.
inline double studentized_range_cdf(double q, int k, double df) {
  if (q <= 0) return 0.0;
  if (std::isinf(df)) return detail::normal_range_cdf(q, k);
  // s = sqrt(chi2_df / df) has density c * s^(df-1) * exp(-df s^2 / 2).
  const boost::math::chi_squared chi(df);
  const double tail = 1e-15;
  const double lo = std::sqrt(boost::math::quantile(chi, tail) / df);
  const double hi = std::sqrt(boost::math::quantile(boost::math::complement(chi, tail)) / df);
  const double log_c = 0.5 * df * std::log(df) - std::lgamma(0.5 * df) - (0.5 * df - 1.0) * std::log(2.0);
  auto f = [&](double s) {
    if (s <= 0) return 0.0;
    const double dens = std::exp(log_c + (df - 1.0) * std::log(s) - 0.5 * df * s * s);
    return dens * detail::normal_range_cdf(q * s, k);
  };
  return detail::Quadrature::integrate(f, lo, hi, 15, 1e-11);
}

/// Upper-alpha quantile of the studentized range.
inline double studentized_range_quantile(double alpha, int k, double df) {
  if (!(alpha > 0 && alpha < 1) || k < 2 || !(df >= 1)) {
    throw Error(ErrorKind::config, "stats",
                "alpha=" + std::to_string(alpha) + " k=" + std::to_string(k) + " df=" + std::to_string(df),
                "studentized range quantile needs 0 < alpha < 1, k >= 2, df >= 1");
  }
  const auto excess = [&](double q) { return (1.0 - studentized_range_cdf(q, k, df)) - alpha; };
  double hi = 4.0;
  while (excess(hi) > 0) {
    hi *= 2;
    if (hi > 1e5) {
      throw Error(ErrorKind::numerical, "stats", "alpha=" + std::to_string(alpha) + " k=" + std::to_string(k),
                  "studentized range quantile could not be bracketed");
    }
  }
  std::uintmax_t iters = 200;
  const auto [a, b] =
      boost::math::tools::toms748_solve(excess, 0.0, hi, 1.0 - alpha, excess(hi), boost::math::tools::eps_tolerance<double>(40), iters);
  if (iters >= 200) {
    throw Error(ErrorKind::numerical, "stats",
                "alpha=" + std::to_string(alpha) + " k=" + std::to_string(k) + " df=" + std::to_string(df),
                "studentized range root finder did not converge (bracket " + std::to_string(a) + ", " +
                    std::to_string(b) + ")");
  }
  return 0.5 * (a + b);
}

}  // namespace hierlabel::stats
