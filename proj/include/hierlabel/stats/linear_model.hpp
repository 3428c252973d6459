#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "hierlabel/error.hpp"

namespace hierlabel::stats {

/// One categorical factor: level names and the level code of every row.
struct Factor {
  std::string name;
  std::vector<std::string> levels;
  std::vector<std::size_t> codes;
};

/// Estimates for one factor under sum-to-zero coding. means[j] is the
/// least-squares (adjusted) mean mu + effects[j].
struct FactorEstimates {
  std::string name;
  std::vector<std::string> levels;
  std::vector<double> effects;
  std::vector<double> means;
  std::vector<std::size_t> counts;
};

struct GlmFit {
  double grand_mean = 0.0;
  std::vector<FactorEstimates> factors;
  double rss = 0.0;
  double residual_variance = 0.0;
  std::size_t df_resid = 0;
  std::size_t n_obs = 0;

  const FactorEstimates& factor(const std::string& name) const {
    for (const auto& f : factors) {
      if (f.name == name) return f;
    }
    throw Error(ErrorKind::internal, "stats", name, "no such factor in fit");
  }
};

/// Least-squares fit of y ~ mu + sum of factor effects, each factor coded
/// sum-to-zero. A factor with a single level contributes no column and an
/// effect of 0. Throws when a level has no rows or the design is singular.
inline GlmFit fit_sum_to_zero(std::span<const double> y, const std::vector<Factor>& factors) {
  const std::size_t n = y.size();
  if (n == 0) throw input_error("stats", "", "no observations to fit");
  std::size_t p = 1;
  for (const Factor& f : factors) {
    if (f.codes.size() != n) throw Error(ErrorKind::internal, "stats", f.name, "factor length differs from data");
    std::vector<std::size_t> counts(f.levels.size(), 0);
    for (std::size_t c : f.codes) ++counts.at(c);
    for (std::size_t j = 0; j < counts.size(); ++j) {
      if (counts[j] == 0) throw input_error("stats", f.name + " " + f.levels[j], "factor level has no observations");
    }
    p += f.levels.size() - 1;
  }
  if (n < p) throw input_error("stats", "", "fewer observations than model parameters");

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  Eigen::VectorXd yv(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    yv(r) = y[i];
    x(r, 0) = 1.0;
    Eigen::Index col = 1;
    for (const Factor& f : factors) {
      const std::size_t last = f.levels.size() - 1;
      const std::size_t c = f.codes[i];
      for (std::size_t j = 0; j < last; ++j) x(r, col + static_cast<Eigen::Index>(j)) = c == last ? -1.0 : (c == j ? 1.0 : 0.0);
      col += static_cast<Eigen::Index>(last);
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < static_cast<Eigen::Index>(p)) {
    throw input_error("stats", "", "design matrix is rank deficient (confounded factors)");
  }
  const Eigen::VectorXd beta = qr.solve(yv);
  const Eigen::VectorXd resid = yv - x * beta;

  GlmFit fit;
  fit.n_obs = n;
  fit.grand_mean = beta(0);
  fit.rss = resid.squaredNorm();
  fit.df_resid = n - p;
  fit.residual_variance = fit.df_resid == 0 ? 0.0 : fit.rss / static_cast<double>(fit.df_resid);
  Eigen::Index col = 1;
  for (const Factor& f : factors) {
    FactorEstimates est;
    est.name = f.name;
    est.levels = f.levels;
    est.counts.assign(f.levels.size(), 0);
    for (std::size_t c : f.codes) ++est.counts[c];
    const std::size_t last = f.levels.size() - 1;
    double sum = 0.0;
    for (std::size_t j = 0; j < last; ++j) {
      est.effects.push_back(beta(col + static_cast<Eigen::Index>(j)));
      sum += est.effects.back();
    }
    est.effects.push_back(last == 0 ? 0.0 : -sum);
    col += static_cast<Eigen::Index>(last);
    for (double e : est.effects) est.means.push_back(fit.grand_mean + e);
    fit.factors.push_back(std::move(est));
  }
  return fit;
}

}  // namespace hierlabel::stats
