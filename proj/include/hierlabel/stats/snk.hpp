#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hierlabel/stats/linear_model.hpp"
#include "hierlabel/stats/studentized_range.hpp"

namespace hierlabel::stats {

struct SnkEntry {
  std::string level;
  double mean = 0.0;
  std::size_t count = 0;
  std::string letters;
};

/// Levels sorted by adjusted mean, highest first, with their letter groups.
struct SnkGrouping {
  std::vector<SnkEntry> entries;
};

/// Memoized quantiles, safe to share across threads.
class QuantileCache {
 public:
  double get(double alpha, int k, double df) {
    const auto key = std::make_tuple(alpha, k, df);
    {
      std::lock_guard lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    const double q = studentized_range_quantile(alpha, k, df);
    std::lock_guard lock(mu_);
    memo_.emplace(key, q);
    return q;
  }

 private:
  std::mutex mu_;
  std::map<std::tuple<double, int, double>, double> memo_;
};

/// a..z, then A..Z, then [52], [53], ...
inline std::string group_letter(std::size_t i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  if (i < 52) return std::string(1, static_cast<char>('A' + (i - 26)));
  return "[" + std::to_string(i) + "]";
}

/// Student-Newman-Keuls stepwise comparison of the means of one factor.
/// Spans of p consecutive sorted means are tested from the widest down
/// against q(alpha, p, df) * sqrt(V / n~), n~ the harmonic mean of the group
/// sizes; a span inside a non-significant span is not tested. Each maximal
/// non-significant span and each mean outside all of them gets a letter.
/// With zero residual variance only equal means share a letter.
inline SnkGrouping snk_compare(const GlmFit& fit, const std::string& factor, double alpha, QuantileCache* cache = nullptr) {
  const FactorEstimates& est = fit.factor(factor);
  const std::size_t k = est.levels.size();
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return est.means[a] > est.means[b]; });
  std::vector<double> m(k);
  for (std::size_t i = 0; i < k; ++i) m[i] = est.means[order[i]];

  double inv_sum = 0.0;
  for (std::size_t c : est.counts) inv_sum += 1.0 / static_cast<double>(c);
  const double n_tilde = static_cast<double>(k) / inv_sum;
  const double se = std::sqrt(fit.residual_variance / n_tilde);
  const bool degenerate = !(fit.residual_variance > 0) || fit.df_resid == 0;

  QuantileCache local;
  QuantileCache& qc = cache ? *cache : local;
  std::vector<std::pair<std::size_t, std::size_t>> homogeneous;
  auto covered = [&](std::size_t i, std::size_t j) {
    return std::any_of(homogeneous.begin(), homogeneous.end(),
                       [&](const auto& s) { return s.first <= i && j <= s.second; });
  };
  for (std::size_t p = k; p >= 2; --p) {
    for (std::size_t i = 0; i + p <= k; ++i) {
      const std::size_t j = i + p - 1;
      if (covered(i, j)) continue;
      const double crit =
          degenerate ? 0.0 : qc.get(alpha, static_cast<int>(p), static_cast<double>(fit.df_resid)) * se;
      if (!(m[i] - m[j] > crit)) homogeneous.emplace_back(i, j);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!covered(i, i)) homogeneous.emplace_back(i, i);
  }
  std::sort(homogeneous.begin(), homogeneous.end());

  SnkGrouping out;
  for (std::size_t i = 0; i < k; ++i) out.entries.push_back({est.levels[order[i]], m[i], est.counts[order[i]], ""});
  for (std::size_t g = 0; g < homogeneous.size(); ++g) {
    for (std::size_t i = homogeneous[g].first; i <= homogeneous[g].second; ++i) out.entries[i].letters += group_letter(g);
  }
  return out;
}

}  // namespace hierlabel::stats
