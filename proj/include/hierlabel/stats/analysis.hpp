#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hierlabel/queryeval/evaluation.hpp"
#include "hierlabel/stats/linear_model.hpp"
#include "hierlabel/stats/snk.hpp"
#include "hierlabel/util/csv.hpp"
#include "hierlabel/util/parallel.hpp"
#include "hierlabel/util/text.hpp"

namespace hierlabel::stats {

using queryeval::Measure;
using queryeval::ObservationTable;
using queryeval::QueryKind;

inline const std::string kLevelFactor = "level";
inline const std::string kMethodFactor = "method";

namespace detail {

/// Codes rows of one (measure, kind) slice: levels ascending, methods in
/// first-seen order.
struct Slice {
  std::vector<double> y;
  Factor level{kLevelFactor, {}, {}};
  Factor method{kMethodFactor, {}, {}};
};

inline Slice slice(const ObservationTable& table, Measure measure, QueryKind kind,
                   std::optional<labeling::MethodId> only = std::nullopt) {
  Slice s;
  std::map<std::uint32_t, std::size_t> level_code;
  std::vector<labeling::MethodId> methods;
  for (const auto& o : table) {
    if (o.kind != kind || (only && o.method != *only)) continue;
    level_code.emplace(o.level, 0);
    if (std::find(methods.begin(), methods.end(), o.method) == methods.end()) methods.push_back(o.method);
  }
  std::size_t next = 0;
  for (auto& [lvl, code] : level_code) {
    code = next++;
    s.level.levels.push_back(std::to_string(lvl));
  }
  for (auto m : methods) s.method.levels.emplace_back(labeling::method_name(m));
  for (const auto& o : table) {
    if (o.kind != kind || (only && o.method != *only)) continue;
    s.y.push_back(o.value(measure));
    s.level.codes.push_back(level_code.at(o.level));
    s.method.codes.push_back(static_cast<std::size_t>(std::find(methods.begin(), methods.end(), o.method) - methods.begin()));
  }
  return s;
}

}  // namespace detail

/// m ~ mu + h + l over one measure and query kind.
inline GlmFit fit_additive_model(const ObservationTable& table, Measure measure, QueryKind kind) {
  auto s = detail::slice(table, measure, kind);
  return fit_sum_to_zero(s.y, {s.level, s.method});
}

/// m ~ mu + h over one method's rows.
inline GlmFit fit_level_model(const ObservationTable& table, labeling::MethodId method, Measure measure, QueryKind kind) {
  auto s = detail::slice(table, measure, kind, method);
  if (s.level.levels.size() < 2) {
    throw input_error("stats", std::string(labeling::method_name(method)), "level model needs at least two levels");
  }
  return fit_sum_to_zero(s.y, {s.level});
}

struct MeasureAnalysis {
  Measure measure = Measure::f;
  QueryKind kind = QueryKind::specific;
  GlmFit fit;
  SnkGrouping by_method, by_level;
  std::vector<std::pair<labeling::MethodId, GlmFit>> level_fits;
};

/// Both models and both SNK groupings for every (kind, measure) pair.
inline std::vector<MeasureAnalysis> analyze(const ObservationTable& table, double alpha, std::size_t threads = 1) {
  std::vector<labeling::MethodId> methods;
  for (const auto& o : table) {
    if (std::find(methods.begin(), methods.end(), o.method) == methods.end()) methods.push_back(o.method);
  }
  std::vector<MeasureAnalysis> out;
  for (QueryKind k : queryeval::kQueryKinds) {
    for (Measure m : queryeval::kMeasures) {
      MeasureAnalysis a;
      a.measure = m;
      a.kind = k;
      out.push_back(std::move(a));
    }
  }
  QuantileCache cache;
  util::parallel_for(out.size(), threads, [&](std::size_t i, std::size_t) {
    MeasureAnalysis& a = out[i];
    a.fit = fit_additive_model(table, a.measure, a.kind);
    a.by_method = snk_compare(a.fit, kMethodFactor, alpha, &cache);
    a.by_level = snk_compare(a.fit, kLevelFactor, alpha, &cache);
    for (auto method : methods) a.level_fits.emplace_back(method, fit_level_model(table, method, a.measure, a.kind));
  });
  return out;
}

inline std::string slice_name(const MeasureAnalysis& a) {
  return std::string(queryeval::measure_name(a.measure)) + "_" + std::string(queryeval::kind_name(a.kind));
}

inline std::string caption(const MeasureAnalysis& a, double alpha) {
  return "# measure=" + std::string(queryeval::measure_name(a.measure)) + " kind=" +
         std::string(queryeval::kind_name(a.kind)) + " n=" + std::to_string(a.fit.n_obs) +
         " df_r=" + std::to_string(a.fit.df_resid) + " residual_variance=" + util::fmt6(a.fit.residual_variance) +
         " grand_mean=" + util::fmt6(a.fit.grand_mean) + " alpha=" + util::fmt6(alpha) + "\n";
}

inline std::string format_grouping(const MeasureAnalysis& a, const SnkGrouping& g, const std::string& key, double alpha) {
  std::string out = caption(a, alpha);
  out += util::csv_row({key, "adjusted_mean", "letters"});
  for (const auto& e : g.entries) out += util::csv_row({e.level, util::fmt6(e.mean), e.letters});
  return out;
}

/// method,adjusted_mean,letters with the fit caption on top.
inline std::string format_method_report(const MeasureAnalysis& a, double alpha) {
  return format_grouping(a, a.by_method, "method", alpha);
}

inline std::string format_level_report(const MeasureAnalysis& a, double alpha) {
  return format_grouping(a, a.by_level, "level", alpha);
}

/// method,level,mean from each method's level model.
inline std::string format_level_means(const MeasureAnalysis& a) {
  std::string out = util::csv_row({"method", "level", "mean"});
  for (const auto& [method, fit] : a.level_fits) {
    const auto& lv = fit.factor(kLevelFactor);
    for (std::size_t j = 0; j < lv.levels.size(); ++j) {
      out += util::csv_row({std::string(labeling::method_name(method)), lv.levels[j], util::fmt6(lv.means[j])});
    }
  }
  return out;
}

/// Two-column gnuplot data: level, mean, sorted by level.
inline std::string format_plot_data(labeling::MethodId method, const MeasureAnalysis& a, const GlmFit& fit) {
  std::string out = "# " + std::string(labeling::method_name(method)) + " " + slice_name(a) + "\n# level mean\n";
  const auto& lv = fit.factor(kLevelFactor);
  for (std::size_t j = 0; j < lv.levels.size(); ++j) out += lv.levels[j] + " " + util::fmt6(lv.means[j]) + "\n";
  return out;
}

}  // namespace hierlabel::stats
