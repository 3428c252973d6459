#pragma once

#include <cmath>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "hierlabel/labeling/contingency.hpp"

namespace hierlabel::labeling {

/// Closed-form 2x2 chi-square, (tp*tn - fn*fp)^2 * s / product of marginals.
/// Returns 0 when any marginal is empty.
inline double chi2_2x2(const ContingencyCells& c) {
  const double tp = static_cast<double>(c.tp), fp = static_cast<double>(c.fp);
  const double fn = static_cast<double>(c.fn), tn = static_cast<double>(c.tn);
  const double m1 = tp + fn, m2 = fp + tn, m3 = tp + fp, m4 = fn + tn;
  if (m1 <= 0 || m2 <= 0 || m3 <= 0 || m4 <= 0) return 0.0;
  const double d = tp * tn - fn * fp;
  // Stepwise division keeps intermediates in range for very large corpora.
  return d / m1 * d / m2 * static_cast<double>(c.s) / m3 / m4;
}

/// The four-term divergence between p = tp/(tp+fn) and q = (tp+fp)/N:
///   p log2 p - p log2 m + q log2 q - q log2 m,  m = (p + q) / 2,
/// where x * log2(...) with x = 0 contributes 0.
inline double jsd_2x2(const ContingencyCells& c) {
  const double node = static_cast<double>(c.tp + c.fn);
  const double all = static_cast<double>(c.tp + c.fp + c.fn + c.tn);
  if (node <= 0 || all <= 0) return 0.0;
  const double p = static_cast<double>(c.tp) / node;
  const double q = static_cast<double>(c.tp + c.fp) / all;
  const double m = 0.5 * (p + q);
  auto term = [m](double x) { return x > 0 ? x * std::log2(x) - x * std::log2(m) : 0.0; };
  return term(p) + term(q);
}

struct Chi2Result {
  double statistic = 0.0;
  std::size_t df = 0;
};

/// Pearson chi-square over the c x 2 table (child x {a_k, !a_k}) of node v,
/// expected cells from the marginals; cells with zero expectation add 0.
inline Chi2Result pearson_chi2_children(const corpus::NodeTermStats& s, NodeId v, TermId t) {
  const auto children = s.hierarchy().children(v);
  Chi2Result r;
  r.df = children.empty() ? 0 : children.size() - 1;
  const double total = static_cast<double>(s.total(v));
  const double col = static_cast<double>(s.freq(v, t));
  if (total <= 0 || col <= 0) return r;
  const double other = total - col;
  for (NodeId c : children) {
    const double row = static_cast<double>(s.total(c));
    const double obs = static_cast<double>(s.freq(c, t));
    const double e1 = col * row / total;
    const double e2 = other * row / total;
    if (e1 > 0) r.statistic += (obs - e1) * (obs - e1) / e1;
    if (e2 > 0) r.statistic += ((row - obs) - e2) * ((row - obs) - e2) / e2;
  }
  return r;
}

/// Upper-alpha critical value of the chi-square distribution.
inline double chi2_critical(double alpha, std::size_t df) {
  boost::math::chi_squared dist(static_cast<double>(df));
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

/// Critical value for testing independence across v's children (c - 1 df);
/// 0 for nodes with fewer than two children, which are never tested.
inline double children_critical(const corpus::NodeTermStats& s, NodeId v, double alpha) {
  const std::size_t c = s.child_count(v);
  return c < 2 ? 0.0 : chi2_critical(alpha, c - 1);
}

/// True when the independence hypothesis of term t across v's children is
/// rejected. Nodes with a single child never reject: their table is exactly
/// proportional.
inline bool independence_rejected(const corpus::NodeTermStats& s, NodeId v, TermId t, double critical,
                                  Chi2Shape shape) {
  const auto children = s.hierarchy().children(v);
  if (children.size() < 2) return false;
  if (shape == Chi2Shape::full_table) return pearson_chi2_children(s, v, t).statistic > critical;
  for (NodeId c : children) {
    if (chi2_2x2(contingency_popescul(s, v, c, t)) > critical) return true;
  }
  return false;
}

}  // namespace hierlabel::labeling
