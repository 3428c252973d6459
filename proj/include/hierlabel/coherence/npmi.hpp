#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hierlabel/coherence/counts.hpp"
#include "hierlabel/labeling/assignment.hpp"
#include "hierlabel/util/csv.hpp"
#include "hierlabel/util/parallel.hpp"

namespace hierlabel::coherence {

enum class Aggregate { sum, mean };

inline std::optional<Aggregate> parse_aggregate(std::string_view s) {
  if (s == "sum") return Aggregate::sum;
  if (s == "mean") return Aggregate::mean;
  return std::nullopt;
}

struct NpmiOptions {
  double epsilon = 0.0;  // added to P(a,b) when > 0
  Aggregate aggregate = Aggregate::sum;
};

/// log(P(a,b) / (P(a) P(b))) / -log P(a,b), in [-1, 1]. Absent joint gives
/// -1 and P(a,b) = 1 gives 1; a term absent from the reference gives 0.
inline double npmi_from_counts(std::uint64_t n, std::uint64_t ca, std::uint64_t cb, std::uint64_t cab,
                               double epsilon = 0.0) {
  if (ca == 0 || cb == 0) return 0.0;
  const double N = static_cast<double>(n);
  const double pa = static_cast<double>(ca) / N, pb = static_cast<double>(cb) / N;
  double pab = static_cast<double>(cab) / N;
  if (epsilon > 0) {
    pab += epsilon;
  } else {
    if (cab == 0) return -1.0;
    if (cab == n) return 1.0;
  }
  if (pab >= 1.0) return 1.0;
  const double v = std::log(pab / (pa * pb)) / -std::log(pab);
  return std::clamp(v, -1.0, 1.0);
}

inline double npmi(const CooccurrenceCounts& c, TermId a, TermId b, double epsilon = 0.0) {
  // Canonical argument order keeps the value bit-identical under swapping.
  if (a > b) std::swap(a, b);
  return npmi_from_counts(c.n_windows, c.unary[a], c.unary[b], c.joint(a, b), epsilon);
}

struct LabelCoherence {
  double oc = 0.0;
  std::size_t missing_terms = 0;  // label terms never seen in the reference
};

/// Sum (or mean) of npmi over all unordered pairs of the top min(P, |label|)
/// terms; 0 for fewer than two terms.
inline LabelCoherence oc_npmi(const CooccurrenceCounts& c, std::span<const TermId> label, std::size_t p_cap,
                              const NpmiOptions& opt = {}) {
  LabelCoherence out;
  const std::size_t n = std::min(p_cap, label.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (c.unary[label[i]] == 0) ++out.missing_terms;
  }
  if (n < 2) return out;
  // Summed in canonical pair order so permuting the label cannot change the result.
  std::vector<TermId> terms(label.begin(), label.begin() + static_cast<std::ptrdiff_t>(n));
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) total += npmi(c, terms[i], terms[j], opt.epsilon);
  }
  out.oc = opt.aggregate == Aggregate::mean ? total / static_cast<double>(n * (n - 1) / 2) : total;
  return out;
}

/// Linear interpolation between order statistics at probability q.
inline double quantile_type7(std::vector<double> values, double q) {
  if (values.empty()) throw Error(ErrorKind::internal, "coherence", "", "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= values.size()) return values.back();
  return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

struct NodeCoherence {
  labeling::MethodId method = labeling::MethodId::MTWL_raw;
  NodeId node = 0;
  double oc = 0.0;
  std::size_t missing_terms = 0;
};

struct MethodCoherence {
  labeling::MethodId method = labeling::MethodId::MTWL_raw;
  double upper_quartile = 0.0;
  double maximum = 0.0;
};

struct CoherenceReport {
  std::vector<NodeCoherence> nodes;     // by method (input order), then node id
  std::vector<MethodCoherence> methods; // by upper quartile, highest first
};

/// Upper quartile and maximum of each method's per-node values, zeros included.
inline std::vector<MethodCoherence> summarize_coherence(const std::vector<NodeCoherence>& nodes) {
  std::vector<labeling::MethodId> order;
  for (const auto& n : nodes) {
    if (std::find(order.begin(), order.end(), n.method) == order.end()) order.push_back(n.method);
  }
  std::vector<MethodCoherence> out;
  for (auto m : order) {
    std::vector<double> v;
    for (const auto& n : nodes) {
      if (n.method == m) v.push_back(n.oc);
    }
    out.push_back({m, quantile_type7(v, 0.75), *std::max_element(v.begin(), v.end())});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const MethodCoherence& a, const MethodCoherence& b) { return a.upper_quartile > b.upper_quartile; });
  return out;
}

/// Every unordered pair any label needs, for restricted counting.
inline std::unordered_set<std::uint64_t> label_pairs(std::span<const labeling::LabelAssignment> all, std::size_t p_cap) {
  std::unordered_set<std::uint64_t> pairs;
  for (const auto& a : all) {
    for (const auto& l : a.nodes) {
      const std::size_t n = std::min(p_cap, l.size());
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.insert(pair_key(l[i].term, l[j].term));
      }
    }
  }
  return pairs;
}

inline CoherenceReport score_labels(const CooccurrenceCounts& c, std::span<const labeling::LabelAssignment> all,
                                    std::size_t p_cap, const NpmiOptions& opt = {}, std::size_t threads = 1) {
  CoherenceReport r;
  std::vector<std::pair<std::size_t, NodeId>> jobs;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (NodeId v = 0; v < all[i].nodes.size(); ++v) jobs.emplace_back(i, v);
  }
  r.nodes.resize(jobs.size());
  util::parallel_for(jobs.size(), threads, [&](std::size_t j, std::size_t) {
    const auto [i, v] = jobs[j];
    std::vector<TermId> terms;
    for (const auto& e : all[i].nodes[v]) terms.push_back(e.term);
    const auto lc = oc_npmi(c, terms, p_cap, opt);
    r.nodes[j] = {all[i].method, v, lc.oc, lc.missing_terms};
  });
  r.methods = summarize_coherence(r.nodes);
  return r;
}

inline std::string format_coherence(const CoherenceReport& r) {
  std::string out = util::csv_row({"method", "node_id", "oc", "missing_terms"});
  for (const auto& n : r.nodes) {
    out += util::csv_row({std::string(labeling::method_name(n.method)), std::to_string(n.node), util::fmt6(n.oc),
                          std::to_string(n.missing_terms)});
  }
  return out;
}

inline std::string format_coherence_summary(const CoherenceReport& r) {
  std::string out = util::csv_row({"method", "upper_quartile", "maximum"});
  for (const auto& m : r.methods) {
    out += util::csv_row(
        {std::string(labeling::method_name(m.method)), util::fmt6(m.upper_quartile), util::fmt6(m.maximum)});
  }
  return out;
}

}  // namespace hierlabel::coherence
