#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "hierlabel/labeling/assignment.hpp"
#include "hierlabel/labeling/scores.hpp"
#include "hierlabel/labeling/statistics.hpp"

namespace hierlabel::labeling {

namespace detail {

inline bool contains(const Label& label, TermId t) {
  return std::any_of(label.begin(), label.end(), [t](const LabelEntry& e) { return e.term == t; });
}

/// Structural methods rank their selected terms by node frequency.
inline Label rank_by_frequency(const NodeTermStats& s, NodeId v, const std::vector<TermId>& terms, std::size_t p) {
  std::vector<ScoredTerm> scored;
  scored.reserve(terms.size());
  for (TermId t : terms) {
    const Count f = s.freq(v, t);
    scored.push_back({t, static_cast<double>(f), f});
  }
  return select_topk(std::move(scored), p);
}

}  // namespace detail

/// Popescul & Ungar: top-down from the root. A term goes to internal node v
/// when (I) no ancestor label holds it, (II) every child has f >= min_freq,
/// and (III) independence across the children is not rejected at alpha.
/// Leaves optionally receive their most frequent terms not used on their path.
inline LabelAssignment select_popescul_ungar(const NodeTermStats& s, const LabelConfig& cfg) {
  const auto& h = s.hierarchy();
  LabelAssignment out{MethodId::PopesculUngar, cfg.p_cap, std::vector<Label>(h.size())};
  // Sorted terms used by labels on the path root..parent(v).
  std::vector<std::vector<TermId>> path_terms(h.size());
  for (NodeId v : h.preorder()) {
    if (!h.is_root(v)) {
      const NodeId p = *h.parent(v);
      auto& mine = path_terms[v];
      mine = path_terms[p];
      for (const LabelEntry& e : out.nodes[p]) mine.push_back(e.term);
      std::sort(mine.begin(), mine.end());
    }
    const auto& used = path_terms[v];
    auto on_path = [&](TermId t) { return std::binary_search(used.begin(), used.end(), t); };

    std::vector<TermId> selected;
    if (h.is_leaf(v)) {
      if (!cfg.popescul_leaf_fill) continue;
      for (const auto& e : s.support(v)) {
        if (!on_path(e.term)) selected.push_back(e.term);
      }
    } else {
      const auto children = h.children(v);
      const double critical = children_critical(s, v, cfg.alpha);
      for (const auto& e : s.support(v)) {
        if (e.child_support != children.size() || on_path(e.term)) continue;
        const bool frequent = std::all_of(children.begin(), children.end(), [&](NodeId c) {
          return static_cast<double>(s.freq(c, e.term)) >= cfg.popescul_min_freq;
        });
        if (!frequent) continue;
        if (independence_rejected(s, v, e.term, critical, cfg.chi2_shape)) continue;
        selected.push_back(e.term);
      }
    }
    out.nodes[v] = detail::rank_by_frequency(s, v, selected, cfg.p_cap);
  }
  return out;
}

/// RLUM, bottom-up. Leaves start from all their terms. An internal node takes
/// the terms that (I) occur in every child and (II) are independent of the
/// children (tested only when some child frequency reaches big_threshold);
/// its label is then removed from every direct child's label. Empty-label
/// nodes are kept (no pruning).
inline LabelAssignment select_rlum(const NodeTermStats& s, const LabelConfig& cfg) {
  const auto& h = s.hierarchy();
  LabelAssignment out{MethodId::RLUM, cfg.p_cap, std::vector<Label>(h.size())};
  auto pre = h.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const NodeId v = *it;
    std::vector<TermId> selected;
    if (h.is_leaf(v)) {
      for (const auto& e : s.support(v)) selected.push_back(e.term);
      out.nodes[v] = detail::rank_by_frequency(s, v, selected, cfg.p_cap);
      continue;
    }
    const auto children = h.children(v);
    const double critical = children_critical(s, v, cfg.alpha);
    for (const auto& e : s.support(v)) {
      if (e.child_support != children.size()) continue;
      Count max_child = 0;
      for (NodeId c : children) max_child = std::max(max_child, s.freq(c, e.term));
      if (static_cast<double>(max_child) < cfg.big_threshold) continue;
      if (independence_rejected(s, v, e.term, critical, cfg.chi2_shape)) continue;
      selected.push_back(e.term);
    }
    out.nodes[v] = detail::rank_by_frequency(s, v, selected, cfg.p_cap);
    for (NodeId c : children) {
      std::erase_if(out.nodes[c], [&](const LabelEntry& e) { return detail::contains(out.nodes[v], e.term); });
    }
  }
  return out;
}

/// Leaf clustering F-measure: harmonic mean of
///   CRecall = f_leaf(a) / f(a)   and   CPrecision = f_leaf(a) / sum_t f_leaf(a_t).
inline double cf_measure_leaf(const NodeTermStats& s, NodeId leaf, TermId t) {
  const double f = static_cast<double>(s.freq(leaf, t));
  const double coll = static_cast<double>(s.collection_freq(t));
  const double total = static_cast<double>(s.total(leaf));
  if (f <= 0 || coll <= 0 || total <= 0) return 0.0;
  const double recall = f / coll;
  const double precision = f / total;
  return 2.0 * recall * precision / (recall + precision);
}

namespace detail {

using SparseScores = std::vector<std::pair<TermId, double>>;  // sorted by term

inline SparseScores leaf_cf_scores(const NodeTermStats& s, NodeId leaf) {
  SparseScores out;
  for (const auto& e : s.support(leaf)) out.push_back({e.term, cf_measure_leaf(s, leaf, e.term)});
  return out;
}

inline Label top_by_scores(const NodeTermStats& s, NodeId v, const SparseScores& scores, std::size_t p) {
  std::vector<ScoredTerm> scored;
  scored.reserve(scores.size());
  for (const auto& [t, x] : scores) scored.push_back({t, x, s.freq(v, t)});
  return select_topk(std::move(scored), p);
}

}  // namespace detail

/// CFAverage: internal-node CF is the mean of the direct children's CF,
/// propagated bottom-up from the leaf CF-measures.
inline LabelAssignment select_cf_average(const NodeTermStats& s, const LabelConfig& cfg) {
  const auto& h = s.hierarchy();
  LabelAssignment out{MethodId::CFAverage, cfg.p_cap, std::vector<Label>(h.size())};
  std::vector<detail::SparseScores> cf(h.size());
  auto pre = h.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const NodeId v = *it;
    if (h.is_leaf(v)) {
      cf[v] = detail::leaf_cf_scores(s, v);
    } else {
      const auto children = h.children(v);
      const double c = static_cast<double>(children.size());
      std::unordered_map<TermId, double> sum;
      for (NodeId ch : children) {
        for (const auto& [t, x] : cf[ch]) sum[t] += x;
      }
      // Per-term sums accumulate in child order, so the result is deterministic.
      for (const auto& e : s.support(v)) {
        auto f = sum.find(e.term);
        cf[v].push_back({e.term, f == sum.end() ? 0.0 : f->second / c});
      }
      for (NodeId ch : children) detail::SparseScores().swap(cf[ch]);  // children no longer needed
    }
    out.nodes[v] = detail::top_by_scores(s, v, cf[v], cfg.p_cap);
  }
  return out;
}

/// CF-measure of internal node v under leave-one-out: recall against the
/// term mass of every other node at the children's level,
///   CRecall = f_v(a) / (sum_{u at level(v)+1} f_u(a) - sum_j f_vj(a)),
/// precision f_v(a) / sum_t f_v(a_t). A non-positive denominator scores 0.
inline double cf_leave_one_out_internal(const NodeTermStats& s, NodeId v, TermId t, Count level_mass) {
  const auto& h = s.hierarchy();
  Count own = 0;
  for (NodeId c : h.children(v)) own += s.freq(c, t);
  const double f = static_cast<double>(s.freq(v, t));
  const double denom = static_cast<double>(level_mass) - static_cast<double>(own);
  const double total = static_cast<double>(s.total(v));
  if (denom <= 0 || f <= 0 || total <= 0) return 0.0;
  const double recall = f / denom;
  const double precision = f / total;
  return 2.0 * recall * precision / (recall + precision);
}

inline LabelAssignment select_cf_leave_one_out(const NodeTermStats& s, const LabelConfig& cfg) {
  const auto& h = s.hierarchy();
  LabelAssignment out{MethodId::CFLeaveOneOut, cfg.p_cap, std::vector<Label>(h.size())};
  // Term mass of every level.
  std::vector<std::unordered_map<TermId, Count>> level_mass(h.max_level() + 1);
  for (NodeId v : h.preorder()) {
    for (const auto& e : s.support(v)) level_mass[h.level(v)][e.term] += e.freq;
  }
  for (NodeId v : h.preorder()) {
    if (h.is_leaf(v)) {
      out.nodes[v] = detail::top_by_scores(s, v, detail::leaf_cf_scores(s, v), cfg.p_cap);
      continue;
    }
    const auto& mass = level_mass[h.level(v) + 1];
    detail::SparseScores scores;
    for (const auto& e : s.support(v)) {
      auto m = mass.find(e.term);
      scores.push_back({e.term, cf_leave_one_out_internal(s, v, e.term, m == mass.end() ? 0 : m->second)});
    }
    out.nodes[v] = detail::top_by_scores(s, v, scores, cfg.p_cap);
  }
  return out;
}

}  // namespace hierlabel::labeling
