#pragma once

#include <cmath>

#include "hierlabel/corpus/node_stats.hpp"

namespace hierlabel::labeling {

using corpus::NodeTermStats;

/// MTWL_raw: cumulated frequency f_i(a_k).
inline double score_mtwl_raw(const NodeTermStats& s, NodeId v, TermId t) {
  return static_cast<double>(s.freq(v, t));
}

/// log(|D| / #(a_k, D)); terms absent from the collection score 0.
inline double score_idf_global(const NodeTermStats& s, TermId t) {
  const Count df = s.global_docfreq(t);
  if (df == 0) return 0.0;
  return std::log(static_cast<double>(s.n_docs()) / static_cast<double>(df));
}

/// log(|D_parent| / #(a_k, D_parent)) for node v; the root is its own parent.
inline double score_idf_local(const NodeTermStats& s, NodeId v, TermId t) {
  const NodeId p = s.hierarchy().parent_or_self(v);
  const Count df = s.docfreq(p, t);
  if (df == 0) return 0.0;
  return std::log(static_cast<double>(s.size(p)) / static_cast<double>(df));
}

/// Inverse cluster frequency:
///   exp(#(a_k, D_v) / |D_v|) * log(#children(parent) / #(a_k, parent) + 1),
/// 0 when no sibling cluster (v included) contains the term.
inline double score_icf(const NodeTermStats& s, NodeId v, TermId t) {
  const NodeId p = s.hierarchy().parent_or_self(v);
  const std::uint32_t with_term = s.child_support(p, t);
  if (with_term == 0) return 0.0;
  const double frac = static_cast<double>(s.docfreq(v, t)) / static_cast<double>(s.size(v));
  return std::exp(frac) *
         std::log(static_cast<double>(s.child_count(p)) / static_cast<double>(with_term) + 1.0);
}

enum class FlatScheme { MTWL_raw, MTWL_idf, ICWL_raw, ICWL_idf };

inline double score_flat(FlatScheme scheme, const NodeTermStats& s, NodeId v, TermId t) {
  const double f = score_mtwl_raw(s, v, t);
  if (f == 0.0) return 0.0;
  switch (scheme) {
    case FlatScheme::MTWL_raw: return f;
    case FlatScheme::MTWL_idf: return score_idf_global(s, t) * score_idf_local(s, v, t) * f;
    case FlatScheme::ICWL_raw: return score_icf(s, v, t) * f;
    case FlatScheme::ICWL_idf:
      return score_idf_global(s, t) * score_idf_local(s, v, t) * score_icf(s, v, t) * f;
  }
  return 0.0;
}

/// Sibling base cluster frequency of a term at node g: the fraction of g's
/// parent's direct sub-clusters that contain it (root: its own children).
inline double sibling_cf(const NodeTermStats& s, NodeId g, TermId t) {
  const NodeId q = s.hierarchy().parent_or_self(g);
  const std::size_t c = s.child_count(q);
  if (c == 0) return 0.0;
  return static_cast<double>(s.child_support(q, t)) / static_cast<double>(c);
}

/// Path-length weighted descendant sum
///   w_v(a_k) = sum_g (1 / e(v, g)) * cf_g(a_k) * value(g, a_k)
/// over all proper descendants g of v. Leaves have no descendants and get 0.
template <typename ValueFn>
double hier_weight(const NodeTermStats& s, NodeId v, TermId t, ValueFn&& value) {
  double w = 0.0;
  s.hierarchy().for_each_descendant(v, [&](NodeId g, std::uint32_t e) {
    const double cf = sibling_cf(s, g, t);
    if (cf == 0.0) return;
    w += cf * value(g, t) / static_cast<double>(e);
  });
  return w;
}

}  // namespace hierlabel::labeling
