#pragma once

#include <algorithm>
#include <cstdint>
#include <string>

#include "hierlabel/corpus/node_stats.hpp"
#include "hierlabel/labeling/method.hpp"

namespace hierlabel::labeling {

/// 2x2 term/cluster table. For the parent/child table tp+fp+fn+tn == s; the
/// reference-collection table keeps fp+tn == s (see contingency_rcl).
struct ContingencyCells {
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;
  std::int64_t s = 0;

  bool operator==(const ContingencyCells&) const = default;
};

namespace detail {

inline std::int64_t as_signed(Count c) { return static_cast<std::int64_t>(c); }

inline void require_nonnegative(const ContingencyCells& c, NodeId v, TermId t) {
  if (c.tp < 0 || c.fp < 0 || c.fn < 0 || c.tn < 0 || c.s < 0) {
    throw Error(ErrorKind::internal, "labeling", "node " + std::to_string(v) + " term " + std::to_string(t),
                "negative contingency cell: corrupted node statistics");
  }
}

inline void require_child(const corpus::NodeTermStats& s, NodeId parent, NodeId child) {
  if (s.hierarchy().parent_or_self(child) != parent) {
    throw Error(ErrorKind::internal, "labeling", "node " + std::to_string(child),
                "not a direct child of node " + std::to_string(parent));
  }
}

}  // namespace detail

/// Child n_ij against its parent n_i:
///   tp = f_ij(a), fn = sum_t f_ij - tp, fp = f_i(a) - tp, tn = s - (tp+fn+fp), s = sum_t f_i.
inline ContingencyCells contingency_popescul(const corpus::NodeTermStats& s, NodeId parent, NodeId child, TermId t) {
  detail::require_child(s, parent, child);
  ContingencyCells c;
  c.s = detail::as_signed(s.total(parent));
  c.tp = detail::as_signed(s.freq(child, t));
  c.fn = detail::as_signed(s.total(child)) - c.tp;
  c.fp = detail::as_signed(s.freq(parent, t)) - c.tp;
  c.tn = c.s - (c.tp + c.fn + c.fp);
  detail::require_nonnegative(c, child, t);
  return c;
}

/// Node n_ij against its reference collection (parent subtree minus n_ij):
///   s = sum_t f_i - sum_t f_ij, tp = f_ij(a), fn = sum_t f_ij - tp,
///   fp = f_i(a) - f_ij(a), tn = s - fp.
/// RclFp::literal subtracts tp once more from fp (clamped at 0).
inline ContingencyCells contingency_rcl(const corpus::NodeTermStats& s, NodeId parent, NodeId node, TermId t,
                                        RclFp mode = RclFp::corrected) {
  detail::require_child(s, parent, node);
  ContingencyCells c;
  c.s = detail::as_signed(s.total(parent)) - detail::as_signed(s.total(node));
  c.tp = detail::as_signed(s.freq(node, t));
  c.fn = detail::as_signed(s.total(node)) - c.tp;
  c.fp = detail::as_signed(s.freq(parent, t)) - c.tp;
  if (c.fp < 0) {
    throw Error(ErrorKind::internal, "labeling", "node " + std::to_string(node) + " term " + std::to_string(t),
                "negative reference-collection frequency: corrupted node statistics");
  }
  if (mode == RclFp::literal) c.fp = std::max<std::int64_t>(0, c.fp - c.tp);
  c.tn = c.s - c.fp;
  detail::require_nonnegative(c, node, t);
  return c;
}

/// Cells used inside the HierRCL descendant sum: descendant g against its
/// direct parent q, with s fixed to the total of the labeled node's parent.
inline ContingencyCells contingency_hier_rcl(const corpus::NodeTermStats& s, std::int64_t s_total, NodeId g,
                                             Count f_g, Count f_q, RclFp mode) {
  ContingencyCells c;
  c.s = s_total;
  c.tp = detail::as_signed(f_g);
  c.fn = detail::as_signed(s.total(g)) - c.tp;
  c.fp = detail::as_signed(f_q) - c.tp;
  if (mode == RclFp::literal) c.fp = std::max<std::int64_t>(0, c.fp - c.tp);
  c.tn = c.s - (c.tp + c.fn + c.fp);
  if (c.tp < 0 || c.fn < 0 || c.fp < 0 || c.tn < 0) {
    throw Error(ErrorKind::internal, "labeling", "node " + std::to_string(g),
                "negative contingency cell: corrupted node statistics");
  }
  return c;
}

}  // namespace hierlabel::labeling
