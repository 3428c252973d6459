#pragma once

#include <span>
#include <vector>

#include "hierlabel/labeling/assignment.hpp"
#include "hierlabel/labeling/ranking.hpp"
#include "hierlabel/labeling/structural.hpp"
#include "hierlabel/util/parallel.hpp"

namespace hierlabel::labeling {

/// Independent per-node top-P selection for the twelve ranking methods.
/// Nodes are distributed over cfg.threads workers.
inline LabelAssignment select_flat_or_hier(MethodId method, const NodeTermStats& s, const LabelConfig& cfg) {
  RankingScorer scorer(s, method, cfg);
  LabelAssignment out{method, cfg.p_cap, std::vector<Label>(s.n_nodes())};
  std::vector<ScoreScratch> scratch(std::max<std::size_t>(1, cfg.threads));
  util::parallel_for(s.n_nodes(), cfg.threads, [&](std::size_t v, std::size_t worker) {
    out.nodes[v] = scorer.label_node(static_cast<NodeId>(v), scratch[worker]);
  });
  return out;
}

inline LabelAssignment select_labels(MethodId method, const NodeTermStats& s, const LabelConfig& cfg) {
  cfg.validate();
  switch (method) {
    case MethodId::PopesculUngar: return select_popescul_ungar(s, cfg);
    case MethodId::RLUM: return select_rlum(s, cfg);
    case MethodId::CFAverage: return select_cf_average(s, cfg);
    case MethodId::CFLeaveOneOut: return select_cf_leave_one_out(s, cfg);
    default: return select_flat_or_hier(method, s, cfg);
  }
}

/// Labels every requested method. Structural methods are sequential along the
/// tree, so parallelism is spread across methods first.
inline std::vector<LabelAssignment> select_all(std::span<const MethodId> methods, const NodeTermStats& s,
                                               const LabelConfig& cfg) {
  std::vector<LabelAssignment> out(methods.size());
  LabelConfig inner = cfg;
  inner.threads = std::max<std::size_t>(1, cfg.threads / std::max<std::size_t>(1, methods.size()));
  util::parallel_for(methods.size(), cfg.threads, [&](std::size_t i, std::size_t) {
    out[i] = select_labels(methods[i], s, inner);
  });
  return out;
}

}  // namespace hierlabel::labeling
