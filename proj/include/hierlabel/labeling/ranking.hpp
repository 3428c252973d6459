#pragma once

#include <vector>

#include "hierlabel/labeling/assignment.hpp"
#include "hierlabel/labeling/scores.hpp"
#include "hierlabel/labeling/statistics.hpp"

namespace hierlabel::labeling {

/// Reusable dense accumulator sized to the vocabulary; one per worker.
struct ScoreScratch {
  std::vector<double> acc;
  std::vector<TermId> touched;
  std::vector<unsigned char> seen;

  void reset_for(std::size_t n_terms) {
    if (acc.size() != n_terms) {
      acc.assign(n_terms, 0.0);
      seen.assign(n_terms, 0);
    }
    touched.clear();
  }
  void add(TermId t, double x) {
    if (!seen[t]) {
      seen[t] = 1;
      touched.push_back(t);
    }
    acc[t] += x;
  }
  void clear() {
    for (TermId t : touched) {
      acc[t] = 0.0;
      seen[t] = 0;
    }
    touched.clear();
  }
};

/// Scores every candidate term of a node for one of the twelve ranking
/// methods. Terms outside the returned list score 0.
class RankingScorer {
 public:
  RankingScorer(const NodeTermStats& stats, MethodId method, const LabelConfig& config)
      : stats_(stats), method_(method), config_(config) {
    if (!is_ranking_method(method)) {
      throw Error(ErrorKind::internal, "labeling", std::string(method_name(method)), "not a ranking method");
    }
  }

  std::vector<ScoredTerm> score_node(NodeId v, ScoreScratch& scratch) const {
    switch (method_) {
      case MethodId::MTWL_raw: return flat(v, FlatScheme::MTWL_raw);
      case MethodId::MTWL_idf: return flat(v, FlatScheme::MTWL_idf);
      case MethodId::ICWL_raw: return flat(v, FlatScheme::ICWL_raw);
      case MethodId::ICWL_idf: return flat(v, FlatScheme::ICWL_idf);
      case MethodId::RCL_chi2:
      case MethodId::RCL_jsd: return rcl(v);
      case MethodId::HierMTWL_raw:
      case MethodId::HierMTWL_idf:
      case MethodId::HierICWL_raw:
      case MethodId::HierICWL_idf: return hier_frequency(v, scratch);
      case MethodId::HierRCL_chi2:
      case MethodId::HierRCL_jsd: return hier_rcl(v, scratch);
      default: break;
    }
    return {};
  }

  Label label_node(NodeId v, ScoreScratch& scratch) const {
    return select_topk(score_node(v, scratch), config_.p_cap);
  }

 private:
  std::vector<ScoredTerm> flat(NodeId v, FlatScheme scheme) const {
    std::vector<ScoredTerm> out;
    const auto support = stats_.support(v);
    out.reserve(support.size());
    for (const auto& e : support) out.push_back({e.term, score_flat(scheme, stats_, v, e.term), e.freq});
    return out;
  }

  // Candidates are the parent's support: a term absent from v but present in
  // its reference collection still gets a positive statistic.
  std::vector<ScoredTerm> rcl(NodeId v) const {
    const NodeId p = stats_.hierarchy().parent_or_self(v);
    std::vector<ScoredTerm> out;
    const auto support = stats_.support(p);
    out.reserve(support.size());
    for (const auto& e : support) {
      const ContingencyCells cells = contingency_rcl(stats_, p, v, e.term, config_.rcl_fp);
      const double score = method_ == MethodId::RCL_chi2 ? chi2_2x2(cells) : jsd_2x2(cells);
      out.push_back({e.term, score, static_cast<Count>(cells.tp)});
    }
    return out;
  }

  // The per-descendant value of the four frequency schemes factors into the
  // descendant frequency f_g times node-level weights of v itself.
  std::vector<ScoredTerm> hier_frequency(NodeId v, ScoreScratch& scratch) const {
    const auto& h = stats_.hierarchy();
    scratch.reset_for(stats_.n_terms());
    h.for_each_descendant(v, [&](NodeId g, std::uint32_t e) {
      const NodeId q = h.parent_or_self(g);
      const double per_child = 1.0 / static_cast<double>(stats_.child_count(q));
      const auto q_support = stats_.support(q);
      auto q_it = q_support.begin();
      for (const auto& ge : stats_.support(g)) {
        while (q_it->term < ge.term) ++q_it;  // support(g) is a subset of support(q)
        const double cf = q_it->child_support * per_child;
        scratch.add(ge.term, cf * static_cast<double>(ge.freq) / static_cast<double>(e));
      }
    });
    std::vector<ScoredTerm> out;
    out.reserve(scratch.touched.size());
    for (TermId t : scratch.touched) {
      double w = scratch.acc[t];
      if (method_ == MethodId::HierMTWL_idf || method_ == MethodId::HierICWL_idf) {
        w *= score_idf_global(stats_, t) * score_idf_local(stats_, v, t);
      }
      if (method_ == MethodId::HierICWL_raw || method_ == MethodId::HierICWL_idf) w *= score_icf(stats_, v, t);
      out.push_back({t, w, stats_.freq(v, t)});
    }
    scratch.clear();
    return out;
  }

  std::vector<ScoredTerm> hier_rcl(NodeId v, ScoreScratch& scratch) const {
    const auto& h = stats_.hierarchy();
    const auto s_total = static_cast<std::int64_t>(stats_.total(h.parent_or_self(v)));
    const bool use_chi2 = method_ == MethodId::HierRCL_chi2;
    scratch.reset_for(stats_.n_terms());
    h.for_each_descendant(v, [&](NodeId g, std::uint32_t e) {
      const NodeId q = h.parent_or_self(g);
      const double per_child = 1.0 / static_cast<double>(stats_.child_count(q));
      const auto g_support = stats_.support(g);
      auto g_it = g_support.begin();
      for (const auto& qe : stats_.support(q)) {
        while (g_it != g_support.end() && g_it->term < qe.term) ++g_it;
        const Count f_g = (g_it != g_support.end() && g_it->term == qe.term) ? g_it->freq : 0;
        const ContingencyCells cells = contingency_hier_rcl(stats_, s_total, g, f_g, qe.freq, config_.rcl_fp);
        const double value = use_chi2 ? chi2_2x2(cells) : jsd_2x2(cells);
        if (value == 0.0) continue;
        scratch.add(qe.term, qe.child_support * per_child * value / static_cast<double>(e));
      }
    });
    std::vector<ScoredTerm> out;
    out.reserve(scratch.touched.size());
    for (TermId t : scratch.touched) out.push_back({t, scratch.acc[t], stats_.freq(v, t)});
    scratch.clear();
    return out;
  }

  const NodeTermStats& stats_;
  MethodId method_;
  LabelConfig config_;
};

}  // namespace hierlabel::labeling
