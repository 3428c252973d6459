#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "hierlabel/corpus/types.hpp"
#include "hierlabel/labeling/method.hpp"

namespace hierlabel::labeling {

struct ScoredTerm {
  TermId term;
  double score;
  Count freq;  // f_i(a_k) of the node being labeled; first tie-breaker
};

struct LabelEntry {
  TermId term;
  double score;

  bool operator==(const LabelEntry&) const = default;
};

using Label = std::vector<LabelEntry>;

/// Ranked top-P label of every node for one method.
struct LabelAssignment {
  MethodId method = MethodId::MTWL_raw;
  std::size_t p_cap = 10;
  std::vector<Label> nodes;  // indexed by node id
};

/// Keeps terms with a positive score, ordered by score desc, node frequency
/// desc, term id asc, truncated to P.
inline Label select_topk(std::vector<ScoredTerm> scores, std::size_t p_cap) {
  std::erase_if(scores, [](const ScoredTerm& s) { return !(s.score > 0.0) || !std::isfinite(s.score); });
  auto better = [](const ScoredTerm& a, const ScoredTerm& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.freq != b.freq) return a.freq > b.freq;
    return a.term < b.term;
  };
  const std::size_t keep = std::min(p_cap, scores.size());
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(keep), scores.end(), better);
  Label out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back({scores[i].term, scores[i].score});
  return out;
}

}  // namespace hierlabel::labeling
