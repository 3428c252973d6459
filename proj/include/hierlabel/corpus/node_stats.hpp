#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "hierlabel/corpus/hierarchy.hpp"
#include "hierlabel/corpus/matrix.hpp"

namespace hierlabel::corpus {

/// Per-node term statistics shared by every labeling method. For each node
/// the support (terms with nonzero cumulated frequency) is stored sorted with
/// aligned arrays of cumulated frequency f_i, document frequency #(a, D_i)
/// and child support (number of direct children containing the term).
///
/// Immutable after construction; safe to share across threads.
class NodeTermStats {
 public:
  NodeTermStats(const DocTermMatrix& m, Hierarchy h) : hierarchy_(std::move(h)), n_terms_(m.n_terms()) {
    const std::size_t n = hierarchy_.size();
    std::vector<std::vector<Entry>> per_node(n);
    totals_.assign(n, 0);
    sizes_.assign(n, 0);

    std::vector<Count> freq(n_terms_, 0), df(n_terms_, 0);
    std::vector<std::uint32_t> child_support(n_terms_, 0);
    std::vector<TermId> touched;
    auto flush = [&](NodeId v) {
      std::sort(touched.begin(), touched.end());
      auto& out = per_node[v];
      out.reserve(touched.size());
      for (TermId t : touched) {
        out.push_back({t, freq[t], df[t], child_support[t]});
        totals_[v] += freq[t];
        freq[t] = df[t] = 0;
        child_support[t] = 0;
      }
      touched.clear();
    };

    auto pre = hierarchy_.preorder();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
      const NodeId v = *it;
      sizes_[v] = hierarchy_.docset(v).size();
      if (hierarchy_.is_leaf(v)) {
        for (DocId d : hierarchy_.leaf_docs(v)) {
          for (const TermCount& e : m.row(d)) {
            if (freq[e.term] == 0) touched.push_back(e.term);
            freq[e.term] += e.count;
            df[e.term] += 1;
          }
        }
      } else {
        for (NodeId c : hierarchy_.children(v)) {
          for (const Entry& e : per_node[c]) {
            if (freq[e.term] == 0) touched.push_back(e.term);
            freq[e.term] += e.freq;
            df[e.term] += e.docfreq;
            child_support[e.term] += 1;
          }
        }
      }
      flush(v);
    }

    offsets_.assign(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + per_node[v].size();
    entries_.reserve(offsets_[n]);
    for (NodeId v = 0; v < n; ++v) {
      entries_.insert(entries_.end(), per_node[v].begin(), per_node[v].end());
    }
    n_docs_ = m.n_docs();
  }

  struct Entry {
    TermId term;
    Count freq;                   // f_i(a_k)
    Count docfreq;                // #(a_k, D_i)
    std::uint32_t child_support;  // #(a_k, n_i): direct children containing a_k
  };

  const Hierarchy& hierarchy() const noexcept { return hierarchy_; }
  std::size_t n_terms() const noexcept { return n_terms_; }
  std::size_t n_docs() const noexcept { return n_docs_; }
  std::size_t n_nodes() const noexcept { return hierarchy_.size(); }

  /// Support of v sorted by term id.
  std::span<const Entry> support(NodeId v) const {
    return {entries_.data() + offsets_[v], entries_.data() + offsets_[v + 1]};
  }

  const Entry* find(NodeId v, TermId t) const {
    auto s = support(v);
    auto it = std::lower_bound(s.begin(), s.end(), t, [](const Entry& e, TermId x) { return e.term < x; });
    return (it != s.end() && it->term == t) ? &*it : nullptr;
  }

  Count freq(NodeId v, TermId t) const {
    const Entry* e = find(v, t);
    return e ? e->freq : 0;
  }
  Count docfreq(NodeId v, TermId t) const {
    const Entry* e = find(v, t);
    return e ? e->docfreq : 0;
  }
  std::uint32_t child_support(NodeId v, TermId t) const {
    const Entry* e = find(v, t);
    return e ? e->child_support : 0;
  }

  /// Sum over terms of f_v.
  Count total(NodeId v) const { return totals_[v]; }
  /// |D_v|
  std::size_t size(NodeId v) const { return sizes_[v]; }
  std::size_t child_count(NodeId v) const { return hierarchy_.children(v).size(); }

  /// Collection frequency f(a_k) and global document frequency #(a_k, D).
  Count collection_freq(TermId t) const { return freq(hierarchy_.root(), t); }
  Count global_docfreq(TermId t) const { return docfreq(hierarchy_.root(), t); }
  Count collection_total() const { return total(hierarchy_.root()); }

 private:
  Hierarchy hierarchy_;
  std::size_t n_terms_ = 0;
  std::size_t n_docs_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<Entry> entries_;
  std::vector<Count> totals_;
  std::vector<std::size_t> sizes_;
};

}  // namespace hierlabel::corpus
