#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hierlabel/labeling/labeling.hpp"
#include "hierlabel/queryeval/evaluation.hpp"

namespace oracles {

using namespace hierlabel;
using namespace hierlabel::labeling;
using queryeval::QueryExpr;
using queryeval::QueryPtr;

/// Textbook Pearson statistic over an r x 2 table of observed counts.
inline double pearson(const std::vector<std::array<double, 2>>& table) {
  double total = 0, col[2] = {0, 0};
  std::vector<double> row(table.size(), 0);
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (int j = 0; j < 2; ++j) {
      row[i] += table[i][j];
      col[j] += table[i][j];
      total += table[i][j];
    }
  }
  double x = 0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    for (int j = 0; j < 2; ++j) {
      const double e = row[i] * col[j] / total;
      if (e > 0) x += (table[i][j] - e) * (table[i][j] - e) / e;
    }
  }
  return x;
}

inline double pearson_2x2(const ContingencyCells& c) {
  return pearson({{static_cast<double>(c.tp), static_cast<double>(c.fn)},
                  {static_cast<double>(c.fp), static_cast<double>(c.tn)}});
}

inline ContingencyCells random_cells(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> scale(0, 3);
  const int hi = std::array<int, 4>{5, 50, 1000, 100000}[scale(rng)];
  std::uniform_int_distribution<std::int64_t> cell(1, hi);
  ContingencyCells c{cell(rng), cell(rng), cell(rng), cell(rng), 0};
  c.s = c.tp + c.fp + c.fn + c.tn;
  return c;
}

/// Every violated invariant of one assignment, as readable strings.
inline std::vector<std::string> label_violations(const LabelAssignment& a, const NodeTermStats& s) {
  std::vector<std::string> out;
  const auto& h = s.hierarchy();
  const std::string name(method_name(a.method));
  auto where = [&](NodeId v) { return name + " node " + std::to_string(v) + ": "; };
  for (NodeId v = 0; v < h.size(); ++v) {
    const Label& l = a.nodes[v];
    if (l.size() > a.p_cap) out.push_back(where(v) + "label longer than P");
    std::set<TermId> seen;
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (!(l[i].score > 0) || !std::isfinite(l[i].score)) out.push_back(where(v) + "non-positive score");
      if (i > 0 && l[i].score > l[i - 1].score) out.push_back(where(v) + "scores increase");
      if (!seen.insert(l[i].term).second) out.push_back(where(v) + "duplicate term");
    }
    if (h.is_leaf(v) && is_hier_method(a.method) && !l.empty()) out.push_back(where(v) + "hier score at leaf");
  }
  if (a.method == MethodId::RLUM) {
    for (NodeId v = 0; v < h.size(); ++v) {
      for (const auto& e : a.nodes[v]) {
        if (s.freq(v, e.term) == 0) out.push_back(where(v) + "term with zero node frequency");
      }
      if (h.is_root(v)) continue;
      const NodeId p = *h.parent(v);
      for (const auto& e : a.nodes[v]) {
        for (const auto& pe : a.nodes[p]) {
          if (pe.term == e.term) out.push_back(where(v) + "shares a term with its parent");
        }
      }
    }
  }
  if (a.method == MethodId::PopesculUngar) {
    for (NodeId v = 0; v < h.size(); ++v) {
      if (!h.is_leaf(v)) continue;
      std::set<TermId> path;
      for (NodeId u = v;; u = *h.parent(u)) {
        for (const auto& e : a.nodes[u]) {
          if (!path.insert(e.term).second) out.push_back(where(v) + "term repeated on root path");
        }
        if (h.is_root(u)) break;
      }
    }
  }
  return out;
}

/// Per-document recursive evaluation straight from the counts.
inline bool matches(const corpus::DocTermMatrix& m, DocId d, const QueryExpr& q) {
  switch (q.kind) {
    case QueryExpr::Kind::term: return m.count(d, q.term) > 0;
    case QueryExpr::Kind::any_of:
      for (const auto& c : q.children) {
        if (matches(m, d, *c)) return true;
      }
      return false;
    case QueryExpr::Kind::all_of:
      for (const auto& c : q.children) {
        if (!matches(m, d, *c)) return false;
      }
      return true;
  }
  return false;
}

inline std::vector<DocId> scan(const corpus::DocTermMatrix& m, const QueryExpr& q) {
  std::vector<DocId> out;
  for (DocId d = 0; d < m.n_docs(); ++d) {
    if (matches(m, d, q)) out.push_back(d);
  }
  return out;
}

inline QueryPtr random_query(std::mt19937_64& rng, std::size_t n_terms, int depth) {
  std::uniform_int_distribution<TermId> term(0, static_cast<TermId>(n_terms - 1));
  std::uniform_int_distribution<int> coin(0, 2), width(1, 4);
  if (depth == 0 || coin(rng) == 0) return QueryExpr::make_term(term(rng));
  std::vector<QueryPtr> kids;
  const int w = width(rng);
  for (int i = 0; i < w; ++i) kids.push_back(random_query(rng, n_terms, depth - 1));
  return coin(rng) == 0 ? QueryExpr::make_and(std::move(kids)) : QueryExpr::make_or(std::move(kids));
}

/// Corpus over `spec` where node u owns terms [10*rank(u), 10*rank(u)+10),
/// ranks assigned deepest-first, and every document holds each term of every
/// node on its root path once. With two or more children per internal node,
/// a node's own terms strictly lead its frequency ranking.
inline std::pair<corpus::DocTermMatrix, corpus::Hierarchy> disjoint_vocabulary_corpus(
    const std::vector<corpus::NodeRecord>& records, std::size_t n_docs, std::size_t terms_per_node = 10) {
  auto h = corpus::Hierarchy::build(records, n_docs);
  std::vector<NodeId> order(h.preorder().begin(), h.preorder().end());
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return h.level(a) > h.level(b); });
  std::vector<std::size_t> rank(h.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::vector<corpus::Cell> cells;
  for (NodeId leaf = 0; leaf < h.size(); ++leaf) {
    if (!h.is_leaf(leaf)) continue;
    for (DocId d : h.leaf_docs(leaf)) {
      for (NodeId u = leaf;; u = *h.parent(u)) {
        for (std::size_t k = 0; k < terms_per_node; ++k) {
          cells.push_back({d, static_cast<TermId>(rank[u] * terms_per_node + k), 1});
        }
        if (h.is_root(u)) break;
      }
    }
  }
  corpus::DocTermMatrix m(n_docs, h.size() * terms_per_node, std::move(cells));
  return {std::move(m), std::move(h)};
}

}  // namespace oracles
