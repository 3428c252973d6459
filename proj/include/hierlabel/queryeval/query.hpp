#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hierlabel/corpus/hierarchy.hpp"
#include "hierlabel/labeling/assignment.hpp"

namespace hierlabel::queryeval {

struct QueryExpr;
/// Queries are immutable and share subtrees: an inherited or conjoined
/// query points at the same node instead of copying it.
using QueryPtr = std::shared_ptr<const QueryExpr>;

/// Boolean query tree: a term leaf or an OR / AND over at least one child.
struct QueryExpr {
  enum class Kind { term, any_of, all_of };

  Kind kind = Kind::term;
  TermId term = 0;
  std::vector<QueryPtr> children;

  static QueryPtr make_term(TermId t) { return std::make_shared<const QueryExpr>(QueryExpr{Kind::term, t, {}}); }
  static QueryPtr make_or(std::vector<QueryPtr> c) {
    return std::make_shared<const QueryExpr>(QueryExpr{Kind::any_of, 0, std::move(c)});
  }
  static QueryPtr make_and(std::vector<QueryPtr> c) {
    return std::make_shared<const QueryExpr>(QueryExpr{Kind::all_of, 0, std::move(c)});
  }

  /// Structural equality.
  friend bool operator==(const QueryExpr& a, const QueryExpr& b) {
    if (a.kind != b.kind || a.term != b.term || a.children.size() != b.children.size()) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i) {
      if (a.children[i] != b.children[i] && !(*a.children[i] == *b.children[i])) return false;
    }
    return true;
  }
};

inline bool same_query(const QueryPtr& a, const QueryPtr& b) {
  if (a == b) return true;
  return a && b && *a == *b;
}

/// Prefix dump, e.g. (AND (OR t12 t77) (OR t3)).
inline std::string to_prefix(const QueryExpr& q) {
  if (q.kind == QueryExpr::Kind::term) return "t" + std::to_string(q.term);
  std::string out = q.kind == QueryExpr::Kind::any_of ? "(OR" : "(AND";
  for (const QueryPtr& c : q.children) out += " " + to_prefix(*c);
  return out + ")";
}

struct SpecificQueries {
  std::vector<QueryPtr> query;  // per node; null when the node is unretrievable
  std::vector<bool> inherited;  // resolved from the nearest labeled ancestor
};

/// Specific query of every node:
///  - a non-empty label becomes OR over its terms;
///  - an empty label with a labeled ancestor reuses the nearest one's query;
///  - otherwise OR over the children's queries, resolved bottom-up first.
/// A subtree without any label yields no query.
inline SpecificQueries derive_specific_queries(const corpus::Hierarchy& h, const std::vector<labeling::Label>& labels) {
  const std::size_t n = h.size();
  std::vector<QueryPtr> own(n);
  for (NodeId v = 0; v < n; ++v) {
    if (labels[v].empty()) continue;
    std::vector<QueryPtr> terms;
    terms.reserve(labels[v].size());
    for (const auto& e : labels[v]) terms.push_back(QueryExpr::make_term(e.term));
    own[v] = QueryExpr::make_or(std::move(terms));
  }

  // Bottom-up: what an unlabeled node would be if no ancestor helps.
  std::vector<QueryPtr> from_children(n);
  auto pre = h.preorder();
  for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
    const NodeId v = *it;
    if (own[v]) continue;
    std::vector<QueryPtr> parts;
    for (NodeId c : h.children(v)) {
      const QueryPtr& q = own[c] ? own[c] : from_children[c];
      if (q) parts.push_back(q);
    }
    if (!parts.empty()) from_children[v] = QueryExpr::make_or(std::move(parts));
  }

  // Top-down: the nearest labeled ancestor wins over the children.
  SpecificQueries out{std::vector<QueryPtr>(n), std::vector<bool>(n, false)};
  std::vector<std::optional<NodeId>> labeled_anc(n);
  for (NodeId v : pre) {
    if (!h.is_root(v)) {
      const NodeId p = *h.parent(v);
      labeled_anc[v] = own[p] ? std::optional<NodeId>(p) : labeled_anc[p];
    }
    if (own[v]) {
      out.query[v] = own[v];
    } else if (labeled_anc[v]) {
      out.query[v] = own[*labeled_anc[v]];
      out.inherited[v] = true;
    } else {
      out.query[v] = from_children[v];
    }
  }
  return out;
}

/// Generic query: the root's is its specific query; every other node ANDs
/// its parent's conjuncts with its own specific query, skipping a conjunct
/// already present (an inherited copy adds nothing). Nodes without a
/// specific query get no generic query.
inline std::vector<QueryPtr> derive_generic_queries(const corpus::Hierarchy& h, const SpecificQueries& spec) {
  std::vector<QueryPtr> out(h.size());
  for (NodeId v : h.preorder()) {
    const QueryPtr& own = spec.query[v];
    if (!own) continue;
    if (h.is_root(v)) {
      out[v] = own;
      continue;
    }
    const QueryPtr& up = out[*h.parent(v)];
    std::vector<QueryPtr> conj;
    if (up) {
      if (up->kind == QueryExpr::Kind::all_of) {
        conj = up->children;
      } else {
        conj.push_back(up);
      }
    }
    const bool present = std::any_of(conj.begin(), conj.end(), [&](const QueryPtr& c) { return same_query(c, own); });
    if (!present) conj.push_back(own);
    out[v] = QueryExpr::make_and(std::move(conj));
  }
  return out;
}

}  // namespace hierlabel::queryeval
