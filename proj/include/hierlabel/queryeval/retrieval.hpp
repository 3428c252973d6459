#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hierlabel/corpus/matrix.hpp"
#include "hierlabel/queryeval/query.hpp"

namespace hierlabel::queryeval {

/// Fixed-size document bitset.
class DocSet {
 public:
  DocSet() = default;
  explicit DocSet(std::size_t n_docs) : n_(n_docs), words_((n_docs + 63) / 64, 0) {}

  static DocSet all(std::size_t n_docs) {
    DocSet s(n_docs);
    for (std::size_t d = 0; d < n_docs; ++d) s.insert(static_cast<DocId>(d));
    return s;
  }

  std::size_t universe() const noexcept { return n_; }
  void insert(DocId d) { words_[d >> 6] |= std::uint64_t{1} << (d & 63); }
  bool contains(DocId d) const { return (words_[d >> 6] >> (d & 63)) & 1u; }

  std::size_t size() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  DocSet& operator|=(const DocSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DocSet& operator&=(const DocSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  std::size_t intersection_size(const DocSet& o) const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) n += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
    return n;
  }

  /// True when every member of *this is also in o.
  bool subset_of(const DocSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  std::vector<DocId> members() const {
    std::vector<DocId> out;
    for (std::size_t d = 0; d < n_; ++d) {
      if (contains(static_cast<DocId>(d))) out.push_back(static_cast<DocId>(d));
    }
    return out;
  }

  bool operator==(const DocSet&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

inline DocSet docs_of(std::span<const DocId> docs, std::size_t n_docs) {
  DocSet s(n_docs);
  for (DocId d : docs) s.insert(d);
  return s;
}

/// Evaluates queries over document presence (count > 0). Shared subqueries
/// reached through a QueryPtr are memoized; the cache holds a reference so
/// a key's address is never reused while cached.
class Retriever {
 public:
  explicit Retriever(const corpus::DocTermMatrix& m) : matrix_(m) {}

  DocSet retrieve(const QueryExpr& q) {
    DocSet out(matrix_.n_docs());
    switch (q.kind) {
      case QueryExpr::Kind::term:
        for (DocId d : matrix_.postings(q.term)) out.insert(d);
        break;
      case QueryExpr::Kind::any_of:
        for (const QueryPtr& c : q.children) out |= retrieve(c);
        break;
      case QueryExpr::Kind::all_of:
        out = DocSet::all(matrix_.n_docs());
        for (const QueryPtr& c : q.children) out &= retrieve(c);
        break;
    }
    return out;
  }

  DocSet retrieve(const QueryPtr& q) {
    if (!q) return DocSet(matrix_.n_docs());
    auto it = cache_.find(q.get());
    if (it != cache_.end()) return it->second.second;
    DocSet out = retrieve(*q);
    cache_.emplace(q.get(), std::make_pair(q, out));
    return out;
  }

 private:
  const corpus::DocTermMatrix& matrix_;
  std::unordered_map<const QueryExpr*, std::pair<QueryPtr, DocSet>> cache_;
};

inline DocSet retrieve(const corpus::DocTermMatrix& m, const QueryExpr& q) { return Retriever(m).retrieve(q); }

}  // namespace hierlabel::queryeval
