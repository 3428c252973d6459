#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hierlabel/corpus/vocabulary.hpp"
#include "hierlabel/error.hpp"
#include "hierlabel/util/parallel.hpp"
#include "hierlabel/util/text.hpp"

namespace hierlabel::coherence {

/// Unordered pair key, smaller id in the high half.
inline std::uint64_t pair_key(TermId a, TermId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Document-window counts: one window per reference document.
struct CooccurrenceCounts {
  std::uint64_t n_windows = 0;
  std::vector<std::uint64_t> unary;
  std::unordered_map<std::uint64_t, std::uint64_t> pairwise;

  std::uint64_t joint(TermId a, TermId b) const {
    if (a == b) return unary[a];
    auto it = pairwise.find(pair_key(a, b));
    return it == pairwise.end() ? 0 : it->second;
  }

  /// Adds another partial count; associative and commutative.
  void merge(const CooccurrenceCounts& o) {
    n_windows += o.n_windows;
    if (unary.size() < o.unary.size()) unary.resize(o.unary.size(), 0);
    for (std::size_t t = 0; t < o.unary.size(); ++t) unary[t] += o.unary[t];
    for (const auto& [k, c] : o.pairwise) pairwise[k] += c;
  }
};

/// Reference corpus as vocabulary ids: one entry per document, distinct ids
/// in ascending order. Tokens outside the vocabulary are dropped; blank
/// lines are not documents.
inline std::vector<std::vector<TermId>> tokenize_reference(std::string_view text, const corpus::Vocabulary& vocab,
                                                           const std::string& source = "<reference>") {
  std::vector<std::vector<TermId>> docs;
  util::for_each_line(text, [&](std::size_t, std::string_view line) {
    auto tokens = util::split_ws(line);
    if (tokens.empty()) return;
    std::vector<TermId> ids;
    for (auto tok : tokens) {
      if (auto id = vocab.find(tok)) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    docs.push_back(std::move(ids));
  });
  if (docs.empty()) throw input_error("coherence", source, "reference corpus has no documents");
  return docs;
}

/// Counts every term and, when `pairs` is given, only those unordered pairs;
/// otherwise every co-occurring pair. Documents are split into contiguous
/// shards counted independently and merged.
inline CooccurrenceCounts count_cooccurrence(const std::vector<std::vector<TermId>>& docs, std::size_t n_terms,
                                             const std::unordered_set<std::uint64_t>* pairs = nullptr,
                                             std::size_t threads = 1) {
  if (docs.empty()) throw input_error("coherence", "", "reference corpus has no documents");
  std::vector<bool> wanted(n_terms, pairs == nullptr);
  if (pairs) {
    for (std::uint64_t k : *pairs) {
      wanted[static_cast<TermId>(k >> 32)] = true;
      wanted[static_cast<TermId>(k & 0xffffffffu)] = true;
    }
  }
  const std::size_t shards = std::max<std::size_t>(1, std::min(threads, docs.size()));
  std::vector<CooccurrenceCounts> part(shards);
  util::parallel_for(shards, threads, [&](std::size_t s, std::size_t) {
    CooccurrenceCounts& c = part[s];
    c.unary.assign(n_terms, 0);
    const std::size_t begin = docs.size() * s / shards, end = docs.size() * (s + 1) / shards;
    std::vector<TermId> keep;
    for (std::size_t d = begin; d < end; ++d) {
      ++c.n_windows;
      keep.clear();
      for (TermId t : docs[d]) {
        if (t >= n_terms) throw input_error("coherence", "document " + std::to_string(d), "term id out of range");
        ++c.unary[t];
        if (wanted[t]) keep.push_back(t);
      }
      for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = i + 1; j < keep.size(); ++j) {
          const std::uint64_t k = pair_key(keep[i], keep[j]);
          if (!pairs || pairs->count(k)) ++c.pairwise[k];
        }
      }
    }
  });
  CooccurrenceCounts out;
  out.unary.assign(n_terms, 0);
  for (const auto& p : part) out.merge(p);
  return out;
}

}  // namespace hierlabel::coherence
