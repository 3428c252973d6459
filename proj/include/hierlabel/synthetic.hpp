#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "hierlabel/corpus/hierarchy.hpp"
#include "hierlabel/corpus/matrix.hpp"
#include "hierlabel/corpus/vocabulary.hpp"

namespace hierlabel::synthetic {

struct Corpus {
  corpus::DocTermMatrix matrix;
  corpus::Hierarchy hierarchy;
  corpus::Vocabulary vocabulary;
  /// Reference documents as token lists (vocabulary surfaces plus noise).
  std::vector<std::vector<std::string>> reference;
};

namespace detail {

inline std::size_t draw(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Random recursive tree with `n_nodes` nodes; documents dealt to leaves so
/// that each leaf gets at least one.
inline std::vector<corpus::NodeRecord> random_tree(std::mt19937_64& rng, std::size_t n_nodes, std::size_t n_docs) {
  std::vector<corpus::NodeRecord> nodes(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) nodes[i].id = static_cast<std::int64_t>(i);
  for (std::size_t i = 1; i < n_nodes; ++i) {
    const std::size_t p = draw(rng, 0, i - 1);
    nodes[i].parent = static_cast<std::int64_t>(p);
    nodes[p].children.push_back(static_cast<std::int64_t>(i));
  }
  std::vector<std::size_t> leaves;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    if (nodes[i].children.empty()) leaves.push_back(i);
  }
  std::vector<std::int64_t> docs(n_docs);
  for (std::size_t d = 0; d < n_docs; ++d) docs[d] = static_cast<std::int64_t>(d);
  std::shuffle(docs.begin(), docs.end(), rng);
  for (std::size_t d = 0; d < n_docs; ++d) {
    const std::size_t leaf = d < leaves.size() ? leaves[d] : leaves[draw(rng, 0, leaves.size() - 1)];
    nodes[leaf].docs.push_back(docs[d]);
  }
  return nodes;
}

}  // namespace detail

/// Small random (matrix, hierarchy) instance for property tests. Documents
/// mix a few high-count shared terms with sparse low-count ones so that the
/// independence tests both accept and reject.
inline Corpus random_instance(std::uint64_t seed, std::size_t max_docs = 50, std::size_t max_terms = 60,
                              std::size_t max_nodes = 15) {
  std::mt19937_64 rng(seed);
  const std::size_t n_nodes = detail::draw(rng, 1, max_nodes);
  std::size_t leaves_upper = n_nodes;  // a random tree never has more leaves than nodes
  const std::size_t n_docs = detail::draw(rng, std::min(max_docs, leaves_upper), max_docs);
  const std::size_t n_terms = detail::draw(rng, 2, max_terms);
  auto records = detail::random_tree(rng, n_nodes, n_docs);

  std::vector<corpus::Cell> cells;
  const std::size_t shared = std::max<std::size_t>(1, n_terms / 6);
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::vector<bool> used(n_terms, false);
    const std::size_t k = detail::draw(rng, 0, std::min<std::size_t>(n_terms, 12));
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t t = detail::draw(rng, 0, n_terms - 1);
      if (used[t]) continue;
      used[t] = true;
      const Count c = t < shared ? detail::draw(rng, 3, 12) : detail::draw(rng, 1, 3);
      cells.push_back({static_cast<DocId>(d), static_cast<TermId>(t), c});
    }
  }
  Corpus out;
  out.matrix = corpus::DocTermMatrix(n_docs, n_terms, std::move(cells));
  out.hierarchy = corpus::Hierarchy::build(records, n_docs);
  out.vocabulary = corpus::Vocabulary::synthetic(n_terms);
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::vector<std::string> tokens;
    for (const auto& e : out.matrix.row(static_cast<DocId>(d))) tokens.push_back(out.vocabulary.surface(e.term));
    out.reference.push_back(std::move(tokens));
  }
  return out;
}

struct TopicCorpusSpec {
  std::size_t n_docs = 5000;
  std::size_t n_terms = 10000;
  std::size_t depth = 9;  // levels below the root; 2^(depth+1) - 1 nodes
  std::size_t tokens_per_doc = 120;
  std::size_t reference_docs = 2000;
  std::uint64_t seed = 42;
};

/// Balanced binary hierarchy where every node owns a small block of topic
/// terms; documents at a leaf draw tokens from the topics along their root
/// path plus background noise. Gives every method something to find.
inline Corpus topic_corpus(const TopicCorpusSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const std::size_t n_nodes = (std::size_t{1} << (spec.depth + 1)) - 1;
  const std::size_t first_leaf = n_nodes / 2;
  const std::size_t n_leaves = n_nodes - first_leaf;

  std::vector<corpus::NodeRecord> nodes(n_nodes);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    nodes[i].id = static_cast<std::int64_t>(i);
    if (i > 0) nodes[i].parent = static_cast<std::int64_t>((i - 1) / 2);
    if (i < first_leaf) nodes[i].children = {static_cast<std::int64_t>(2 * i + 1), static_cast<std::int64_t>(2 * i + 2)};
  }
  std::vector<std::size_t> doc_leaf(spec.n_docs);
  for (std::size_t d = 0; d < spec.n_docs; ++d) {
    const std::size_t leaf = first_leaf + (d < n_leaves ? d : detail::draw(rng, 0, n_leaves - 1));
    doc_leaf[d] = leaf;
    nodes[leaf].docs.push_back(static_cast<std::int64_t>(d));
  }

  // Topic blocks: node i owns terms [i*block, (i+1)*block); the rest is background.
  const std::size_t block = std::max<std::size_t>(1, (spec.n_terms / 2) / n_nodes);
  const std::size_t background_start = std::min(spec.n_terms - 1, block * n_nodes);
  auto path_of = [&](std::size_t leaf) {
    std::vector<std::size_t> path{leaf};
    while (path.back() != 0) path.push_back((path.back() - 1) / 2);
    return path;
  };
  auto draw_doc = [&](std::size_t leaf) {
    const auto path = path_of(leaf);
    std::vector<std::size_t> tokens;
    tokens.reserve(spec.tokens_per_doc);
    for (std::size_t k = 0; k < spec.tokens_per_doc; ++k) {
      if (detail::draw(rng, 0, 9) < 7) {
        const std::size_t node = path[detail::draw(rng, 0, path.size() - 1)];
        tokens.push_back(node * block + detail::draw(rng, 0, block - 1));
      } else {
        tokens.push_back(detail::draw(rng, background_start, spec.n_terms - 1));
      }
    }
    return tokens;
  };

  std::vector<corpus::Cell> cells;
  for (std::size_t d = 0; d < spec.n_docs; ++d) {
    auto tokens = draw_doc(doc_leaf[d]);
    std::sort(tokens.begin(), tokens.end());
    for (std::size_t i = 0; i < tokens.size();) {
      std::size_t j = i;
      while (j < tokens.size() && tokens[j] == tokens[i]) ++j;
      cells.push_back({static_cast<DocId>(d), static_cast<TermId>(tokens[i]), static_cast<Count>(j - i)});
      i = j;
    }
  }

  Corpus out;
  out.matrix = corpus::DocTermMatrix(spec.n_docs, spec.n_terms, std::move(cells));
  out.hierarchy = corpus::Hierarchy::build(nodes, spec.n_docs);
  std::vector<std::string> surfaces;
  surfaces.reserve(spec.n_terms);
  for (std::size_t t = 0; t < spec.n_terms; ++t) surfaces.push_back("w" + std::to_string(t));
  out.vocabulary = corpus::Vocabulary(std::move(surfaces));
  for (std::size_t r = 0; r < spec.reference_docs; ++r) {
    const auto tokens = draw_doc(first_leaf + detail::draw(rng, 0, n_leaves - 1));
    std::vector<std::string> words;
    words.reserve(tokens.size() + 1);
    for (std::size_t t : tokens) words.push_back(out.vocabulary.surface(static_cast<TermId>(t)));
    words.push_back("oov" + std::to_string(r % 7));
    out.reference.push_back(std::move(words));
  }
  return out;
}

}  // namespace hierlabel::synthetic
