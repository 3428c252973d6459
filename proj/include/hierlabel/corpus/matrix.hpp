#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "hierlabel/corpus/types.hpp"
#include "hierlabel/error.hpp"
#include "hierlabel/util/text.hpp"

namespace hierlabel::corpus {

struct Cell {
  DocId doc;
  TermId term;
  Count count;
};

struct TermCount {
  TermId term;
  Count count;
};

/// Sparse nonnegative document-term counts, stored row-major (per document,
/// terms ascending) with a column index of postings for boolean retrieval.
class DocTermMatrix {
 public:
  DocTermMatrix() = default;

  /// Validates and indexes the cells. Throws Error(input) on out-of-range
  /// ids, non-positive counts or duplicate (doc, term) pairs.
  DocTermMatrix(std::size_t n_docs, std::size_t n_terms, std::vector<Cell> cells)
      : n_docs_(n_docs), n_terms_(n_terms) {
    for (const Cell& c : cells) {
      if (c.doc >= n_docs) {
        throw input_error("corpus", "doc " + std::to_string(c.doc), "doc-id out of range");
      }
      if (c.term >= n_terms) {
        throw input_error("corpus", "term " + std::to_string(c.term), "term-id out of range");
      }
      if (c.count == 0) {
        throw input_error("corpus", cell_name(c), "count must be positive");
      }
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
      return a.doc != b.doc ? a.doc < b.doc : a.term < b.term;
    });
    for (std::size_t i = 1; i < cells.size(); ++i) {
      if (cells[i].doc == cells[i - 1].doc && cells[i].term == cells[i - 1].term) {
        throw input_error("corpus", cell_name(cells[i]), "duplicate cell");
      }
    }

    row_offsets_.assign(n_docs + 1, 0);
    entries_.reserve(cells.size());
    for (const Cell& c : cells) {
      ++row_offsets_[c.doc + 1];
      entries_.push_back({c.term, c.count});
      total_ += c.count;
    }
    std::partial_sum(row_offsets_.begin(), row_offsets_.end(), row_offsets_.begin());

    col_offsets_.assign(n_terms + 1, 0);
    for (const Cell& c : cells) ++col_offsets_[c.term + 1];
    std::partial_sum(col_offsets_.begin(), col_offsets_.end(), col_offsets_.begin());
    postings_.resize(cells.size());
    std::vector<std::size_t> cursor(col_offsets_.begin(), col_offsets_.end() - 1);
    for (const Cell& c : cells) postings_[cursor[c.term]++] = c.doc;  // docs ascending
  }

  std::size_t n_docs() const noexcept { return n_docs_; }
  std::size_t n_terms() const noexcept { return n_terms_; }
  std::size_t nnz() const noexcept { return entries_.size(); }
  Count total() const noexcept { return total_; }

  std::span<const TermCount> row(DocId d) const {
    return {entries_.data() + row_offsets_[d], entries_.data() + row_offsets_[d + 1]};
  }

  /// Documents containing the term (count > 0), ascending.
  std::span<const DocId> postings(TermId t) const {
    return {postings_.data() + col_offsets_[t], postings_.data() + col_offsets_[t + 1]};
  }

  std::size_t document_frequency(TermId t) const { return col_offsets_[t + 1] - col_offsets_[t]; }

  Count count(DocId d, TermId t) const {
    auto r = row(d);
    auto it = std::lower_bound(r.begin(), r.end(), t,
                               [](const TermCount& e, TermId v) { return e.term < v; });
    return (it != r.end() && it->term == t) ? it->count : 0;
  }

  /// Cells in canonical (doc, term) order.
  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    out.reserve(entries_.size());
    for (DocId d = 0; d < n_docs_; ++d) {
      for (const TermCount& e : row(d)) out.push_back({d, e.term, e.count});
    }
    return out;
  }

 private:
  static std::string cell_name(const Cell& c) {
    return "cell (" + std::to_string(c.doc) + "," + std::to_string(c.term) + ")";
  }

  std::size_t n_docs_ = 0;
  std::size_t n_terms_ = 0;
  Count total_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<TermCount> entries_;
  std::vector<std::size_t> col_offsets_{0};
  std::vector<DocId> postings_;
};

/// Parses the triplet format: "n_docs n_terms" header, then "doc term count"
/// lines in any order. Blank lines are ignored.
inline DocTermMatrix parse_matrix(std::string_view text, const std::string& source = "<matrix>") {
  std::size_t n_docs = 0, n_terms = 0;
  bool have_header = false;
  std::vector<Cell> cells;
  util::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    auto fields = util::split_ws(line);
    if (fields.empty()) return;
    const std::string where = source + ":" + std::to_string(line_no);
    if (!have_header) {
      auto d = fields.size() == 2 ? util::parse_int<std::uint64_t>(fields[0]) : std::nullopt;
      auto t = fields.size() == 2 ? util::parse_int<std::uint64_t>(fields[1]) : std::nullopt;
      if (!d || !t) throw input_error("corpus", where, "parse error: expected header \"n_docs n_terms\"");
      n_docs = *d;
      n_terms = *t;
      have_header = true;
      return;
    }
    if (fields.size() != 3) throw input_error("corpus", where, "parse error: expected \"doc term count\"");
    auto doc = util::parse_int<std::int64_t>(fields[0]);
    auto term = util::parse_int<std::int64_t>(fields[1]);
    auto count = util::parse_int<std::int64_t>(fields[2]);
    if (!doc || !term || !count) throw input_error("corpus", where, "parse error: non-integer field");
    if (*count <= 0) throw input_error("corpus", where, "count must be positive");
    if (*doc < 0 || static_cast<std::uint64_t>(*doc) >= n_docs) {
      throw input_error("corpus", where, "doc-id out of range");
    }
    if (*term < 0 || static_cast<std::uint64_t>(*term) >= n_terms) {
      throw input_error("corpus", where, "term-id out of range");
    }
    cells.push_back({static_cast<DocId>(*doc), static_cast<TermId>(*term), static_cast<Count>(*count)});
  });
  if (!have_header) throw input_error("corpus", source, "parse error: missing header");
  return DocTermMatrix(n_docs, n_terms, std::move(cells));
}

inline DocTermMatrix load_matrix(const std::string& path) {
  return parse_matrix(util::read_file(path, "corpus"), path);
}

inline std::string format_matrix(const DocTermMatrix& m) {
  std::string out = std::to_string(m.n_docs()) + " " + std::to_string(m.n_terms()) + "\n";
  for (const Cell& c : m.cells()) {
    out += std::to_string(c.doc) + " " + std::to_string(c.term) + " " + std::to_string(c.count) + "\n";
  }
  return out;
}

inline void save_matrix(const DocTermMatrix& m, const std::string& path) {
  util::write_file(path, format_matrix(m), "corpus");
}

}  // namespace hierlabel::corpus
