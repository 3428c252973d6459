#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "hierlabel/corpus/matrix.hpp"

namespace hierlabel::corpus {

struct FilteredMatrix {
  DocTermMatrix matrix;
  std::vector<TermId> kept;  // new term id -> original term id
};

/// Inclusive integer df bounds for fractions of the collection size. Fractions
/// are rounded half-up: 328 docs at [0.01, 0.10] keeps 3 <= df <= 33.
inline std::pair<Count, Count> salton_df_bounds(std::size_t n_docs, double low, double high) {
  // The epsilon absorbs representation error such as 0.1 * 385 = 38.4999...
  auto round_half_up = [](double x) { return static_cast<Count>(std::floor(x + 0.5 + 1e-9)); };
  const double n = static_cast<double>(n_docs);
  return {round_half_up(low * n), round_half_up(high * n)};
}

/// Salton document-frequency filter: drops terms whose df falls outside the
/// rounded bounds and compacts the surviving term ids (order preserved).
inline FilteredMatrix salton_df_filter(const DocTermMatrix& m, double low, double high) {
  if (!(low >= 0.0 && low < high && high <= 1.0)) {
    throw config_error("df_filter", "bounds must satisfy 0 <= low < high <= 1");
  }
  auto [lo, hi] = salton_df_bounds(m.n_docs(), low, high);
  FilteredMatrix out;
  std::vector<TermId> new_id(m.n_terms(), static_cast<TermId>(-1));
  for (TermId t = 0; t < m.n_terms(); ++t) {
    const Count df = m.document_frequency(t);
    if (df >= lo && df <= hi) {
      new_id[t] = static_cast<TermId>(out.kept.size());
      out.kept.push_back(t);
    }
  }
  if (out.kept.empty()) throw input_error("corpus", "df_filter", "empty vocabulary after filter");
  std::vector<Cell> cells;
  for (const Cell& c : m.cells()) {
    if (new_id[c.term] != static_cast<TermId>(-1)) cells.push_back({c.doc, new_id[c.term], c.count});
  }
  out.matrix = DocTermMatrix(m.n_docs(), out.kept.size(), std::move(cells));
  return out;
}

}  // namespace hierlabel::corpus
