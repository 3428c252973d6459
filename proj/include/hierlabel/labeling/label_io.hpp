#pragma once

#include <map>
#include <string>
#include <vector>

#include "hierlabel/corpus/vocabulary.hpp"
#include "hierlabel/labeling/assignment.hpp"
#include "hierlabel/util/csv.hpp"

namespace hierlabel::labeling {

inline const std::vector<std::string>& label_csv_header() {
  static const std::vector<std::string> h = {"method", "node_id", "rank", "term_id", "term_surface", "score"};
  return h;
}

/// One row per (method, node, rank); rank is 1-based. Nodes with an empty
/// label contribute no rows.
inline std::string format_labels(const std::vector<LabelAssignment>& all, const corpus::Vocabulary& vocab) {
  std::string out = util::csv_row(label_csv_header());
  for (const LabelAssignment& a : all) {
    const std::string name(method_name(a.method));
    for (std::size_t v = 0; v < a.nodes.size(); ++v) {
      for (std::size_t r = 0; r < a.nodes[v].size(); ++r) {
        const LabelEntry& e = a.nodes[v][r];
        out += util::csv_row({name, std::to_string(v), std::to_string(r + 1), std::to_string(e.term),
                              vocab.surface(e.term), util::fmt6(e.score)});
      }
    }
  }
  return out;
}

/// Parses a label CSV back into assignments, one per method in first-seen
/// order, sized to `n_nodes`. Ranks must run 1, 2, ... within each node.
inline std::vector<LabelAssignment> parse_labels(std::string_view text, std::size_t n_nodes, std::size_t n_terms,
                                                 std::size_t p_cap, const std::string& source = "<labels>") {
  std::vector<LabelAssignment> out;
  std::map<MethodId, std::size_t> slot;
  util::read_csv(text, source, "labeling", label_csv_header(), [&](const std::string& where, const auto& f) {
    auto method = parse_method(f[0]);
    if (!method) throw input_error("labeling", where, "unknown method \"" + f[0] + "\"");
    auto node = util::parse_int<std::size_t>(f[1]);
    auto rank = util::parse_int<std::size_t>(f[2]);
    auto term = util::parse_int<std::size_t>(f[3]);
    auto score = util::parse_double(f[5]);
    if (!node || !rank || !term || !score) throw input_error("labeling", where, "malformed label row");
    if (*node >= n_nodes) throw input_error("labeling", where, "node " + f[1] + " not in hierarchy");
    if (*term >= n_terms) throw input_error("labeling", where, "term " + f[3] + " out of range");
    auto [it, fresh] = slot.emplace(*method, out.size());
    if (fresh) out.push_back({*method, p_cap, std::vector<Label>(n_nodes)});
    Label& label = out[it->second].nodes[*node];
    if (*rank != label.size() + 1) throw input_error("labeling", where, "ranks must be consecutive from 1");
    label.push_back({static_cast<TermId>(*term), *score});
  });
  return out;
}

}  // namespace hierlabel::labeling
