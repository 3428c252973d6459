#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hierlabel/corpus/hierarchy.hpp"
#include "hierlabel/labeling/assignment.hpp"
#include "hierlabel/queryeval/retrieval.hpp"
#include "hierlabel/util/csv.hpp"
#include "hierlabel/util/parallel.hpp"

namespace hierlabel::queryeval {

struct RetrievalMetrics {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0, recall = 0.0, f = 0.0;
};

/// Precision tp/|r| (0 when nothing is retrieved), recall tp/|g|, and F as
/// their harmonic mean, forced to exactly 0 when either is 0.
inline RetrievalMetrics evaluate_node(const corpus::Hierarchy& h, NodeId v, const DocSet& retrieved) {
  const DocSet group = docs_of(h.docset(v), retrieved.universe());
  RetrievalMetrics m;
  const std::size_t r = retrieved.size(), g = group.size();
  m.tp = retrieved.intersection_size(group);
  m.fp = r - m.tp;
  m.fn = g - m.tp;
  m.tn = retrieved.universe() - m.tp - m.fp - m.fn;
  m.precision = r == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(r);
  m.recall = g == 0 ? 0.0 : static_cast<double>(m.tp) / static_cast<double>(g);
  m.f = (m.precision == 0.0 || m.recall == 0.0) ? 0.0 : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

enum class QueryKind { specific, generic };
enum class Measure { precision, recall, f };

inline constexpr std::array<QueryKind, 2> kQueryKinds = {QueryKind::specific, QueryKind::generic};
inline constexpr std::array<Measure, 3> kMeasures = {Measure::precision, Measure::recall, Measure::f};

inline std::string_view kind_name(QueryKind k) { return k == QueryKind::specific ? "specific" : "generic"; }

inline std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::precision: return "precision";
    case Measure::recall: return "recall";
    case Measure::f: return "f";
  }
  return "?";
}

/// One (method, node, kind) evaluation. The three measures share a row; the
/// long form (one value per measure) is obtained through value().
struct Observation {
  labeling::MethodId method = labeling::MethodId::MTWL_raw;
  NodeId node = 0;
  std::uint32_t level = 0;
  QueryKind kind = QueryKind::specific;
  double precision = 0.0, recall = 0.0, f = 0.0;

  double value(Measure m) const {
    switch (m) {
      case Measure::precision: return precision;
      case Measure::recall: return recall;
      case Measure::f: return f;
    }
    return 0.0;
  }
};

using ObservationTable = std::vector<Observation>;

/// Specific and generic retrieval of every node for one method, with full
/// contingency counts.
struct MethodEvaluation {
  std::vector<RetrievalMetrics> specific, generic;
};

inline MethodEvaluation evaluate_method(const corpus::DocTermMatrix& m, const corpus::Hierarchy& h,
                                        const labeling::LabelAssignment& labels) {
  const auto spec = derive_specific_queries(h, labels.nodes);
  const auto gen = derive_generic_queries(h, spec);
  Retriever retriever(m);
  MethodEvaluation out;
  out.specific.resize(h.size());
  out.generic.resize(h.size());
  for (NodeId v = 0; v < h.size(); ++v) {
    out.specific[v] = evaluate_node(h, v, retriever.retrieve(spec.query[v]));
    out.generic[v] = evaluate_node(h, v, retriever.retrieve(gen[v]));
  }
  return out;
}

/// Rows ordered by method (input order), node id, kind (specific first).
inline ObservationTable evaluate_all(const corpus::DocTermMatrix& m, const corpus::Hierarchy& h,
                                     std::span<const labeling::LabelAssignment> all, std::size_t threads = 1) {
  std::vector<MethodEvaluation> per(all.size());
  util::parallel_for(all.size(), threads, [&](std::size_t i, std::size_t) { per[i] = evaluate_method(m, h, all[i]); });
  ObservationTable rows;
  rows.reserve(all.size() * h.size() * 2);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (NodeId v = 0; v < h.size(); ++v) {
      for (QueryKind k : kQueryKinds) {
        const RetrievalMetrics& r = k == QueryKind::specific ? per[i].specific[v] : per[i].generic[v];
        rows.push_back({all[i].method, v, h.level(v), k, r.precision, r.recall, r.f});
      }
    }
  }
  return rows;
}

inline const std::vector<std::string>& metrics_csv_header() {
  static const std::vector<std::string> h = {"method", "node_id", "level", "kind", "precision", "recall", "f"};
  return h;
}

inline std::string format_metrics(const ObservationTable& rows) {
  std::string out = util::csv_row(metrics_csv_header());
  for (const Observation& o : rows) {
    out += util::csv_row({std::string(labeling::method_name(o.method)), std::to_string(o.node), std::to_string(o.level),
                          std::string(kind_name(o.kind)), util::fmt6(o.precision), util::fmt6(o.recall),
                          util::fmt6(o.f)});
  }
  return out;
}

inline ObservationTable parse_metrics(std::string_view text, const std::string& source = "<metrics>") {
  ObservationTable rows;
  util::read_csv(text, source, "queryeval", metrics_csv_header(), [&](const std::string& where, const auto& f) {
    auto method = labeling::parse_method(f[0]);
    auto node = util::parse_int<NodeId>(f[1]);
    auto level = util::parse_int<std::uint32_t>(f[2]);
    auto p = util::parse_double(f[4]);
    auto r = util::parse_double(f[5]);
    auto fm = util::parse_double(f[6]);
    if (!method || !node || !level || !p || !r || !fm || (f[3] != "specific" && f[3] != "generic")) {
      throw input_error("queryeval", where, "malformed metrics row");
    }
    rows.push_back({*method, *node, *level, f[3] == "specific" ? QueryKind::specific : QueryKind::generic, *p, *r,
                    *fm});
  });
  return rows;
}

}  // namespace hierlabel::queryeval
