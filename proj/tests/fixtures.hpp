#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hierlabel/corpus/hierarchy.hpp"
#include "hierlabel/corpus/matrix.hpp"
#include "hierlabel/corpus/node_stats.hpp"

namespace fixtures {

using namespace hierlabel;

struct NodeSpec {
  std::optional<std::int64_t> parent;
  std::vector<std::int64_t> docs;
};

/// Node i gets spec[i]; children are collected in id order.
inline std::vector<corpus::NodeRecord> tree(const std::vector<NodeSpec>& spec) {
  std::vector<corpus::NodeRecord> out(spec.size());
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out[i].id = static_cast<std::int64_t>(i);
    out[i].parent = spec[i].parent;
    out[i].docs = spec[i].docs;
    if (spec[i].parent) out[*spec[i].parent].children.push_back(static_cast<std::int64_t>(i));
  }
  return out;
}

struct Instance {
  corpus::DocTermMatrix matrix;
  corpus::Hierarchy hierarchy;

  corpus::NodeTermStats stats() const { return corpus::NodeTermStats(matrix, hierarchy); }
};

/// Node 0 with three leaf children whose totals are 15/17/13 and whose counts
/// of term 0 ("research") are 3/4/3.
inline Instance table2() {
  std::vector<corpus::Cell> cells = {
      {0, 0, 2}, {0, 1, 3}, {0, 3, 4},  // child 1: 15 tokens, research 3
      {1, 0, 1}, {1, 2, 3}, {1, 4, 2},
      {2, 0, 4}, {2, 3, 5},             // child 2: 17 tokens, research 4
      {3, 1, 2}, {3, 4, 6},
      {4, 0, 3}, {4, 2, 2},             // child 3: 13 tokens, research 3
      {5, 3, 8},
  };
  corpus::DocTermMatrix m(6, 5, std::move(cells));
  auto h = corpus::Hierarchy::build(tree({{std::nullopt, {}}, {0, {0, 1}}, {0, {2, 3}}, {0, {4, 5}}}), 6);
  return {std::move(m), std::move(h)};
}

/// Fresh scratch directory under the build tree's temp area.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hierlabel_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixtures
