#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hierlabel/corpus/types.hpp"
#include "hierlabel/error.hpp"
#include "hierlabel/util/text.hpp"

namespace hierlabel::corpus {

/// A node record as it appears in the hierarchy file, before validation.
struct NodeRecord {
  std::int64_t id = 0;
  std::optional<std::int64_t> parent;
  std::vector<std::int64_t> children;
  std::vector<std::int64_t> docs;
};

/// Validated cluster tree. Node ids are dense 0..size()-1; documents live
/// only at leaves. Documents are laid out in depth-first leaf order so the
/// docset of every node is a contiguous slice.
class Hierarchy {
 public:
  Hierarchy() = default;

  static Hierarchy build(const std::vector<NodeRecord>& records, std::size_t n_docs) {
    Hierarchy h;
    const std::size_t n = records.size();
    if (n == 0) throw input_error("corpus", "hierarchy", "no nodes");
    auto node_name = [](std::int64_t id) { return "node " + std::to_string(id); };

    std::vector<const NodeRecord*> by_id(n, nullptr);
    for (const NodeRecord& r : records) {
      if (r.id < 0 || static_cast<std::size_t>(r.id) >= n) {
        throw input_error("corpus", node_name(r.id), "node id out of range (ids must be 0..n-1)");
      }
      if (by_id[r.id]) throw input_error("corpus", node_name(r.id), "duplicate node id");
      by_id[r.id] = &r;
    }

    h.parent_.assign(n, kNone);
    h.children_.resize(n);
    std::optional<NodeId> root;
    for (NodeId id = 0; id < n; ++id) {
      const NodeRecord& r = *by_id[id];
      if (!r.parent) {
        if (root) throw input_error("corpus", node_name(id), "multiple roots (also node " + std::to_string(*root) + ")");
        root = id;
        continue;
      }
      if (*r.parent == r.id) throw input_error("corpus", node_name(id), "cycle: node is its own parent");
      if (*r.parent < 0 || static_cast<std::size_t>(*r.parent) >= n) {
        throw input_error("corpus", node_name(id), "orphan node: parent " + std::to_string(*r.parent) + " does not exist");
      }
      h.parent_[id] = static_cast<NodeId>(*r.parent);
    }
    if (!root) throw input_error("corpus", "hierarchy", "cycle: no root node");
    h.root_ = *root;

    for (NodeId id = 0; id < n; ++id) {
      for (std::int64_t c : by_id[id]->children) {
        if (c < 0 || static_cast<std::size_t>(c) >= n) {
          throw input_error("corpus", node_name(id), "child " + std::to_string(c) + " does not exist");
        }
        if (h.parent_[c] != id) {
          throw input_error("corpus", node_name(id),
                            "inconsistent links: child " + std::to_string(c) + " does not name this node as parent");
        }
        h.children_[id].push_back(static_cast<NodeId>(c));
      }
      auto& ch = h.children_[id];
      std::vector<NodeId> sorted = ch;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw input_error("corpus", node_name(id), "duplicate child");
      }
    }
    for (NodeId id = 0; id < n; ++id) {
      if (id == h.root_) continue;
      const auto& sib = h.children_[h.parent_[id]];
      if (std::find(sib.begin(), sib.end(), id) == sib.end()) {
        throw input_error("corpus", node_name(id),
                          "inconsistent links: parent " + std::to_string(h.parent_[id]) + " does not list this node");
      }
    }

    // Preorder walk from the root; anything unreached sits on a cycle.
    h.level_.assign(n, 0);
    h.preorder_.reserve(n);
    std::vector<NodeId> stack{h.root_};
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      h.preorder_.push_back(v);
      const auto& ch = h.children_[v];
      for (auto it = ch.rbegin(); it != ch.rend(); ++it) {
        h.level_[*it] = h.level_[v] + 1;
        stack.push_back(*it);
      }
    }
    if (h.preorder_.size() != n) {
      std::vector<bool> seen(n, false);
      for (NodeId v : h.preorder_) seen[v] = true;
      for (NodeId v = 0; v < n; ++v) {
        if (!seen[v]) throw input_error("corpus", node_name(v), "cycle: node not reachable from root");
      }
    }

    std::vector<std::int64_t> owner(n_docs, -1);
    for (NodeId id = 0; id < n; ++id) {
      const auto& docs = by_id[id]->docs;
      const bool leaf = h.children_[id].empty();
      if (!leaf && !docs.empty()) throw input_error("corpus", node_name(id), "documents on internal node");
      if (leaf && docs.empty()) throw input_error("corpus", node_name(id), "empty leaf");
      for (std::int64_t d : docs) {
        if (d < 0 || static_cast<std::size_t>(d) >= n_docs) {
          throw input_error("corpus", node_name(id), "doc-id " + std::to_string(d) + " out of range");
        }
        if (owner[d] != -1) {
          throw input_error("corpus", node_name(id),
                            "doc " + std::to_string(d) + " assigned to two leaves (also node " +
                                std::to_string(owner[d]) + ")");
        }
        owner[d] = id;
      }
    }
    for (std::size_t d = 0; d < n_docs; ++d) {
      if (owner[d] == -1) throw input_error("corpus", "doc " + std::to_string(d), "doc unassigned to any leaf");
    }

    h.range_.assign(n, {0, 0});
    h.doc_order_.reserve(n_docs);
    h.leaf_docs_.resize(n);
    // Leaves append their docs in preorder, so every subtree owns a contiguous slice.
    for (NodeId v : h.preorder_) {
      if (h.children_[v].empty()) {
        std::size_t begin = h.doc_order_.size();
        for (std::int64_t d : by_id[v]->docs) h.doc_order_.push_back(static_cast<DocId>(d));
        h.range_[v] = {begin, h.doc_order_.size()};
        h.leaf_docs_[v].assign(h.doc_order_.begin() + begin, h.doc_order_.end());
      }
    }
    for (auto it = h.preorder_.rbegin(); it != h.preorder_.rend(); ++it) {
      NodeId v = *it;
      if (h.children_[v].empty()) continue;
      h.range_[v] = {h.range_[h.children_[v].front()].first, h.range_[h.children_[v].back()].second};
    }
    for (NodeId v = 0; v < n; ++v) h.max_level_ = std::max(h.max_level_, h.level_[v]);
    return h;
  }

  std::size_t size() const noexcept { return parent_.size(); }
  NodeId root() const noexcept { return root_; }
  bool is_root(NodeId v) const { return v == root_; }
  bool is_leaf(NodeId v) const { return children_[v].empty(); }

  /// Parent, with the root acting as its own parent.
  NodeId parent_or_self(NodeId v) const { return v == root_ ? root_ : parent_[v]; }
  std::optional<NodeId> parent(NodeId v) const {
    if (v == root_) return std::nullopt;
    return parent_[v];
  }

  std::span<const NodeId> children(NodeId v) const { return children_[v]; }
  std::uint32_t level(NodeId v) const { return level_[v]; }
  std::uint32_t max_level() const noexcept { return max_level_; }

  std::span<const DocId> leaf_docs(NodeId v) const { return leaf_docs_[v]; }

  /// All documents under v (inclusive), in depth-first leaf order.
  std::span<const DocId> docset(NodeId v) const {
    return {doc_order_.data() + range_[v].first, doc_order_.data() + range_[v].second};
  }

  /// Root first; every parent precedes its children.
  std::span<const NodeId> preorder() const { return preorder_; }

  std::vector<NodeId> nodes_at_level(std::uint32_t l) const {
    std::vector<NodeId> out;
    for (NodeId v : preorder_) {
      if (level_[v] == l) out.push_back(v);
    }
    return out;
  }

  /// Proper descendants of v with their edge distance from v, preorder.
  template <typename Fn>
  void for_each_descendant(NodeId v, Fn&& fn) const {
    std::vector<std::pair<NodeId, std::uint32_t>> stack;
    for (auto it = children_[v].rbegin(); it != children_[v].rend(); ++it) stack.push_back({*it, 1});
    while (!stack.empty()) {
      auto [g, e] = stack.back();
      stack.pop_back();
      fn(g, e);
      for (auto it = children_[g].rbegin(); it != children_[g].rend(); ++it) stack.push_back({*it, e + 1});
    }
  }

  std::vector<NodeRecord> records() const {
    std::vector<NodeRecord> out(size());
    for (NodeId v = 0; v < size(); ++v) {
      out[v].id = v;
      if (v != root_) out[v].parent = parent_[v];
      out[v].children.assign(children_[v].begin(), children_[v].end());
      out[v].docs.assign(leaf_docs_[v].begin(), leaf_docs_[v].end());
    }
    return out;
  }

 private:
  static constexpr NodeId kNone = static_cast<NodeId>(-1);

  NodeId root_ = 0;
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::uint32_t> level_;
  std::uint32_t max_level_ = 0;
  std::vector<NodeId> preorder_;
  std::vector<DocId> doc_order_;
  std::vector<std::pair<std::size_t, std::size_t>> range_;
  std::vector<std::vector<DocId>> leaf_docs_;
};

inline std::vector<NodeRecord> parse_hierarchy_records(std::string_view text, const std::string& source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw input_error("corpus", source, std::string("parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array()) {
    throw input_error("corpus", source, "expected {\"nodes\": [...]}");
  }
  std::vector<NodeRecord> out;
  std::size_t index = 0;
  for (const auto& node : j["nodes"]) {
    const std::string where = source + " nodes[" + std::to_string(index++) + "]";
    try {
      NodeRecord r;
      r.id = node.at("id").get<std::int64_t>();
      const auto& p = node.at("parent");
      if (!p.is_null()) r.parent = p.get<std::int64_t>();
      if (node.contains("children")) r.children = node["children"].get<std::vector<std::int64_t>>();
      if (node.contains("docs")) r.docs = node["docs"].get<std::vector<std::int64_t>>();
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw input_error("corpus", where, std::string("bad node record: ") + e.what());
    }
  }
  return out;
}

inline Hierarchy parse_hierarchy(std::string_view text, std::size_t n_docs, const std::string& source = "<hierarchy>") {
  return Hierarchy::build(parse_hierarchy_records(text, source), n_docs);
}

inline Hierarchy load_hierarchy(const std::string& path, std::size_t n_docs) {
  return parse_hierarchy(util::read_file(path, "corpus"), n_docs, path);
}

inline std::string format_hierarchy(const Hierarchy& h) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const NodeRecord& r : h.records()) {
    nlohmann::json node;
    node["id"] = r.id;
    node["parent"] = r.parent ? nlohmann::json(*r.parent) : nlohmann::json(nullptr);
    node["children"] = r.children;
    node["docs"] = r.docs;
    nodes.push_back(std::move(node));
  }
  nlohmann::json doc;
  doc["nodes"] = std::move(nodes);
  return doc.dump() + "\n";
}

inline void save_hierarchy(const Hierarchy& h, const std::string& path) {
  util::write_file(path, format_hierarchy(h), "corpus");
}

}  // namespace hierlabel::corpus
