#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hierlabel/corpus/types.hpp"
#include "hierlabel/error.hpp"
#include "hierlabel/util/text.hpp"

namespace hierlabel::corpus {

/// Dense term-id <-> surface mapping. Ids are 0..size()-1, surfaces unique.
class Vocabulary {
 public:
  Vocabulary() = default;

  explicit Vocabulary(std::vector<std::string> surfaces) : surfaces_(std::move(surfaces)) {
    index_.reserve(surfaces_.size());
    for (TermId id = 0; id < surfaces_.size(); ++id) {
      const std::string& s = surfaces_[id];
      if (s.empty()) throw input_error("corpus", "term " + std::to_string(id), "empty surface");
      if (!index_.emplace(s, id).second) {
        throw input_error("corpus", "term " + std::to_string(id), "duplicate surface \"" + s + "\"");
      }
    }
  }

  /// Placeholder vocabulary t0, t1, ... for runs without a vocabulary file.
  static Vocabulary synthetic(std::size_t n_terms) {
    std::vector<std::string> s;
    s.reserve(n_terms);
    for (std::size_t i = 0; i < n_terms; ++i) s.push_back("t" + std::to_string(i));
    return Vocabulary(std::move(s));
  }

  std::size_t size() const noexcept { return surfaces_.size(); }
  const std::string& surface(TermId id) const { return surfaces_.at(id); }

  std::optional<TermId> find(std::string_view surface) const {
    auto it = index_.find(std::string(surface));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Vocabulary restricted to `kept` (new id -> old id), as produced by the df filter.
  Vocabulary remap(std::span<const TermId> kept) const {
    std::vector<std::string> s;
    s.reserve(kept.size());
    for (TermId old : kept) s.push_back(surface(old));
    return Vocabulary(std::move(s));
  }

 private:
  std::vector<std::string> surfaces_;
  std::unordered_map<std::string, TermId> index_;
};

/// One "term_id<TAB>surface" per line; ids must cover 0..m-1 exactly once.
inline Vocabulary parse_vocabulary(std::string_view text, const std::string& source = "<vocabulary>") {
  std::vector<std::optional<std::string>> slots;
  util::for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    const std::string where = source + ":" + std::to_string(line_no);
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw input_error("corpus", where, "parse error: expected \"term_id<TAB>surface\"");
    auto id = util::parse_int<std::uint32_t>(line.substr(0, tab));
    if (!id) throw input_error("corpus", where, "parse error: bad term id");
    std::string surface(line.substr(tab + 1));
    if (surface.empty()) throw input_error("corpus", where, "empty surface");
    if (*id >= slots.size()) slots.resize(*id + 1);
    if (slots[*id]) throw input_error("corpus", where, "duplicate term id " + std::to_string(*id));
    slots[*id] = std::move(surface);
  });
  std::vector<std::string> surfaces;
  surfaces.reserve(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) throw input_error("corpus", source, "term ids not contiguous: missing " + std::to_string(i));
    surfaces.push_back(std::move(*slots[i]));
  }
  return Vocabulary(std::move(surfaces));
}

inline Vocabulary load_vocabulary(const std::string& path) {
  return parse_vocabulary(util::read_file(path, "corpus"), path);
}

inline std::string format_vocabulary(const Vocabulary& v) {
  std::string out;
  for (TermId id = 0; id < v.size(); ++id) out += std::to_string(id) + "\t" + v.surface(id) + "\n";
  return out;
}

}  // namespace hierlabel::corpus
