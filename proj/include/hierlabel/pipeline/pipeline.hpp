#pragma once

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hierlabel/coherence/npmi.hpp"
#include "hierlabel/corpus/df_filter.hpp"
#include "hierlabel/corpus/hierarchy.hpp"
#include "hierlabel/corpus/matrix.hpp"
#include "hierlabel/corpus/node_stats.hpp"
#include "hierlabel/corpus/vocabulary.hpp"
#include "hierlabel/labeling/label_io.hpp"
#include "hierlabel/labeling/labeling.hpp"
#include "hierlabel/pipeline/config.hpp"
#include "hierlabel/queryeval/evaluation.hpp"
#include "hierlabel/stats/analysis.hpp"

namespace hierlabel::pipeline {

namespace fs = std::filesystem;

inline const std::string kLabelsFile = "labels.csv";
inline const std::string kMetricsFile = "metrics.csv";
inline const std::string kCoherenceFile = "coherence.csv";
inline const std::string kCoherenceSummaryFile = "coherence_summary.csv";
inline const std::string kManifestFile = "manifest.json";
inline const std::string kPlotDir = "plots";

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::internal, "cli", "", "SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

/// Matrix, vocabulary and hierarchy after the optional df filter.
struct Inputs {
  corpus::DocTermMatrix matrix;
  corpus::Vocabulary vocabulary;
  corpus::Hierarchy hierarchy;
  std::size_t n_terms_before_filter = 0;
};

inline Inputs load_inputs(const RunConfig& cfg) {
  auto m = corpus::load_matrix(cfg.matrix);
  corpus::Vocabulary v =
      cfg.vocabulary.empty() ? corpus::Vocabulary::synthetic(m.n_terms()) : corpus::load_vocabulary(cfg.vocabulary);
  if (v.size() != m.n_terms()) {
    throw input_error("corpus", cfg.vocabulary,
                      "vocabulary has " + std::to_string(v.size()) + " terms but the matrix has " +
                          std::to_string(m.n_terms()));
  }
  auto h = corpus::load_hierarchy(cfg.hierarchy, m.n_docs());
  const std::size_t before = m.n_terms();
  if (cfg.df_filter) {
    auto f = corpus::salton_df_filter(m, cfg.df_filter->low, cfg.df_filter->high);
    v = v.remap(f.kept);
    m = std::move(f.matrix);
  }
  return {std::move(m), std::move(v), std::move(h), before};
}

/// Collects a stage's files and writes them only when the stage succeeds:
/// everything goes to *.partial first and is renamed at the end; on failure
/// the partial files are deleted.
class StagedOutput {
 public:
  explicit StagedOutput(fs::path dir) : dir_(std::move(dir)) {}

  void add(const std::string& rel, std::string content) { files_[rel] = std::move(content); }

  /// Files matching a prefix/suffix that this stage owns and replaces.
  void replaces(std::string rel_dir, std::string prefix, std::string suffix) {
    owned_.push_back({std::move(rel_dir), std::move(prefix), std::move(suffix)});
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : files_) out.push_back(k);
    return out;
  }

  void commit() {
    std::vector<fs::path> partial;
    try {
      fs::create_directories(dir_);
      for (const auto& [rel, content] : files_) {
        const fs::path target = dir_ / rel;
        fs::create_directories(target.parent_path());
        partial.push_back(fs::path(target.string() + ".partial"));
        util::write_file(partial.back().string(), content, "cli");
      }
      for (const auto& o : owned_) {
        const fs::path d = dir_ / o.dir;
        if (!fs::is_directory(d)) continue;
        for (const auto& e : fs::directory_iterator(d)) {
          const std::string name = e.path().filename().string();
          const std::string rel = (fs::path(o.dir) / name).lexically_normal().string();
          if (e.is_regular_file() && name.starts_with(o.prefix) && name.ends_with(o.suffix) && !files_.count(rel)) {
            fs::remove(e.path());
          }
        }
      }
      std::size_t i = 0;
      for (const auto& [rel, content] : files_) fs::rename(partial[i++], dir_ / rel);
    } catch (...) {
      std::error_code ec;
      for (const auto& p : partial) fs::remove(p, ec);
      throw;
    }
  }

 private:
  struct Owned {
    std::string dir, prefix, suffix;
  };
  fs::path dir_;
  std::map<std::string, std::string> files_;
  std::vector<Owned> owned_;
};

/// First line of the labels file: which methods were labeled. Methods whose
/// labels are all empty have no rows, so this is the record of them.
inline std::string methods_comment(const std::vector<labeling::MethodId>& methods) {
  std::string s = "# methods=";
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (i) s += ';';
    s += labeling::method_name(methods[i]);
  }
  return s + "\n";
}

inline std::vector<labeling::MethodId> recorded_methods(std::string_view labels_text, const std::string& source) {
  const std::string_view prefix = "# methods=";
  if (!labels_text.starts_with(prefix)) throw input_error("cli", source, "labels file lacks its methods line");
  const auto end = labels_text.find('\n');
  std::string list(labels_text.substr(prefix.size(), end - prefix.size()));
  std::replace(list.begin(), list.end(), ';', ',');
  try {
    return parse_method_list(split_list(list));
  } catch (const Error& e) {
    throw input_error("cli", source, e.what());
  }
}

class Pipeline {
 public:
  Pipeline(RunConfig cfg, bool dry_run, std::ostream& log) : cfg_(std::move(cfg)), dry_run_(dry_run), log_(log) {
    cfg_.validate();
  }

  const RunConfig& config() const { return cfg_; }

  /// Loads and checks config and every input; writes nothing.
  void validate() {
    Inputs in = load_inputs(cfg_);
    log_ << "validate: " << in.matrix.n_docs() << " docs, " << in.matrix.n_terms() << " terms";
    if (cfg_.df_filter) log_ << " (" << in.n_terms_before_filter << " before df filter)";
    log_ << ", " << in.hierarchy.size() << " nodes, " << (in.hierarchy.max_level() + 1) << " levels, "
         << cfg_.methods.size() << " methods\n";
    if (!cfg_.reference.empty()) {
      const auto docs = coherence::tokenize_reference(util::read_file(cfg_.reference, "coherence"), in.vocabulary,
                                                      cfg_.reference);
      log_ << "validate: reference corpus has " << docs.size() << " documents\n";
    }
  }

  void label() {
    Inputs in = load_inputs(cfg_);
    if (dry_run_) return plan({kLabelsFile});
    corpus::NodeTermStats stats(in.matrix, in.hierarchy);
    auto labels = labeling::select_all(cfg_.methods, stats, cfg_.label_config());
    StagedOutput out(cfg_.output_dir);
    out.add(kLabelsFile, methods_comment(cfg_.methods) + labeling::format_labels(labels, in.vocabulary));
    finish("label", out);
  }

  void evaluate() {
    Inputs in = load_inputs(cfg_);
    auto labels = read_labels(in);
    if (dry_run_) return plan({kMetricsFile});
    auto rows = queryeval::evaluate_all(in.matrix, in.hierarchy, labels, cfg_.threads);
    StagedOutput out(cfg_.output_dir);
    out.add(kMetricsFile, queryeval::format_metrics(rows));
    finish("evaluate", out);
  }

  void stats() {
    auto rows = read_metrics();
    StagedOutput out(cfg_.output_dir);
    out.replaces(".", "stats_", ".csv");
    out.replaces(".", "level_means_", ".csv");
    out.replaces(kPlotDir, "", ".dat");
    if (dry_run_) {
      std::vector<std::string> names;
      for (auto k : queryeval::kQueryKinds) {
        for (auto m : queryeval::kMeasures) {
          const std::string s = std::string(queryeval::measure_name(m)) + "_" + std::string(queryeval::kind_name(k));
          names.push_back("stats_" + s + ".csv");
          names.push_back("stats_levels_" + s + ".csv");
          names.push_back("level_means_" + s + ".csv");
        }
      }
      names.push_back(kPlotDir + "/*.dat");
      return plan(names);
    }
    auto analyses = stats::analyze(rows, cfg_.alpha, cfg_.threads);
    for (const auto& a : analyses) {
      const std::string s = stats::slice_name(a);
      out.add("stats_" + s + ".csv", stats::format_method_report(a, cfg_.alpha));
      out.add("stats_levels_" + s + ".csv", stats::format_level_report(a, cfg_.alpha));
      out.add("level_means_" + s + ".csv", stats::format_level_means(a));
      for (const auto& [method, fit] : a.level_fits) {
        out.add(kPlotDir + "/" + std::string(labeling::method_name(method)) + "_" + s + ".dat",
                stats::format_plot_data(method, a, fit));
      }
    }
    finish("stats", out);
  }

  void coherence() {
    if (cfg_.reference.empty()) throw config_error("reference", "the coherence stage needs a reference corpus");
    Inputs in = load_inputs(cfg_);
    auto labels = read_labels(in);
    const auto docs =
        coherence::tokenize_reference(util::read_file(cfg_.reference, "coherence"), in.vocabulary, cfg_.reference);
    if (dry_run_) return plan({kCoherenceFile, kCoherenceSummaryFile});
    const auto pairs = coherence::label_pairs(labels, cfg_.p_cap);
    const auto counts = coherence::count_cooccurrence(docs, in.vocabulary.size(), &pairs, cfg_.threads);
    const auto report = coherence::score_labels(counts, labels, cfg_.p_cap, cfg_.npmi_options(), cfg_.threads);
    StagedOutput out(cfg_.output_dir);
    out.add(kCoherenceFile, coherence::format_coherence(report));
    out.add(kCoherenceSummaryFile, coherence::format_coherence_summary(report));
    finish("coherence", out);
  }

  /// Every stage in order. Without a reference corpus coherence is skipped.
  void all() {
    if (dry_run_) {
      validate();
      return plan({kLabelsFile, kMetricsFile, "stats_*.csv", "level_means_*.csv", kPlotDir + "/*.dat",
                   kCoherenceFile, kCoherenceSummaryFile});
    }
    label();
    evaluate();
    stats();
    if (cfg_.reference.empty()) {
      log_ << "coherence: skipped (no reference corpus configured)\n";
    } else {
      coherence();
    }
  }

 private:
  std::vector<labeling::LabelAssignment> read_labels(const Inputs& in) {
    const std::string path = (fs::path(cfg_.output_dir) / kLabelsFile).string();
    const std::string text = util::read_file(path, "cli");
    const auto recorded = recorded_methods(text, path);
    auto parsed = labeling::parse_labels(text, in.hierarchy.size(), in.matrix.n_terms(), cfg_.p_cap, path);
    std::vector<labeling::LabelAssignment> out;
    for (auto m : cfg_.methods) {
      if (std::find(recorded.begin(), recorded.end(), m) == recorded.end()) {
        throw input_error("cli", path, "no labels for method " + std::string(labeling::method_name(m)) +
                                           "; rerun the label stage");
      }
      auto it = std::find_if(parsed.begin(), parsed.end(), [&](const auto& a) { return a.method == m; });
      if (it != parsed.end()) {
        out.push_back(std::move(*it));
      } else {
        out.push_back({m, cfg_.p_cap, std::vector<labeling::Label>(in.hierarchy.size())});
      }
    }
    return out;
  }

  queryeval::ObservationTable read_metrics() {
    const std::string path = (fs::path(cfg_.output_dir) / kMetricsFile).string();
    auto rows = queryeval::parse_metrics(util::read_file(path, "cli"), path);
    std::set<labeling::MethodId> present;
    for (const auto& r : rows) present.insert(r.method);
    for (auto m : cfg_.methods) {
      if (!present.count(m)) {
        throw input_error("cli", path, "no metrics for method " + std::string(labeling::method_name(m)) +
                                           "; rerun the evaluate stage");
      }
    }
    std::erase_if(rows, [&](const auto& r) {
      return std::find(cfg_.methods.begin(), cfg_.methods.end(), r.method) == cfg_.methods.end();
    });
    // Method order follows the config, not the file.
    std::stable_sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
      auto pos = [&](labeling::MethodId m) { return std::find(cfg_.methods.begin(), cfg_.methods.end(), m); };
      return pos(a.method) < pos(b.method);
    });
    return rows;
  }

  void plan(const std::vector<std::string>& names) {
    for (const auto& n : names) log_ << "dry-run: would write " << (fs::path(cfg_.output_dir) / n).string() << "\n";
  }

  void finish(const std::string& stage, StagedOutput& out) {
    out.commit();
    write_manifest();
    log_ << stage << ": wrote " << out.names().size() << " file(s) to " << cfg_.output_dir << "\n";
  }

  /// Config echo, input checksums and checksums of every report present.
  void write_manifest() {
    nlohmann::json j;
    j["tool"] = "hierlabel";
    j["config"] = cfg_.echo();
    nlohmann::json inputs = nlohmann::json::object();
    auto add_input = [&](const std::string& key, const std::string& path) {
      if (path.empty()) return;
      inputs[key] = {{"path", path}, {"sha256", sha256_hex(util::read_file(path, "cli"))}};
    };
    add_input("matrix", cfg_.matrix);
    add_input("vocabulary", cfg_.vocabulary);
    add_input("hierarchy", cfg_.hierarchy);
    add_input("reference", cfg_.reference);
    j["inputs"] = inputs;
    nlohmann::json outputs = nlohmann::json::object();
    const fs::path root(cfg_.output_dir);
    std::vector<std::string> rels;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file()) continue;
      const std::string rel = fs::relative(e.path(), root).generic_string();
      if (rel == kManifestFile || rel.ends_with(".partial")) continue;
      rels.push_back(rel);
    }
    std::sort(rels.begin(), rels.end());
    for (const auto& rel : rels) outputs[rel] = sha256_hex(util::read_file((root / rel).string(), "cli"));
    j["outputs"] = outputs;
    util::write_file((root / kManifestFile).string(), j.dump(2) + "\n", "cli");
  }

  RunConfig cfg_;
  bool dry_run_;
  std::ostream& log_;
};

}  // namespace hierlabel::pipeline
