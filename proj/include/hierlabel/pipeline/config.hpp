#pragma once

#include <filesystem>
#include <json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hierlabel/coherence/npmi.hpp"
#include "hierlabel/error.hpp"
#include "hierlabel/labeling/method.hpp"
#include "hierlabel/util/text.hpp"

namespace hierlabel::pipeline {

struct DfFilterBounds {
  double low = 0.0;
  double high = 1.0;
};

/// Everything a run needs. Paths are resolved against the config file's
/// directory when relative.
struct RunConfig {
  std::string matrix, vocabulary, hierarchy, reference;
  std::string output_dir = "out";
  std::size_t p_cap = 10;
  double alpha = 0.05;
  std::vector<labeling::MethodId> methods{labeling::kAllMethods.begin(), labeling::kAllMethods.end()};
  std::size_t threads = 1;
  labeling::Chi2Shape chi2_shape = labeling::Chi2Shape::full_table;
  labeling::RclFp rcl_fp = labeling::RclFp::corrected;
  coherence::Aggregate oc_aggregate = coherence::Aggregate::sum;
  double big_threshold = 5.0;
  double popescul_min_freq = 5.0;
  bool popescul_leaf_fill = true;
  double npmi_epsilon = 0.0;
  std::optional<DfFilterBounds> df_filter;

  void validate() const {
    if (matrix.empty()) throw config_error("matrix", "path to the document-term matrix is required");
    if (hierarchy.empty()) throw config_error("hierarchy", "path to the hierarchy is required");
    if (p_cap < 1) throw config_error("p_cap", "P must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw config_error("alpha", "alpha must lie in (0, 1)");
    if (methods.empty()) throw config_error("methods", "method list is empty");
    if (std::set<labeling::MethodId>(methods.begin(), methods.end()).size() != methods.size()) {
      throw config_error("methods", "method listed twice");
    }
    if (threads < 1) throw config_error("threads", "threads must be >= 1");
    if (!(big_threshold >= 0)) throw config_error("big_threshold", "must be >= 0");
    if (!(popescul_min_freq >= 0)) throw config_error("popescul_min_freq", "must be >= 0");
    if (!(npmi_epsilon >= 0)) throw config_error("npmi_epsilon", "must be >= 0");
    if (df_filter && !(df_filter->low >= 0.0 && df_filter->low < df_filter->high && df_filter->high <= 1.0)) {
      throw config_error("df_filter", "bounds must satisfy 0 <= low < high <= 1");
    }
  }

  labeling::LabelConfig label_config() const {
    labeling::LabelConfig c;
    c.p_cap = p_cap;
    c.alpha = alpha;
    c.chi2_shape = chi2_shape;
    c.rcl_fp = rcl_fp;
    c.big_threshold = big_threshold;
    c.popescul_min_freq = popescul_min_freq;
    c.popescul_leaf_fill = popescul_leaf_fill;
    c.threads = threads;
    return c;
  }

  coherence::NpmiOptions npmi_options() const { return {npmi_epsilon, oc_aggregate}; }

  /// Effective settings for the manifest. Thread count and output location
  /// do not affect results and are left out.
  nlohmann::json echo() const {
    nlohmann::json j;
    j["matrix"] = matrix;
    j["vocabulary"] = vocabulary;
    j["hierarchy"] = hierarchy;
    j["reference"] = reference;
    j["p_cap"] = p_cap;
    j["alpha"] = alpha;
    nlohmann::json ms = nlohmann::json::array();
    for (auto m : methods) ms.push_back(std::string(labeling::method_name(m)));
    j["methods"] = ms;
    j["chi2_shape"] = chi2_shape == labeling::Chi2Shape::full_table ? "full_table" : "per_child_2x2";
    j["rcl_fp"] = rcl_fp == labeling::RclFp::corrected ? "corrected" : "literal";
    j["oc_aggregate"] = oc_aggregate == coherence::Aggregate::sum ? "sum" : "mean";
    j["big_threshold"] = big_threshold;
    j["popescul_min_freq"] = popescul_min_freq;
    j["popescul_leaf_fill"] = popescul_leaf_fill;
    j["npmi_epsilon"] = npmi_epsilon;
    if (df_filter) j["df_filter"] = {{"low", df_filter->low}, {"high", df_filter->high}};
    return j;
  }
};

inline std::vector<labeling::MethodId> parse_method_list(const std::vector<std::string>& names) {
  std::vector<labeling::MethodId> out;
  for (const auto& n : names) {
    auto m = labeling::parse_method(n);
    if (!m) throw config_error("methods", "unknown method \"" + n + "\"");
    out.push_back(*m);
  }
  return out;
}

inline std::vector<std::string> split_list(std::string_view csv) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t end = csv.find(',', pos);
    if (end == std::string_view::npos) end = csv.size();
    std::string item(csv.substr(pos, end - pos));
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first != std::string::npos) out.push_back(item.substr(first, last - first + 1));
    pos = end + 1;
  }
  return out;
}

namespace detail {

template <typename T>
T get(const nlohmann::json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw config_error(key, std::string("bad value: ") + e.what());
  }
}

inline std::string resolve(const std::filesystem::path& base, const std::string& p) {
  if (p.empty()) return p;
  const std::filesystem::path path(p);
  return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

}  // namespace detail

/// Parses the JSON config. Unknown keys are rejected.
inline RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir,
                              const std::string& source = "<config>") {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(source, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error(source, "config must be a JSON object");
  static const std::set<std::string> known = {
      "matrix",       "vocabulary",    "hierarchy",         "reference",          "output_dir",
      "p_cap",        "alpha",         "methods",           "threads",            "chi2_shape",
      "rcl_fp",       "oc_aggregate",  "big_threshold",     "popescul_min_freq",  "popescul_leaf_fill",
      "npmi_epsilon", "df_filter"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw config_error(key, "unknown config key");
  }
  RunConfig c;
  using detail::get;
  if (j.contains("matrix")) c.matrix = detail::resolve(base_dir, get<std::string>(j, "matrix"));
  if (j.contains("vocabulary")) c.vocabulary = detail::resolve(base_dir, get<std::string>(j, "vocabulary"));
  if (j.contains("hierarchy")) c.hierarchy = detail::resolve(base_dir, get<std::string>(j, "hierarchy"));
  if (j.contains("reference")) c.reference = detail::resolve(base_dir, get<std::string>(j, "reference"));
  if (j.contains("output_dir")) c.output_dir = detail::resolve(base_dir, get<std::string>(j, "output_dir"));
  if (j.contains("p_cap")) {
    const auto p = get<long long>(j, "p_cap");
    if (p < 1) throw config_error("p_cap", "P must be >= 1");
    c.p_cap = static_cast<std::size_t>(p);
  }
  if (j.contains("alpha")) c.alpha = get<double>(j, "alpha");
  if (j.contains("methods")) c.methods = parse_method_list(get<std::vector<std::string>>(j, "methods"));
  if (j.contains("threads")) {
    const auto t = get<long long>(j, "threads");
    if (t < 1) throw config_error("threads", "threads must be >= 1");
    c.threads = static_cast<std::size_t>(t);
  }
  if (j.contains("chi2_shape")) {
    const auto s = get<std::string>(j, "chi2_shape");
    if (s == "full_table") {
      c.chi2_shape = labeling::Chi2Shape::full_table;
    } else if (s == "per_child_2x2") {
      c.chi2_shape = labeling::Chi2Shape::per_child_2x2;
    } else {
      throw config_error("chi2_shape", "expected full_table or per_child_2x2");
    }
  }
  if (j.contains("rcl_fp")) {
    const auto s = get<std::string>(j, "rcl_fp");
    if (s == "corrected") {
      c.rcl_fp = labeling::RclFp::corrected;
    } else if (s == "literal") {
      c.rcl_fp = labeling::RclFp::literal;
    } else {
      throw config_error("rcl_fp", "expected corrected or literal");
    }
  }
  if (j.contains("oc_aggregate")) {
    auto a = coherence::parse_aggregate(get<std::string>(j, "oc_aggregate"));
    if (!a) throw config_error("oc_aggregate", "expected sum or mean");
    c.oc_aggregate = *a;
  }
  if (j.contains("big_threshold")) c.big_threshold = get<double>(j, "big_threshold");
  if (j.contains("popescul_min_freq")) c.popescul_min_freq = get<double>(j, "popescul_min_freq");
  if (j.contains("popescul_leaf_fill")) c.popescul_leaf_fill = get<bool>(j, "popescul_leaf_fill");
  if (j.contains("npmi_epsilon")) c.npmi_epsilon = get<double>(j, "npmi_epsilon");
  if (j.contains("df_filter") && !j["df_filter"].is_null()) {
    const auto& d = j["df_filter"];
    if (!d.is_object() || !d.contains("low") || !d.contains("high")) {
      throw config_error("df_filter", "expected {\"low\": x, \"high\": y}");
    }
    c.df_filter = DfFilterBounds{get<double>(d, "low"), get<double>(d, "high")};
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = util::read_file(path, "config");
  } catch (const Error&) {
    throw config_error(path, "cannot read config file");
  }
  return parse_config(text, std::filesystem::path(path).parent_path(), path);
}

/// Command-line values that take precedence over the file.
struct Overrides {
  std::optional<std::size_t> threads;
  std::optional<std::string> methods;
  std::optional<std::size_t> p_cap;
  std::optional<double> alpha;
  std::optional<std::string> output_dir;

  void apply(RunConfig& c) const {
    if (threads) c.threads = *threads;
    if (methods) c.methods = parse_method_list(split_list(*methods));
    if (p_cap) c.p_cap = *p_cap;
    if (alpha) c.alpha = *alpha;
    if (output_dir) c.output_dir = *output_dir;
  }
};

}  // namespace hierlabel::pipeline
