#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "hierlabel/error.hpp"

namespace hierlabel::labeling {

enum class MethodId {
  MTWL_raw,
  MTWL_idf,
  ICWL_raw,
  ICWL_idf,
  HierMTWL_raw,
  HierMTWL_idf,
  HierICWL_raw,
  HierICWL_idf,
  RCL_chi2,
  RCL_jsd,
  HierRCL_chi2,
  HierRCL_jsd,
  PopesculUngar,
  RLUM,
  CFAverage,
  CFLeaveOneOut,
};

inline constexpr std::array<MethodId, 16> kAllMethods = {
    MethodId::MTWL_raw,     MethodId::MTWL_idf,     MethodId::ICWL_raw,     MethodId::ICWL_idf,
    MethodId::HierMTWL_raw, MethodId::HierMTWL_idf, MethodId::HierICWL_raw, MethodId::HierICWL_idf,
    MethodId::RCL_chi2,     MethodId::RCL_jsd,      MethodId::HierRCL_chi2, MethodId::HierRCL_jsd,
    MethodId::PopesculUngar, MethodId::RLUM,        MethodId::CFAverage,    MethodId::CFLeaveOneOut,
};

inline constexpr std::string_view method_name(MethodId m) {
  switch (m) {
    case MethodId::MTWL_raw: return "MTWL_raw";
    case MethodId::MTWL_idf: return "MTWL_idf";
    case MethodId::ICWL_raw: return "ICWL_raw";
    case MethodId::ICWL_idf: return "ICWL_idf";
    case MethodId::HierMTWL_raw: return "HierMTWL_raw";
    case MethodId::HierMTWL_idf: return "HierMTWL_idf";
    case MethodId::HierICWL_raw: return "HierICWL_raw";
    case MethodId::HierICWL_idf: return "HierICWL_idf";
    case MethodId::RCL_chi2: return "RCL_chi2";
    case MethodId::RCL_jsd: return "RCL_jsd";
    case MethodId::HierRCL_chi2: return "HierRCL_chi2";
    case MethodId::HierRCL_jsd: return "HierRCL_jsd";
    case MethodId::PopesculUngar: return "PopesculUngar";
    case MethodId::RLUM: return "RLUM";
    case MethodId::CFAverage: return "CFAverage";
    case MethodId::CFLeaveOneOut: return "CFLeaveOneOut";
  }
  return "?";
}

inline std::optional<MethodId> parse_method(std::string_view name) {
  for (MethodId m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

/// Methods that score every (node, term) independently and keep the top P.
inline constexpr bool is_ranking_method(MethodId m) {
  switch (m) {
    case MethodId::PopesculUngar:
    case MethodId::RLUM:
    case MethodId::CFAverage:
    case MethodId::CFLeaveOneOut:
      return false;
    default:
      return true;
  }
}

inline constexpr bool is_hier_method(MethodId m) {
  switch (m) {
    case MethodId::HierMTWL_raw:
    case MethodId::HierMTWL_idf:
    case MethodId::HierICWL_raw:
    case MethodId::HierICWL_idf:
    case MethodId::HierRCL_chi2:
    case MethodId::HierRCL_jsd:
      return true;
    default:
      return false;
  }
}

enum class Chi2Shape { full_table, per_child_2x2 };
enum class RclFp { corrected, literal };

struct LabelConfig {
  std::size_t p_cap = 10;
  double alpha = 0.05;
  Chi2Shape chi2_shape = Chi2Shape::full_table;
  RclFp rcl_fp = RclFp::corrected;
  double big_threshold = 5.0;     // RLUM: some child frequency must reach this
  double popescul_min_freq = 5.0;  // Popescul&Ungar: every child frequency must reach this
  bool popescul_leaf_fill = true;
  std::size_t threads = 1;

  void validate() const {
    if (p_cap < 1) throw config_error("p_cap", "P must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw config_error("alpha", "alpha must lie in (0, 1)");
    if (threads < 1) throw config_error("threads", "threads must be >= 1");
  }
};

}  // namespace hierlabel::labeling
