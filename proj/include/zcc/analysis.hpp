#pragma once

#include <string>
#include <vector>

#include "zcc/problem.hpp"

namespace zcc {

inline constexpr const char* version_string = "0.3.0";

struct AnalysisOptions {
  int max_degree = 12;
  /// Overrides tracker.newton_tol when positive.
  double tol = 0.0;
  /// Overrides the problem seed when set.
  std::optional<std::uint64_t> seed;
};

/// Full report as a JSON document (deterministic for fixed inputs).
std::string analyze_json(const Problem& p, const AnalysisOptions& opt);

/// Short human-readable summary of the same analysis.
std::string summary_text(const Problem& p, const AnalysisOptions& opt);

struct GridSpec {
  double eps_start = 0.0;
  double eps_stop = 0.0;
  double eps_step = 0.0;
  /// Circle |t| = radius when positive, otherwise the segment seg_from..seg_to.
  double radius = 0.0;
  Complex seg_from{};
  Complex seg_to{};
  int t_points = 12;
};

/// Parses "a:b:c" (eps range) into the spec. Throws InvalidInput.
void parse_eps_range(const std::string& text, GridSpec& spec);
/// Parses "z1:z2" with complex literals like 1, 2.5-0.5i, i.
void parse_t_segment(const std::string& text, GridSpec& spec);

struct GridResult {
  std::string csv;
  std::vector<std::string> warnings;
};

/// Displacement on every (t, eps) grid point. Points near a bad eps or where
/// tracking fails become flagged rows with NaN values.
GridResult grid_csv(const Problem& p, const GridSpec& spec, const AnalysisOptions& opt);

}  // namespace zcc
