#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zcc/center.hpp"

namespace zcc {

/// Parsed problem description. Coefficients and sample points are exact
/// literals; only tracker settings accept floating point.
struct Problem {
  std::string name;
  Polynomial f;
  Polynomial g;
  std::vector<long> weights;
  std::optional<GaussRational> base_t0;
  TrackerConfig tracker;
  std::uint64_t seed = 0;
  std::vector<GaussRational> melnikov_t;
  /// Externally reported value of M2 at melnikov_t[0], compared in the report.
  std::optional<GaussRational> m2_reference;
};

/// Flat `key = value` table; `#` starts a comment. Throws InvalidInput.
Problem parse_problem(std::string_view text);
Problem load_problem(const std::string& path);

/// Text form accepted by parse_problem.
std::string to_text(const Problem& p);

/// The two worked examples: 1 (z^6 with z^3 + z^2) and 2 (z^4 with z^4/2 + z^2 + 1/3).
Problem builtin_problem(int which);

/// Deformation and cycle at the base point; validates degrees and weights.
struct Setup {
  Deformation d;
  ZeroCycle cycle;
};
Setup build(const Problem& p, int max_degree);

}  // namespace zcc
