#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nctorus/cli/documents.hpp"
#include "nctorus/deform.hpp"

namespace nctorus::cli {

struct SuiteOptions {
  /// Criterion ids to run; empty runs all.
  std::set<int> only;
  std::uint64_t seed = 0;
  /// Bracket scale used by the semiclassical criterion (mutation control).
  double bracket_scale = kBracketScale;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 13;

/// Short machine name of a criterion, e.g. "delta-relation".
std::string criterion_name(int id);

/// Parses "1,4,7" or criterion names into ids; ValidationError on unknown entries.
std::set<int> parse_selection(const std::string& text);

std::vector<CriterionResult> run_suite(const SuiteOptions& options);

/// "PASS  4 semiclassical-limit  detail"
std::string format_line(const CriterionResult& r);
Json summary_json(const std::vector<CriterionResult>& results, const SuiteOptions& options);

}  // namespace nctorus::cli
