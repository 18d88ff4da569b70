#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>

#include "nctorus/cli/documents.hpp"

namespace nctorus::cli {

enum ExitCode : int { kSuccess = 0, kValidation = 1, kTolerance = 2, kNumeric = 3 };

/// A computed quantity exceeded its tolerance.
class ToleranceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandContext {
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
};

/// {"a": element, "b": element, "sigma": cocycle} -> element document.
void cmd_star(const Json& config, const CommandContext& ctx, std::ostream& out);

/// {"a", "b", "form", "hbar": [..], "window"} -> CSV "hbar,defect", hbar descending.
void cmd_semiclassical(const Json& config, const CommandContext& ctx, std::ostream& out);

/// {"moduli": [..], "matrix": [[..]], "trials"} -> JSON report; ToleranceFailure above tolerance.
void cmd_kasprzak_verify(const Json& config, const CommandContext& ctx, std::ostream& out);

/// {"samples", "hbar"} -> CSV "y,re,im" on a circle grid.
void cmd_heisenberg(const Json& config, const CommandContext& ctx, std::ostream& out);

/// {"element", "form", "hbar", "windows": [..]} -> CSV "window,estimate".
void cmd_norm(const Json& config, const CommandContext& ctx, std::ostream& out);

/// {"group", "action" | "points", "modulus", "tau"} -> JSON solution report.
void cmd_automorphy_solve(const Json& config, const CommandContext& ctx, std::ostream& out);

/// Runs `body`, printing a diagnostic to `err` and mapping the exception type to an exit code.
int guarded(const std::function<void()>& body, std::ostream& err);

/// Reads a JSON document from a path, or from standard input when the path is empty or "-".
Json read_document(const std::string& path);

}  // namespace nctorus::cli
