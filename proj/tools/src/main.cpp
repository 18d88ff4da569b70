#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nctorus/cli/commands.hpp"
#include "nctorus/cli/suite.hpp"
#include "nctorus/errors.hpp"

namespace {

using namespace nctorus::cli;

struct GlobalFlags {
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  double tolerance = 1e-10;
};

/// Writes `text` to the --output path, or to standard output.
void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nctorus::ValidationError("--output: cannot open '" + path + "'");
  out << text;
}

using Command = void (*)(const Json&, const CommandContext&, std::ostream&);

int run_document_command(Command cmd, const GlobalFlags& flags) {
  return guarded(
      [&] {
        const Json config = read_document(flags.input);
        CommandContext ctx;
        ctx.tolerance = flags.tolerance;
        if (flags.seed) {
          ctx.seed = *flags.seed;
        } else if (config.is_object() && config.contains("seed")) {
          const auto& s = config["seed"];
          if (!s.is_number_unsigned()) throw nctorus::ValidationError("seed: expected a non-negative integer");
          ctx.seed = s.get<std::uint64_t>();
        }
        std::ostringstream buffer;
        try {
          cmd(config, ctx, buffer);
        } catch (const ToleranceFailure&) {
          emit(flags.output, buffer.str());
          throw;
        }
        emit(flags.output, buffer.str());
      },
      std::cerr);
}

int run_suite_command(const GlobalFlags& flags, const std::string& only, const std::string& json_path,
                      std::optional<double> scale) {
  int code = kSuccess;
  const int guard = guarded(
      [&] {
        SuiteOptions options;
        if (!only.empty()) options.only = parse_selection(only);
        options.seed = flags.seed.value_or(0);
        if (scale) options.bracket_scale = *scale;
        const auto results = run_suite(options);
        std::ostringstream lines;
        bool all = true;
        for (const auto& r : results) {
          lines << format_line(r) << '\n';
          all = all && r.passed;
        }
        lines << (all ? "ALL PASS" : "SOME FAILED") << " (" << results.size() << " criteria)\n";
        emit(flags.output, lines.str());
        if (!json_path.empty()) {
          std::ofstream js(json_path);
          if (!js) throw nctorus::ValidationError("--json: cannot open '" + json_path + "'");
          js << summary_json(results, options).dump(2) << '\n';
        }
        code = all ? kSuccess : kTolerance;
      },
      std::cerr);
  return guard != kSuccess ? guard : code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deformed products on noncommutative tori and finite groups"};
  app.require_subcommand(1);
  GlobalFlags flags;

  auto add_common = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("--input", flags.input, "JSON config path (default: standard input)");
    sub->add_option("--output", flags.output, "Output path (default: standard output)");
    sub->add_option("--seed", flags.seed, "64-bit seed (default 0, or the config's \"seed\")");
    sub->add_option("--tolerance", flags.tolerance, "Pass/fail tolerance")->default_val(1e-10);
  };

  struct Entry {
    const char* name;
    const char* help;
    Command cmd;
  };
  const Entry entries[] = {
      {"star", "Deformed product of two elements", cmd_star},
      {"semiclassical", "Semiclassical defect for a list of hbar values (CSV)", cmd_semiclassical},
      {"kasprzak-verify", "Check that I is a homomorphism on the fixed-point algebra", cmd_kasprzak_verify},
      {"heisenberg", "Commutation phase of the Heisenberg field (CSV)", cmd_heisenberg},
      {"norm", "Windowed operator norm estimates (CSV)", cmd_norm},
      {"automorphy-solve", "Solve for an automorphy factor over Z/M", cmd_automorphy_solve},
  };
  Command chosen = nullptr;
  for (const auto& e : entries) {
    auto* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, true);
    sub->callback([&chosen, cmd = e.cmd] { chosen = cmd; });
  }

  std::string only;
  std::string json_path;
  std::optional<double> scale;
  bool suite = false;
  auto* suite_cmd = app.add_subcommand("suite", "Run the acceptance criteria");
  add_common(suite_cmd, false);
  suite_cmd->add_option("--only", only, "Comma-separated criterion ids or names");
  suite_cmd->add_option("--json", json_path, "Write a machine-readable summary here");
  suite_cmd->add_option("--scale", scale, "Override the bracket scale (mutation control)");
  suite_cmd->callback([&] { suite = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kValidation;
  }
  if (suite) return run_suite_command(flags, only, json_path, scale);
  return run_document_command(chosen, flags);
}
