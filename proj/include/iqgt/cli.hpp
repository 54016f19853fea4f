#pragma once

// The iqgt command line: argument parsing, the five subcommands and the
// lattice diagrams. Commands return their output instead of printing so
// they can be driven from tests.
//
// Exit codes: 0 success, 1 nonzero residual or oracle mismatch, 2 invalid
// input or failed hypotheses.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "iqgt/structure.hpp"

namespace iqgt {

enum class Command { Verify, Analyze, Pattern, Oracle, Diagram };
enum class OutputFormat { Text, Json, Svg };

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kDefaultWindowCap = 8;

struct CommandConfig {
  Command command = Command::Verify;
  int n = 3;
  /// name -> "generic" or an exact rational, in the order given.
  std::vector<std::pair<std::string, std::string>> params;
  std::optional<int> window;
  OutputFormat format = OutputFormat::Text;
  std::optional<Ket> seed;
  bool check_oracle = false;
  ModuleKind kind = ModuleKind::Generic;
  int window_cap = kDefaultWindowCap;

  // pattern and numeric oracle inputs
  std::vector<std::string> tuple;
  std::vector<std::string> weight;
  std::optional<std::string> pattern;
  std::complex<double> q{1.2, 0};
  bool matrices = false;
  double tolerance = 1e-8;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

/// Thrown for malformed command lines and configs.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Window cap from IQGT_WINDOW_CAP, or the default.
int window_cap_from_env();

/// "p=generic,r=1/4" -> [("p", "generic"), ("r", "1/4")].
std::vector<std::pair<std::string, std::string>> parse_params(const std::string& text);
/// "1.2", "1.2+0.3i", "0.5i".
std::complex<double> parse_complex(const std::string& text);

/// Builds the module spec for verify, analyze, oracle and diagram. Names
/// must belong to the rank; omitted parameters are generic.
ModuleSpec spec_from_config(const CommandConfig& config);

CommandResult run_verify(const CommandConfig& config);
CommandResult run_analyze(const CommandConfig& config);
CommandResult run_pattern(const CommandConfig& config);
/// With a weight: the numeric irrep and its relation residuals. Otherwise
/// the closure oracle: the submodule generated by the seed, or a check of
/// the predicted series.
CommandResult run_oracle(const CommandConfig& config);
CommandResult run_diagram(const CommandConfig& config);
CommandResult run_command(const CommandConfig& config);

/// The ket lattice of radius K with the shaded regions of the report:
/// its components when it has any, else its series layers.
std::string render_diagram(const AnalysisReport& report, OutputFormat format, int K);

/// Parses argv; UsageError on bad input. CLI11's own help and errors are
/// reported through the result.
std::variant<CommandConfig, CommandResult> parse_command_line(int argc, const char* const* argv);
int cli_main(int argc, const char* const* argv);

}  // namespace iqgt
