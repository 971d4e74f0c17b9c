// Command dispatch behind the eqw executable.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace eqw::cli {

enum class Command { Pade, Prony, PronyClassical, ChebNodes, Quadrature, DiffFormula, VerifyBounds, Eps };

std::string_view to_string(Command c) noexcept;
std::optional<Command> parse_command(std::string_view name) noexcept;
std::vector<std::string_view> command_names();

/// Parameter keys accepted by a command (without the leading dashes).
std::vector<std::string_view> allowed_parameters(Command c);

struct JobSpec {
  Command command;
  std::map<std::string, std::string> parameters;
  std::optional<std::filesystem::path> input_path;   // --f, --table or --moments
  std::optional<std::filesystem::path> output_path;  // JSON result, stdout if absent
  std::optional<std::filesystem::path> csv_path;     // optional node export
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Validates the parameters, runs the job, writes the result document and
/// returns the exit status. Diagnostics go to `err`.
int run(const JobSpec& spec, std::ostream& out, std::ostream& err);

/// Precision cap for n: kDefaultMaxN unless EQW_MAX_N is set, in which case a
/// conditioning warning is written to `err`.
int precision_cap(std::ostream& err);

}  // namespace eqw::cli
