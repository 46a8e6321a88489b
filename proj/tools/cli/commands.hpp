#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cli/config.hpp"

namespace diracjump::cli {

enum ExitCode : int { kOk = 0, kValidationFailed = 1, kBadConfig = 2, kNumericalFailure = 3 };

/// A missing cell renders as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

/// 17 significant digits, '.' decimal point, independent of the global locale.
std::string format_number(double value);

void write_csv(std::ostream& os, const Table& table);
void write_json(std::ostream& os, const Table& table);

Table cmd_scatter(const RunConfig& cfg);
Table cmd_bound(const RunConfig& cfg);
Table cmd_sweep(const RunConfig& cfg);
Table cmd_resonances(const RunConfig& cfg);

struct ValidateResult {
  Table table;
  std::vector<std::string> failures;
};
ValidateResult cmd_validate(const RunConfig& cfg);

/// Parses flags (and an optional --config key=value file), runs one subcommand and writes its
/// table to --out or `out`.  Diagnostics go to `err`.  Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace diracjump::cli
