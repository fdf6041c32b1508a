#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "llmdoom/orchestrator/orchestrator.hpp"

namespace llmdoom::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitConfig = 3, kExitIo = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  orchestrator::RunConfig run;
  std::filesystem::path out_dir = "traces";
  int jobs = 1;
};

enum class ReportFormat { Table, Csv };

struct ReportOptions {
  std::vector<std::filesystem::path> traces;
  ReportFormat format = ReportFormat::Table;
  double lambda = 1000.0;
};

struct HelpRequested {
  std::string text;
};

using Command = std::variant<RunOptions, ReportOptions, HelpRequested>;

// Parses `llmdoom <run|report> ...`; args excludes the program name.
// Precedence per field: command-line flag, then --config file, then default.
// Throws UsageError for bad flags and ConfigError for an unreadable or
// invalid config file.
Command parse_command_line(const std::vector<std::string>& args);

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err);

// Full entry point with exit-code mapping.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace llmdoom::cli
