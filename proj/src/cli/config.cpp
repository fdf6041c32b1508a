#include <CLI11.hpp>

#include "llmdoom/cli/cli.hpp"

namespace llmdoom::cli {

namespace {

// Flag values before conversion; CLI11 fills these from flags and the config file.
struct RunFlags {
  std::string strategy = "naive";
  int trials = 10;
  std::uint64_t seed = 0;
  std::string backend = "scripted";
  std::string map;
  std::string out = "traces";
  std::string data_dir;
  std::string walkthrough;
  int jobs = 1;
  std::int64_t max_frames = 5000;
  std::int64_t stuck_timeout = 1000;
  int history_budget = 24000;
  std::string endpoint;
  std::string model;
  std::string api_key_env = "LLM_API_KEY";
  double timeout = 120.0;
  int retries = 2;
  double retry_backoff = 2.0;
  std::string replay;
};

RunOptions to_options(const RunFlags& f) {
  RunOptions o;
  auto& r = o.run;
  r.strategy.strategy = *prompt::parse_strategy(f.strategy);
  r.strategy.history_budget_tokens = f.history_budget;
  r.trials = f.trials;
  r.seed = f.seed;
  r.max_frames = f.max_frames;
  r.stuck_timeout_frames = f.stuck_timeout;
  r.map_path = f.map;
  r.data_dir = f.data_dir;
  r.walkthrough_path = f.walkthrough;
  r.backend.kind = *llm::parse_backend_kind(f.backend);
  r.backend.endpoint = f.endpoint;
  r.backend.model = f.model;
  r.backend.api_key_env = f.api_key_env;
  r.backend.timeout_s = f.timeout;
  r.backend.retries = f.retries;
  r.backend.retry_backoff_s = f.retry_backoff;
  r.backend.replay_path = f.replay;
  o.out_dir = f.out;
  o.jobs = f.jobs;
  try {
    r.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const prompt::PromptError& e) {
    throw UsageError(e.what());
  }
  return o;
}

}  // namespace

Command parse_command_line(const std::vector<std::string>& args) {
  // Each subcommand is its own top-level app so a flat config file applies to
  // its options directly.
  const std::string top_help =
      "Doom-lite LLM agent runner and metrics reporter\n"
      "Usage: llmdoom <run|report> [options]\n"
      "  run     Run a batch of trials and write traces\n"
      "  report  Summarize traces as PMAT/D-PMAT per room\n"
      "Use 'llmdoom <command> --help' for the options of a command.\n";
  if (args.empty()) throw UsageError("missing command (run or report)");
  if (args.front() == "--help" || args.front() == "-h") return HelpRequested{top_help};
  const std::string command = args.front();
  if (command != "run" && command != "report") throw UsageError("unknown command '" + command + "'");

  RunFlags rf;
  CLI::App run_app{"Run a batch of trials and write traces", "llmdoom run"};
  auto* run = &run_app;
  run->set_config("--config", "", "Flat key = value file; keys are long flag names");
  run->allow_config_extras(false);
  run->add_option("--strategy", rf.strategy, "Prompting strategy")
      ->check(CLI::IsMember({"naive", "walkthrough", "plan", "klevels"}))
      ->capture_default_str();
  run->add_option("--trials", rf.trials, "Number of trials")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--seed", rf.seed, "Seed of the first trial; later trials use seed+1, seed+2, ...")
      ->capture_default_str();
  run->add_option("--backend", rf.backend, "Completion backend")
      ->check(CLI::IsMember({"scripted", "http", "replay"}))
      ->capture_default_str();
  run->add_option("--map", rf.map, "Map file (default: bundled map)");
  run->add_option("--out", rf.out, "Output directory for traces")->capture_default_str();
  run->add_option("--data-dir", rf.data_dir, "Directory with templates, exemplars, walkthrough and maps");
  run->add_option("--walkthrough", rf.walkthrough, "Walkthrough text file");
  run->add_option("--jobs", rf.jobs, "Trials run in parallel")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--max-frames", rf.max_frames, "Frame limit per trial")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--stuck-timeout", rf.stuck_timeout, "Frames on one tile before a trial times out")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--history-budget", rf.history_budget, "Token budget for prompt history")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--endpoint", rf.endpoint, "Chat completions base URL, e.g. http://host:port/v1");
  run->add_option("--model", rf.model, "Model name sent to the endpoint");
  run->add_option("--api-key-env", rf.api_key_env, "Environment variable holding the API key")->capture_default_str();
  run->add_option("--timeout", rf.timeout, "HTTP timeout in seconds")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--retries", rf.retries, "HTTP retries after the first attempt")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run->add_option("--retry-backoff", rf.retry_backoff, "Seconds between HTTP retries")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  run->add_option("--replay", rf.replay, "Trace whose recorded completions are replayed");

  ReportOptions ro;
  std::vector<std::string> trace_paths;
  std::string format = "table";
  CLI::App report_app{"Summarize traces as PMAT/D-PMAT per room", "llmdoom report"};
  auto* report = &report_app;
  report->add_option("--traces", trace_paths, "Trace directories or files")->required()->expected(1, -1);
  report->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "csv"}))->capture_default_str();
  report->add_option("--lambda", ro.lambda, "Death penalty in frames")->check(CLI::NonNegativeNumber)->capture_default_str();

  CLI::App& app = command == "run" ? run_app : report_app;
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return HelpRequested{app.help()};
  } catch (const CLI::FileError& e) {
    throw ConfigError(e.what());
  } catch (const CLI::ConfigError& e) {
    throw ConfigError(e.what());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (command == "run") return to_options(rf);
  for (const auto& p : trace_paths) ro.traces.emplace_back(p);
  ro.format = format == "csv" ? ReportFormat::Csv : ReportFormat::Table;
  return ro;
}

}  // namespace llmdoom::cli
