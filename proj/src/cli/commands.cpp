#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "llmdoom/cli/cli.hpp"
#include "llmdoom/metrics/metrics.hpp"
#include "llmdoom/trace/trace.hpp"
#include "llmdoom/util/hash.hpp"

namespace llmdoom::cli {

namespace fs = std::filesystem;

namespace {

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path resolved_map_path(const orchestrator::RunConfig& cfg) {
  if (!cfg.map_path.empty()) return cfg.map_path;
  const auto data = cfg.data_dir.empty() ? prompt::default_data_dir() : cfg.data_dir;
  return data / "maps" / "e1m1lite.map";
}

struct TrialRun {
  std::uint64_t seed = 0;
  fs::path path;
  orchestrator::Outcome outcome = orchestrator::Outcome::TimedOut;
  std::size_t frames = 0;
  double seconds = 0.0;
};

// Row label for a header strategy key.
std::string row_label(const std::string& key) {
  if (auto s = prompt::parse_strategy(key)) return std::string(prompt::display_name(*s));
  if (key.empty()) return "(unknown)";
  std::string out = key;
  out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

int row_order(const std::string& key) {
  if (key == "human") return 0;
  if (auto s = prompt::parse_strategy(key)) return 1 + static_cast<int>(*s);
  return 100;
}

}  // namespace

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  const auto& cfg = opts.run;
  const auto started = std::chrono::steady_clock::now();

  orchestrator::TrialAssets assets;
  std::string map_hash;
  try {
    assets = orchestrator::TrialAssets::load(cfg);
    map_hash = util::hex64(util::fnv1a64(read_bytes(resolved_map_path(cfg))));
  } catch (const sim::MapLoadError& e) {
    err << "map error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const prompt::PromptError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec || !fs::is_directory(opts.out_dir)) {
    err << "cannot create output directory " << opts.out_dir << '\n';
    return kExitIo;
  }

  const auto header_config = trace::config_snapshot(cfg);
  const std::string strategy_key(prompt::to_string(cfg.strategy.strategy));
  std::vector<TrialRun> runs(static_cast<std::size_t>(cfg.trials));
  std::atomic<int> next{0};
  std::mutex failure_mu;
  std::exception_ptr failure;

  const auto worker = [&] {
    while (true) {
      const int i = next++;
      if (i >= cfg.trials) return;
      {
        std::lock_guard lock(failure_mu);
        if (failure) return;
      }
      try {
        TrialRun& run = runs[static_cast<std::size_t>(i)];
        run.seed = cfg.seed + static_cast<std::uint64_t>(i);
        const auto t0 = std::chrono::steady_clock::now();
        auto backend = llm::make_backend(cfg.backend);
        trace::TraceFile tf;
        tf.header.strategy = strategy_key;
        tf.header.config = header_config;
        tf.header.seed = run.seed;
        tf.header.map_hash = map_hash;
        tf.trial = orchestrator::run_trial(cfg, assets, *backend, run.seed);
        run.path = opts.out_dir / (strategy_key + "-seed" + std::to_string(run.seed) + ".jsonl");
        trace::write_trace_file(run.path, tf);
        run.outcome = tf.trial.outcome;
        run.frames = tf.trial.frames.size();
        run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int jobs = std::clamp(opts.jobs, 1, cfg.trials);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const llm::InvalidRequest& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      err << "I/O error: " << e.what() << '\n';
      return kExitIo;
    }
  }

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  nlohmann::json manifest{{"strategy", strategy_key},
                          {"trials_requested", cfg.trials},
                          {"trials_completed", runs.size()},
                          {"wall_clock_seconds", total}};
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& r : runs) {
    traces.push_back({{"seed", r.seed},
                      {"path", r.path.filename().string()},
                      {"outcome", std::string(orchestrator::to_string(r.outcome))},
                      {"frames", r.frames},
                      {"wall_clock_seconds", r.seconds}});
    out << "seed " << r.seed << ": " << orchestrator::to_string(r.outcome) << " after " << r.frames
        << " frames -> " << r.path.string() << '\n';
  }
  manifest["traces"] = std::move(traces);
  const auto manifest_path = opts.out_dir / "manifest.json";
  std::ofstream mf(manifest_path, std::ios::trunc);
  mf << manifest.dump(2) << '\n';
  if (!mf) {
    err << "cannot write " << manifest_path << '\n';
    return kExitIo;
  }
  return kExitOk;
}

int cmd_report(const ReportOptions& opts, std::ostream& out, std::ostream& err) {
  std::vector<fs::path> files;
  for (const auto& p : opts.traces) {
    std::error_code ec;
    if (fs::is_directory(p, ec)) {
      for (const auto& entry : fs::directory_iterator(p, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") files.push_back(entry.path());
      }
    } else if (fs::is_regular_file(p, ec)) {
      files.push_back(p);
    } else {
      err << "no such trace file or directory: " << p.string() << '\n';
      return kExitIo;
    }
  }
  std::sort(files.begin(), files.end());

  std::map<std::string, std::vector<metrics::TrialSummary>> groups;
  for (const auto& f : files) {
    try {
      const auto tf = trace::read_trace_file(f);
      groups[tf.header.strategy].push_back(metrics::summarize_trial(tf.trial));
    } catch (const trace::TraceError& e) {
      err << "skipping " << f.string() << ": " << e.what() << '\n';
    }
  }
  if (groups.empty()) {
    err << "no readable traces\n";
    return kExitIo;
  }

  std::vector<std::string> keys;
  for (const auto& [k, _] : groups) keys.push_back(k);
  std::stable_sort(keys.begin(), keys.end(),
                   [](const std::string& a, const std::string& b) { return row_order(a) < row_order(b); });

  metrics::MetricsConfig mcfg;
  mcfg.lambda = opts.lambda;
  std::vector<metrics::SegmentReport> reports;
  for (const auto& k : keys) reports.push_back(metrics::summarize(groups[k], mcfg, row_label(k)));
  out << (opts.format == ReportFormat::Csv ? metrics::render_csv(reports) : metrics::render_table(reports));
  return kExitOk;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Command cmd;
  try {
    cmd = parse_command_line(args);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun 'llmdoom --help' for usage.\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  if (const auto* help = std::get_if<HelpRequested>(&cmd)) {
    out << help->text;
    return kExitOk;
  }
  if (const auto* run = std::get_if<RunOptions>(&cmd)) return cmd_run(*run, out, err);
  return cmd_report(std::get<ReportOptions>(cmd), out, err);
}

}  // namespace llmdoom::cli
