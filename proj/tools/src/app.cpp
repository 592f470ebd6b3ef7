#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"

namespace radon::cli {

namespace {

void init_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err, true);
  auto logger = std::make_shared<spdlog::logger>("radon", sink);
  logger->set_pattern("radon: [%l] %v");
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("RADON_LOG"); env != nullptr && *env != '\0') {
    level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; keep warnings in that case.
    if (level == spdlog::level::off && std::string_view(env) != "off") level = spdlog::level::warn;
  }
  logger->set_level(level);
  spdlog::set_default_logger(logger);
}

void add_run_options(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--source", cfg.source.path, "Source dataset file")->required();
  cmd.add_option("--source-format", cfg.source.format, "nt | tsv | csv (default: from the extension)")
      ->check(CLI::IsMember({"nt", "tsv", "csv"}));
  cmd.add_option("--target", cfg.target.path, "Target dataset file")->required();
  cmd.add_option("--target-format", cfg.target.format, "nt | tsv | csv (default: from the extension)")
      ->check(CLI::IsMember({"nt", "tsv", "csv"}));
  cmd.add_option("--geometry-predicate", cfg.geometry_predicate, "Predicate IRI carrying WKT in N-Triples input")
      ->capture_default_str();
  cmd.add_option("--relation", cfg.relation,
                 "equals | intersects | touches | crosses | overlaps | within | covers | contains | coveredBy | "
                 "disjoint")
      ->required();
  cmd.add_option("--heuristic", cfg.heuristic, "min | max | avg | median | fixed:<v>")->capture_default_str();
  cmd.add_option("--delta-mode", cfg.delta_mode, "literal | reciprocal")->capture_default_str();
  cmd.add_option("--threads", cfg.threads, "Worker count")->capture_default_str();
  cmd.add_option("--chunk-size", cfg.chunk_size, "Cells per work chunk")->capture_default_str();
  cmd.add_option("--schedule", cfg.schedule, "round-robin | work-stealing")->capture_default_str();
  cmd.add_option("--dedup", cfg.dedup, "owner-cell | shared-cache")->capture_default_str();
  cmd.add_flag_function("--no-swap", [&cfg](std::int64_t) { cfg.swap = false; }, "Never exchange source and target");
  cmd.add_option("--output", cfg.output, "Link file, - for standard output")->capture_default_str();
  cmd.add_option("--output-format", cfg.output_format, "nt | tsv")->capture_default_str();
  cmd.add_option("--predicate", cfg.link_predicate, "Link predicate IRI (default: per relation)");
  cmd.add_option("--stats", cfg.stats, "Write key=value run statistics here (- for standard output)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  init_logging(err);

  CLI::App app{"Topological link discovery between geospatial datasets", "radon"};
  app.require_subcommand(1);

  RunConfig link_cfg;
  CLI::App* link_cmd = app.add_subcommand("link", "Compute the links for one relation");
  add_run_options(*link_cmd, link_cfg);

  RunConfig oracle_cfg;
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Compare link with an all-pairs evaluation and print the difference");
  add_run_options(*oracle_cmd, oracle_cfg);
  oracle_cmd->add_flag("--fault-unsound-filter", oracle_cfg.unsound_filter)->group("");

  BenchOptions bench;
  std::string report = "-";
  bool heuristic_sweep = false;
  bool threads_sweep = false;
  bool no_naive = false;
  InputSpec bench_source, bench_target;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Synthetic-corpus comparison of link and all-pairs evaluation");
  bench_cmd->add_option("--seed", bench.seed, "Corpus seed")->capture_default_str();
  bench_cmd->add_option("--clusters", bench.clusters, "Clusters per corpus")->capture_default_str();
  bench_cmd->add_option("--count", bench.count, "Features per dataset")->capture_default_str();
  bench_cmd->add_option("--corpora", bench.corpora, "Number of seeded corpora")->capture_default_str();
  bench_cmd->add_option("--antimeridian-fraction", bench.antimeridian_fraction, "Share of features crossing +-180")
      ->capture_default_str();
  bench_cmd->add_option("--relation", bench.relations, "Relations to run (default: the seven core ones)")
      ->delimiter(',');
  bench_cmd->add_option("--heuristic", bench.heuristics, "Heuristics to run")->delimiter(',')->capture_default_str();
  bench_cmd->add_flag("--heuristic-sweep", heuristic_sweep, "Run min, max, avg and median");
  bench_cmd->add_option("--delta-mode", bench.delta_mode, "literal | reciprocal")->capture_default_str();
  bench_cmd->add_option("--threads", bench.threads, "Worker counts")->delimiter(',')->capture_default_str();
  bench_cmd->add_flag("--threads-sweep", threads_sweep, "Run 1, 2, 4 and 8 workers");
  bench_cmd->add_option("--chunk-size", bench.chunk_size, "Cells per work chunk")->capture_default_str();
  bench_cmd->add_option("--schedule", bench.schedule, "round-robin | work-stealing")->capture_default_str();
  bench_cmd->add_option("--repetitions", bench.repetitions, "Timed repetitions (median is reported)")
      ->capture_default_str();
  bench_cmd->add_flag("--no-naive", no_naive, "Skip the all-pairs baseline");
  bench_cmd->add_option("--source", bench_source.path, "Use this dataset instead of a synthetic source");
  bench_cmd->add_option("--source-format", bench_source.format, "nt | tsv | csv");
  bench_cmd->add_option("--target", bench_target.path, "Use this dataset instead of a synthetic target");
  bench_cmd->add_option("--target-format", bench_target.format, "nt | tsv | csv");
  bench_cmd->add_option("--output", report, "Report file, - for standard output")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  if (link_cmd->parsed()) return cmd_link(link_cfg, out);
  if (oracle_cmd->parsed()) return cmd_oracle(oracle_cfg, out);

  if (heuristic_sweep) bench.heuristics = {"min", "max", "avg", "median"};
  if (threads_sweep) bench.threads = {1, 2, 4, 8};
  bench.naive = !no_naive;
  if (!bench_source.path.empty()) bench.source = bench_source;
  if (!bench_target.path.empty()) bench.target = bench_target;
  if (report == "-") return cmd_bench(bench, out);
  std::ofstream file(report);
  if (!file) {
    spdlog::error("cannot write {}", report);
    return kIo;
  }
  return cmd_bench(bench, file);
}

}  // namespace radon::cli
