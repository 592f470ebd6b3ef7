#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "radon/error.hpp"
#include "radon/io.hpp"
#include "radon/linker.hpp"

namespace radon::cli {

/// Process exit status. Every error class maps to exactly one code.
enum ExitCode : int {
  kOk = 0,
  kDifferences = 1,   // oracle: link and brute force disagree
  kUsage = 2,         // bad flags, unknown tokens, conflicting paths, empty dataset
  kIo = 3,            // unreadable input, unwritable output
  kBadInput = 4,      // geometry or mask errors that escaped ingestion
  kPairFailures = 5,  // some pairs could not be evaluated; they are missing from the output
  kRunFailure = 6,    // a worker failed, or anything unexpected
};

int exit_code_for(ErrorCode code) noexcept;

struct InputSpec {
  std::string path;
  std::string format;  // nt | tsv | csv; empty = from the file extension
};

struct RunConfig {
  InputSpec source;
  InputSpec target;
  std::string geometry_predicate = std::string(kAsWkt);
  std::string relation;
  std::string heuristic = "avg";
  std::string delta_mode = "literal";
  std::size_t threads = 1;
  std::size_t chunk_size = 1000;
  std::string schedule = "round-robin";
  std::string dedup = "owner-cell";
  bool swap = true;
  std::string output = "-";
  std::string output_format = "nt";
  std::string link_predicate;
  std::string stats;
  bool unsound_filter = false;
};

/// Parsed and checked form of a RunConfig.
struct Plan {
  Relation relation = Relation::intersects;
  LinkConfig link;
  DataFormat source_format = DataFormat::nt;
  DataFormat target_format = DataFormat::nt;
  LinkFormat output_format = LinkFormat::nt;
};

/// Throws Error(invalid_config | unsupported_relation) before any work is done.
Plan resolve(const RunConfig& cfg);

DataFormat infer_format(const std::string& path);

int cmd_link(const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const RunConfig& cfg, std::ostream& out);

struct BenchOptions {
  std::uint64_t seed = 1;
  std::size_t clusters = 10;
  std::size_t count = 1000;
  std::size_t corpora = 1;
  double antimeridian_fraction = 0.0;
  std::vector<std::string> relations;  // empty = the seven core relations
  std::vector<std::string> heuristics{"avg"};
  std::string delta_mode = "literal";
  std::vector<std::size_t> threads{1};
  std::size_t chunk_size = 1000;
  std::string schedule = "round-robin";
  std::size_t repetitions = 3;
  bool naive = true;
  std::optional<InputSpec> source;  // real data instead of synthetic corpora
  std::optional<InputSpec> target;
};

struct BenchRow {
  std::size_t corpus = 0;
  std::string relation;
  std::string heuristic;
  std::size_t threads = 1;
  std::uint64_t source_size = 0;
  std::uint64_t target_size = 0;
  std::uint64_t naive_computations = 0;
  std::uint64_t radon_computations = 0;
  double reduction = 0.0;
  std::optional<double> naive_seconds;
  double radon_seconds = 0.0;
  std::optional<double> speedup;
  std::uint64_t links = 0;
  std::string digest;
  std::optional<bool> matches_naive;
};

/// Median-of-repetitions timings for every corpus x relation x heuristic x
/// thread count.
std::vector<BenchRow> run_bench(const BenchOptions& opts);

void write_bench_report(const std::vector<BenchRow>& rows, std::ostream& out);

/// Per corpus and relation: is avg within `slack` of the fastest heuristic?
struct HeuristicVerdict {
  std::size_t corpus = 0;
  std::string relation;
  std::string best;
  double best_seconds = 0.0;
  double avg_seconds = 0.0;
  bool avg_close = false;
};

std::vector<HeuristicVerdict> heuristic_study(const std::vector<BenchRow>& rows, double slack = 0.25);

int cmd_bench(const BenchOptions& opts, std::ostream& out);

/// Stable 64-bit digest of a mapping, as 16 hex digits.
std::string mapping_digest(const Mapping& m);

/// Parses argv and runs a subcommand. Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace radon::cli
