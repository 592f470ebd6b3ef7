#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "radon/dataset.hpp"
#include "radon/error.hpp"
#include "radon/executor.hpp"
#include "radon/relation.hpp"
#include "radon/tiling.hpp"

namespace radon {

struct Link {
  std::string source;
  std::string target;

  friend auto operator<=>(const Link&, const Link&) = default;
};

/// Pairs (source id, target id) standing in `relation`, sorted and unique.
struct Mapping {
  Relation relation = Relation::intersects;
  std::vector<Link> links;

  std::size_t size() const noexcept { return links.size(); }
  bool empty() const noexcept { return links.empty(); }
  bool contains(const Link& l) const;

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

/// Links of `a` missing from `b`, and links of `b` missing from `a`.
std::pair<std::vector<Link>, std::vector<Link>> symmetric_difference(const Mapping& a, const Mapping& b);

struct RunStats {
  std::uint64_t source_size = 0;
  std::uint64_t target_size = 0;
  std::uint64_t pair_encounters = 0;
  std::uint64_t full_computations = 0;
  std::uint64_t mbb_filtered = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t evaluation_failures = 0;
  std::uint64_t links = 0;
  std::uint64_t cells_total = 0;
  std::uint64_t cells_shared = 0;
  std::uint64_t chunks = 0;
  std::uint64_t workers = 0;
  bool swapped = false;
  double delta_lon = 0.0;
  double delta_lat = 0.0;
  double seconds_load = 0.0;
  double seconds_swap = 0.0;
  double seconds_index = 0.0;
  double seconds_link = 0.0;
  double seconds_total = 0.0;

  RunStats& operator+=(const RunStats& o) noexcept;
};

enum class DedupMode {
  owner_cell,    // a pair is handled only in the smallest cell both features cover
  shared_cache,  // one set of seen pairs for the whole run; needs a single worker
};

struct LinkConfig {
  GranularityPolicy granularity;
  bool swap = true;
  ExecutorConfig executor;
  DedupMode dedup = DedupMode::owner_cell;
  /// Test hook: replaces TestMBB by a filter that drops every pair whose
  /// envelopes differ, so the result is knowingly incomplete.
  bool unsound_filter = false;
};

struct LinkResult {
  Mapping mapping;
  RunStats stats;
};

/// Raised when a worker fails mid-run; carries whatever was counted so far.
class RunFailure : public Error {
 public:
  RunFailure(const std::string& message, RunStats partial)
      : Error(ErrorCode::run_failure, message), partial_(partial) {}

  const RunStats& partial() const noexcept { return partial_; }

 private:
  RunStats partial_;
};

/// Mapping {(s, t) : r(s, t)} via swap, tiling, owner-cell dedup and the MBB
/// filter. Throws Error(empty_dataset) for an empty input, Error(invalid_config)
/// for a bad configuration and RunFailure when a worker fails. Pairs the kernel
/// cannot decide are left out and counted in evaluation_failures.
LinkResult link(const Dataset& s, const Dataset& t, Relation r, const LinkConfig& cfg = {});

/// Evaluates r on every pair of S x T.
LinkResult brute_force_link(const Dataset& s, const Dataset& t, Relation r);

/// Per-cell join over a ready index. `plan` tells which side was indexed as
/// source; links come back in the caller's (unswapped) orientation.
LinkResult run_parallel(const SwapPlan& plan, const SparseTileIndex& index, const LinkConfig& cfg);

}  // namespace radon
