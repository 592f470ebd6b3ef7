#include "radon/linker.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_set>

namespace radon {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Index pair in the caller's orientation.
struct PairId {
  std::uint32_t s = 0;
  std::uint32_t t = 0;

  friend auto operator<=>(const PairId&, const PairId&) = default;
};

struct WorkerState {
  RunStats stats;
  std::vector<PairId> hits;
  std::vector<PairId> failed;
};

Mapping to_mapping(Relation r, const Dataset& s, const Dataset& t, std::vector<PairId>& pairs) {
  Mapping m;
  m.relation = r;
  m.links.reserve(pairs.size());
  for (const PairId& p : pairs) m.links.push_back({s[p.s].id, t[p.t].id});
  std::sort(m.links.begin(), m.links.end());
  m.links.erase(std::unique(m.links.begin(), m.links.end()), m.links.end());
  return m;
}

bool unsound_pass(const MBB& a, const MBB& b) { return a == b; }

void require_input(const Dataset& s, const Dataset& t) {
  if (s.empty()) throw Error(ErrorCode::empty_dataset, "source dataset '" + s.label() + "' is empty");
  if (t.empty()) throw Error(ErrorCode::empty_dataset, "target dataset '" + t.label() + "' is empty");
}

}  // namespace

bool Mapping::contains(const Link& l) const { return std::binary_search(links.begin(), links.end(), l); }

std::pair<std::vector<Link>, std::vector<Link>> symmetric_difference(const Mapping& a, const Mapping& b) {
  std::pair<std::vector<Link>, std::vector<Link>> out;
  std::set_difference(a.links.begin(), a.links.end(), b.links.begin(), b.links.end(), std::back_inserter(out.first));
  std::set_difference(b.links.begin(), b.links.end(), a.links.begin(), a.links.end(), std::back_inserter(out.second));
  return out;
}

RunStats& RunStats::operator+=(const RunStats& o) noexcept {
  pair_encounters += o.pair_encounters;
  full_computations += o.full_computations;
  mbb_filtered += o.mbb_filtered;
  cache_hits += o.cache_hits;
  evaluation_failures += o.evaluation_failures;
  links += o.links;
  return *this;
}

namespace {

struct RawRun {
  RunStats stats;
  std::vector<PairId> hits;
  std::vector<PairId> failed;
};

RawRun run_cells(const SwapPlan& plan, const SparseTileIndex& index, const LinkConfig& cfg) {
  cfg.executor.validate();
  if (cfg.dedup == DedupMode::shared_cache && cfg.executor.workers != 1)
    throw Error(ErrorCode::invalid_config, "the shared pair cache needs exactly one worker");
  const Relation r = plan.reversed ? reverse(plan.relation) : plan.relation;
  if (r == Relation::disjoint)
    throw Error(ErrorCode::unsupported_relation, "disjoint is computed as the complement of intersects");

  const Dataset& s = plan.reversed ? *plan.target : *plan.source;
  const Dataset& t = plan.reversed ? *plan.source : *plan.target;

  const auto start = Clock::now();
  const std::vector<WorkChunk> chunks = schedule(index.shared_cells(), cfg.executor);
  std::vector<WorkerState> workers(cfg.executor.workers);
  std::unordered_set<std::uint64_t> cache;

  auto task = [&](std::size_t worker, const WorkChunk& chunk) {
    WorkerState& state = workers[worker];
    RunStats& st = state.stats;
    for (const CellIndex& cell : chunk.cells) {
      const auto* sources = index.source_bucket(cell);
      const auto* targets = index.target_bucket(cell);
      if (sources == nullptr || targets == nullptr) continue;
      for (const std::uint32_t a : *sources)
        for (const std::uint32_t b : *targets) {
          ++st.pair_encounters;
          if (cfg.dedup == DedupMode::owner_cell) {
            if (index.owner_cell(a, b) != cell) {
              ++st.cache_hits;
              continue;
            }
          } else if (!cache.insert((std::uint64_t{a} << 32) | b).second) {
            ++st.cache_hits;
            continue;
          }
          const PairId id = plan.reversed ? PairId{b, a} : PairId{a, b};
          const Feature& fs = s[id.s];
          const Feature& ft = t[id.t];
          const bool pass = cfg.unsound_filter ? unsound_pass(fs.envelope, ft.envelope)
                                               : test_mbb(r, fs.envelope, ft.envelope).proceed;
          if (!pass) {
            ++st.mbb_filtered;
            continue;
          }
          ++st.full_computations;
          try {
            if (evaluate(r, fs.prepared, ft.prepared)) state.hits.push_back(id);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::numerical_degeneracy) throw;
            ++st.evaluation_failures;
            state.failed.push_back(id);
          }
        }
    }
  };

  RawRun run;
  RunStats& total = run.stats;
  total.source_size = s.size();
  total.target_size = t.size();
  total.cells_total = index.source_cells().size();
  total.cells_shared = index.shared_cells().size();
  total.chunks = chunks.size();
  total.workers = cfg.executor.workers;
  total.swapped = plan.reversed;
  total.delta_lon = index.granularity().delta_lon;
  total.delta_lat = index.granularity().delta_lat;

  try {
    execute(chunks, cfg.executor, task);
  } catch (const std::exception& e) {
    for (const WorkerState& w : workers) total += w.stats;
    throw RunFailure(std::string("worker failed: ") + e.what(), total);
  }

  for (WorkerState& w : workers) {
    total += w.stats;
    run.hits.insert(run.hits.end(), w.hits.begin(), w.hits.end());
    run.failed.insert(run.failed.end(), w.failed.begin(), w.failed.end());
  }
  std::sort(run.hits.begin(), run.hits.end());
  std::sort(run.failed.begin(), run.failed.end());
  total.seconds_link = seconds_since(start);
  return run;
}

}  // namespace

LinkResult run_parallel(const SwapPlan& plan, const SparseTileIndex& index, const LinkConfig& cfg) {
  RawRun run = run_cells(plan, index, cfg);
  const Relation r = plan.reversed ? reverse(plan.relation) : plan.relation;
  const Dataset& s = plan.reversed ? *plan.target : *plan.source;
  const Dataset& t = plan.reversed ? *plan.source : *plan.target;
  LinkResult result{to_mapping(r, s, t, run.hits), run.stats};
  result.stats.links = result.mapping.size();
  return result;
}

LinkResult link(const Dataset& s, const Dataset& t, Relation r, const LinkConfig& cfg) {
  require_input(s, t);
  cfg.executor.validate();
  const auto start = Clock::now();
  const Relation searched = r == Relation::disjoint ? Relation::intersects : r;

  SwapPlan plan{&s, &t, searched, false};
  if (cfg.swap) plan = plan_swap(s, t, searched);
  const double swap_time = seconds_since(start);

  const auto index_start = Clock::now();
  const Granularity g = select_granularity(*plan.source, *plan.target, cfg.granularity);
  const SparseTileIndex index = build_index(*plan.source, *plan.target, g);
  const double index_time = seconds_since(index_start);

  RawRun run = run_cells(plan, index, cfg);
  if (r == Relation::disjoint) {
    // Everything that intersects, or could not be decided, stays out.
    std::vector<PairId> excluded;
    excluded.reserve(run.hits.size() + run.failed.size());
    std::merge(run.hits.begin(), run.hits.end(), run.failed.begin(), run.failed.end(), std::back_inserter(excluded));
    std::vector<PairId> complement;
    auto skip = excluded.begin();
    for (std::uint32_t a = 0; a < s.size(); ++a)
      for (std::uint32_t b = 0; b < t.size(); ++b) {
        const PairId id{a, b};
        while (skip != excluded.end() && *skip < id) ++skip;
        if (skip != excluded.end() && *skip == id) continue;
        complement.push_back(id);
      }
    run.hits = std::move(complement);
  }

  LinkResult result{to_mapping(r, s, t, run.hits), run.stats};
  result.stats.links = result.mapping.size();
  result.stats.seconds_swap = swap_time;
  result.stats.seconds_index = index_time;
  result.stats.seconds_total = seconds_since(start);
  return result;
}

LinkResult brute_force_link(const Dataset& s, const Dataset& t, Relation r) {
  require_input(s, t);
  const auto start = Clock::now();
  LinkResult result;
  RunStats& st = result.stats;
  st.source_size = s.size();
  st.target_size = t.size();
  std::vector<PairId> hits;
  for (std::uint32_t a = 0; a < s.size(); ++a)
    for (std::uint32_t b = 0; b < t.size(); ++b) {
      ++st.pair_encounters;
      ++st.full_computations;
      try {
        if (evaluate(r, s[a].prepared, t[b].prepared)) hits.push_back({a, b});
      } catch (const Error& e) {
        if (e.code() != ErrorCode::numerical_degeneracy) throw;
        ++st.evaluation_failures;
      }
    }
  result.mapping = to_mapping(r, s, t, hits);
  st.links = result.mapping.size();
  st.seconds_link = seconds_since(start);
  st.seconds_total = st.seconds_link;
  return result;
}

}  // namespace radon
