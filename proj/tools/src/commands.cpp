#include "commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <ostream>

#include <spdlog/spdlog.h>

namespace radon::cli {

namespace {

using Clock = std::chrono::steady_clock;

LoadedDataset load(const InputSpec& in, DataFormat format, const std::string& predicate, const char* role) {
  LoadedDataset loaded = load_dataset(in.path, format, predicate);
  const LoadReport& r = loaded.report;
  for (const std::string& w : r.warnings) spdlog::warn("{}: {}", in.path, w);
  if (r.rejected + r.duplicates > r.warnings.size())
    spdlog::warn("{}: further warnings suppressed", in.path);
  spdlog::info("{} {}: {} accepted, {} rejected, {} duplicates, {} skipped lines", role, in.path, r.accepted,
               r.rejected, r.duplicates, r.skipped);
  return loaded;
}

std::filesystem::path canonical_or_self(const std::string& p) {
  std::error_code ec;
  auto c = std::filesystem::weakly_canonical(p, ec);
  return ec ? std::filesystem::path(p) : c;
}

template <typename Body>
int guarded(Body body) {
  try {
    return body();
  } catch (const RunFailure& e) {
    spdlog::error("{} (partial: {} encounters, {} computations)", e.what(), e.partial().pair_encounters,
                  e.partial().full_computations);
    return kRunFailure;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return kRunFailure;
  }
}

struct Inputs {
  LoadedDataset source;
  LoadedDataset target;
  double seconds = 0.0;
};

Inputs load_inputs(const RunConfig& cfg, const Plan& plan) {
  const auto start = Clock::now();
  Inputs in{load(cfg.source, plan.source_format, cfg.geometry_predicate, "source"),
            load(cfg.target, plan.target_format, cfg.geometry_predicate, "target"), 0.0};
  in.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return in;
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_config:
    case ErrorCode::unsupported_relation:
    case ErrorCode::empty_dataset: return kUsage;
    case ErrorCode::io: return kIo;
    case ErrorCode::syntax:
    case ErrorCode::unsupported_kind:
    case ErrorCode::invalid_geometry:
    case ErrorCode::invalid_mask: return kBadInput;
    case ErrorCode::numerical_degeneracy: return kPairFailures;
    case ErrorCode::run_failure: return kRunFailure;
  }
  return kRunFailure;
}

DataFormat infer_format(const std::string& path) {
  const std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".tsv" || ext == ".tab") return DataFormat::tsv;
  if (ext == ".csv") return DataFormat::csv;
  return DataFormat::nt;
}

Plan resolve(const RunConfig& cfg) {
  if (cfg.source.path.empty() || cfg.target.path.empty())
    throw Error(ErrorCode::invalid_config, "both --source and --target are required");
  if (cfg.relation.empty()) throw Error(ErrorCode::invalid_config, "--relation is required");

  Plan plan;
  plan.relation = parse_relation(cfg.relation);
  plan.source_format = cfg.source.format.empty() ? infer_format(cfg.source.path) : parse_data_format(cfg.source.format);
  plan.target_format = cfg.target.format.empty() ? infer_format(cfg.target.path) : parse_data_format(cfg.target.format);
  plan.output_format = parse_link_format(cfg.output_format);

  plan.link.granularity = GranularityPolicy::parse(cfg.heuristic);
  plan.link.granularity.mode = parse_delta_mode(cfg.delta_mode);
  plan.link.swap = cfg.swap;
  plan.link.executor.workers = cfg.threads;
  plan.link.executor.chunk_size = cfg.chunk_size;
  plan.link.executor.policy = parse_schedule_policy(cfg.schedule);
  plan.link.executor.validate();
  if (cfg.dedup == "owner-cell") plan.link.dedup = DedupMode::owner_cell;
  else if (cfg.dedup == "shared-cache") plan.link.dedup = DedupMode::shared_cache;
  else throw Error(ErrorCode::invalid_config, "unknown dedup mode '" + cfg.dedup + "'");
  if (plan.link.dedup == DedupMode::shared_cache && cfg.threads != 1)
    throw Error(ErrorCode::invalid_config, "--dedup shared-cache needs --threads 1");
  plan.link.unsound_filter = cfg.unsound_filter;

  // Outputs must not clobber inputs or each other.
  std::vector<std::filesystem::path> inputs{canonical_or_self(cfg.source.path), canonical_or_self(cfg.target.path)};
  std::vector<std::filesystem::path> outputs;
  if (cfg.output != "-") outputs.push_back(canonical_or_self(cfg.output));
  if (!cfg.stats.empty() && cfg.stats != "-") outputs.push_back(canonical_or_self(cfg.stats));
  for (std::size_t a = 0; a < outputs.size(); ++a) {
    for (const auto& in : inputs)
      if (outputs[a] == in) throw Error(ErrorCode::invalid_config, "output path equals an input: " + in.string());
    for (std::size_t b = a + 1; b < outputs.size(); ++b)
      if (outputs[a] == outputs[b])
        throw Error(ErrorCode::invalid_config, "links and stats share a path: " + outputs[a].string());
  }
  if (cfg.output == "-" && cfg.stats == "-")
    throw Error(ErrorCode::invalid_config, "links and stats cannot both go to standard output");
  return plan;
}

std::string mapping_digest(const Mapping& m) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ull;
    }
  };
  for (const Link& l : m.links) {
    mix(l.source);
    mix("\t");
    mix(l.target);
    mix("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int cmd_link(const RunConfig& cfg, std::ostream& out) {
  return guarded([&] {
    const Plan plan = resolve(cfg);
    Inputs in = load_inputs(cfg, plan);
    LinkResult result = link(in.source.dataset, in.target.dataset, plan.relation, plan.link);
    result.stats.seconds_load = in.seconds;

    if (cfg.output == "-") write_links(result.mapping, out, plan.output_format, cfg.link_predicate);
    else write_links(result.mapping, cfg.output, plan.output_format, cfg.link_predicate);
    if (cfg.stats == "-") write_stats(result.stats, out);
    else if (!cfg.stats.empty()) write_stats(result.stats, cfg.stats);

    spdlog::info("{}: {} links, {} full computations of {} candidate pairs ({} filtered, {} repeats), swapped={}",
                 to_string(plan.relation), result.stats.links, result.stats.full_computations,
                 result.stats.pair_encounters, result.stats.mbb_filtered, result.stats.cache_hits,
                 result.stats.swapped);
    if (result.stats.evaluation_failures > 0) {
      spdlog::warn("{} pairs could not be evaluated and were left out", result.stats.evaluation_failures);
      return static_cast<int>(kPairFailures);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  return guarded([&] {
    const Plan plan = resolve(cfg);
    Inputs in = load_inputs(cfg, plan);
    const LinkResult fast = link(in.source.dataset, in.target.dataset, plan.relation, plan.link);
    const LinkResult slow = brute_force_link(in.source.dataset, in.target.dataset, plan.relation);
    const auto [extra, missing] = symmetric_difference(fast.mapping, slow.mapping);
    for (const Link& l : extra) out << "+\t" << l.source << '\t' << l.target << '\n';
    for (const Link& l : missing) out << "-\t" << l.source << '\t' << l.target << '\n';
    out << "# relation=" << to_string(plan.relation) << " links=" << fast.mapping.size()
        << " oracle=" << slow.mapping.size() << " extra=" << extra.size() << " missing=" << missing.size() << '\n';
    if (!extra.empty() || !missing.empty()) return static_cast<int>(kDifferences);
    if (fast.stats.evaluation_failures > 0 || slow.stats.evaluation_failures > 0) return static_cast<int>(kPairFailures);
    return static_cast<int>(kOk);
  });
}

}  // namespace radon::cli
