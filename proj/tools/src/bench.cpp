#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>

#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "radon/synthetic.hpp"

namespace radon::cli {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <typename Fn>
double timed(Fn&& fn) {
  const auto start = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Corpus {
  Dataset source;
  Dataset target;
};

Corpus make_corpus(const BenchOptions& opts, std::size_t k) {
  if (opts.source && opts.target) {
    auto fmt = [](const InputSpec& in) { return in.format.empty() ? infer_format(in.path) : parse_data_format(in.format); };
    return {load_dataset(opts.source->path, fmt(*opts.source)).dataset,
            load_dataset(opts.target->path, fmt(*opts.target)).dataset};
  }
  const std::uint64_t layout = opts.seed * 1000003ull + k;
  SyntheticCorpusSpec s = SyntheticCorpusSpec::mixed(opts.count, opts.clusters, opts.antimeridian_fraction, layout,
                                                     layout * 2 + 1, "s");
  SyntheticCorpusSpec t = SyntheticCorpusSpec::mixed(opts.count, opts.clusters, opts.antimeridian_fraction, layout,
                                                     layout * 2 + 2, "t");
  return {generate_dataset("S", s), generate_dataset("T", t)};
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchOptions& opts) {
  if (opts.repetitions < 1) throw Error(ErrorCode::invalid_config, "--repetitions must be at least 1");
  if (opts.corpora < 1) throw Error(ErrorCode::invalid_config, "--corpora must be at least 1");
  if (opts.source.has_value() != opts.target.has_value())
    throw Error(ErrorCode::invalid_config, "--source and --target go together");

  std::vector<Relation> relations;
  if (opts.relations.empty()) relations.assign(kCoreRelations.begin(), kCoreRelations.end());
  for (const std::string& r : opts.relations) relations.push_back(parse_relation(r));
  std::vector<GranularityPolicy> policies;
  for (const std::string& h : opts.heuristics) {
    policies.push_back(GranularityPolicy::parse(h));
    policies.back().mode = parse_delta_mode(opts.delta_mode);
  }
  if (policies.empty()) throw Error(ErrorCode::invalid_config, "no heuristic given");
  if (opts.threads.empty()) throw Error(ErrorCode::invalid_config, "no thread count given");
  const SchedulePolicy schedule_policy = parse_schedule_policy(opts.schedule);
  for (std::size_t w : opts.threads) ExecutorConfig{w, opts.chunk_size, schedule_policy}.validate();

  std::vector<BenchRow> rows;
  for (std::size_t k = 0; k < opts.corpora; ++k) {
    const Corpus corpus = make_corpus(opts, k);
    spdlog::info("corpus {}: {} x {} features", k, corpus.source.size(), corpus.target.size());
    for (Relation r : relations) {
      std::optional<Mapping> naive;
      std::optional<double> naive_seconds;
      if (opts.naive) {
        std::vector<double> times;
        for (std::size_t rep = 0; rep < opts.repetitions; ++rep)
          times.push_back(timed([&] { naive = brute_force_link(corpus.source, corpus.target, r).mapping; }));
        naive_seconds = median(times);
      }
      for (const GranularityPolicy& policy : policies)
        for (std::size_t workers : opts.threads) {
          LinkConfig cfg;
          cfg.granularity = policy;
          cfg.executor = {workers, opts.chunk_size, schedule_policy};
          std::vector<double> times;
          LinkResult result;
          for (std::size_t rep = 0; rep < opts.repetitions; ++rep)
            times.push_back(timed([&] { result = link(corpus.source, corpus.target, r, cfg); }));

          BenchRow row;
          row.corpus = k;
          row.relation = std::string(to_string(r));
          row.heuristic = policy.token();
          row.threads = workers;
          row.source_size = corpus.source.size();
          row.target_size = corpus.target.size();
          row.naive_computations = row.source_size * row.target_size;
          row.radon_computations = result.stats.full_computations;
          row.reduction = row.radon_computations == 0
                              ? static_cast<double>(row.naive_computations)
                              : static_cast<double>(row.naive_computations) / static_cast<double>(row.radon_computations);
          row.radon_seconds = median(times);
          row.naive_seconds = naive_seconds;
          if (naive_seconds && row.radon_seconds > 0.0) row.speedup = *naive_seconds / row.radon_seconds;
          row.links = result.mapping.size();
          row.digest = mapping_digest(result.mapping);
          if (naive) row.matches_naive = *naive == result.mapping;
          rows.push_back(std::move(row));
        }
    }
  }
  return rows;
}

void write_bench_report(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "corpus\trelation\theuristic\tthreads\tsource\ttarget\tnaive_computations\tradon_computations\treduction"
         "\tnaive_seconds\tradon_seconds\tspeedup\tlinks\tdigest\tmatches_naive\n";
  for (const BenchRow& r : rows) {
    out << r.corpus << '\t' << r.relation << '\t' << r.heuristic << '\t' << r.threads << '\t' << r.source_size << '\t'
        << r.target_size << '\t' << r.naive_computations << '\t' << r.radon_computations << '\t'
        << fixed(r.reduction, 2) << '\t' << (r.naive_seconds ? fixed(*r.naive_seconds, 6) : "-") << '\t'
        << fixed(r.radon_seconds, 6) << '\t' << (r.speedup ? fixed(*r.speedup, 2) : "-") << '\t' << r.links << '\t'
        << r.digest << '\t' << (r.matches_naive ? (*r.matches_naive ? "yes" : "NO") : "-") << '\n';
  }
}

std::vector<HeuristicVerdict> heuristic_study(const std::vector<BenchRow>& rows, double slack) {
  std::map<std::pair<std::size_t, std::string>, std::vector<const BenchRow*>> groups;
  for (const BenchRow& r : rows) groups[{r.corpus, r.relation}].push_back(&r);
  std::vector<HeuristicVerdict> out;
  for (const auto& [key, group] : groups) {
    const BenchRow* best = nullptr;
    const BenchRow* avg = nullptr;
    for (const BenchRow* r : group) {
      if (!best || r->radon_seconds < best->radon_seconds) best = r;
      if (r->heuristic == "avg" && (!avg || r->radon_seconds < avg->radon_seconds)) avg = r;
    }
    if (!avg) continue;
    HeuristicVerdict v;
    v.corpus = key.first;
    v.relation = key.second;
    v.best = best->heuristic;
    v.best_seconds = best->radon_seconds;
    v.avg_seconds = avg->radon_seconds;
    v.avg_close = avg->radon_seconds <= (1.0 + slack) * best->radon_seconds;
    out.push_back(v);
  }
  return out;
}

int cmd_bench(const BenchOptions& opts, std::ostream& out) {
  try {
    const std::vector<BenchRow> rows = run_bench(opts);
    write_bench_report(rows, out);
    if (opts.heuristics.size() > 1) {
      const auto verdicts = heuristic_study(rows);
      const auto close = std::count_if(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.avg_close; });
      out << "# avg within 25% of the best heuristic in " << close << " of " << verdicts.size() << " runs\n";
    }
    const bool all_match = std::all_of(rows.begin(), rows.end(),
                                       [](const BenchRow& r) { return !r.matches_naive || *r.matches_naive; });
    if (!all_match) {
      spdlog::error("some mappings differ from the brute-force result");
      return kDifferences;
    }
    return kOk;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    spdlog::error("internal error: {}", e.what());
    return kRunFailure;
  }
}

}  // namespace radon::cli
