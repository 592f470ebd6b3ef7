#include <benchmark/benchmark.h>

#include <map>
#include <utility>

#include "radon/linker.hpp"
#include "radon/synthetic.hpp"

namespace {

struct Corpus {
  radon::Dataset source;
  radon::Dataset target;
};

const Corpus& corpus(std::size_t n, std::size_t clusters) {
  static std::map<std::pair<std::size_t, std::size_t>, Corpus> cache;
  auto it = cache.find({n, clusters});
  if (it == cache.end()) {
    using radon::SyntheticCorpusSpec;
    Corpus c{radon::generate_dataset("s", SyntheticCorpusSpec::mixed(n, clusters, 0.02, 77, 1, "s")),
             radon::generate_dataset("t", SyntheticCorpusSpec::mixed(n, clusters, 0.02, 77, 2, "t"))};
    it = cache.emplace(std::pair{n, clusters}, std::move(c)).first;
  }
  return it->second;
}

void BM_Link(benchmark::State& state) {
  const Corpus& c = corpus(static_cast<std::size_t>(state.range(0)), 10);
  radon::LinkConfig cfg;
  cfg.executor.workers = static_cast<std::size_t>(state.range(1));
  std::uint64_t computations = 0;
  for (auto _ : state) {
    const radon::LinkResult res = radon::link(c.source, c.target, radon::Relation::intersects, cfg);
    computations = res.stats.full_computations;
    benchmark::DoNotOptimize(res.mapping.links.data());
  }
  state.counters["computations"] = static_cast<double>(computations);
}
BENCHMARK(BM_Link)->Args({500, 1})->Args({2000, 1})->Args({2000, 4})->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& state) {
  const Corpus& c = corpus(static_cast<std::size_t>(state.range(0)), 10);
  for (auto _ : state) {
    const radon::LinkResult res = radon::brute_force_link(c.source, c.target, radon::Relation::intersects);
    benchmark::DoNotOptimize(res.mapping.links.data());
  }
  state.counters["computations"] = static_cast<double>(c.source.size() * c.target.size());
}
BENCHMARK(BM_BruteForce)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Heuristic(benchmark::State& state) {
  const Corpus& c = corpus(1000, 10);
  const char* tokens[] = {"min", "max", "avg", "median"};
  radon::LinkConfig cfg;
  cfg.granularity = radon::GranularityPolicy::parse(tokens[state.range(0)]);
  cfg.granularity.mode = state.range(1) == 0 ? radon::GranularityPolicy{}.mode : radon::DeltaMode::reciprocal;
  for (auto _ : state) benchmark::DoNotOptimize(radon::link(c.source, c.target, radon::Relation::within, cfg));
  state.SetLabel(std::string(tokens[state.range(0)]) + (state.range(1) == 0 ? "/literal" : "/reciprocal"));
}
BENCHMARK(BM_Heuristic)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace
