#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "radon/de9im.hpp"
#include "radon/relation.hpp"
#include "radon/wkt.hpp"

namespace {

radon::Geometry circle(double cx, double cy, double r, int n) {
  radon::Ring ring;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * std::numbers::pi * k / n;
    ring.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  ring.push_back(ring.front());
  return radon::Geometry::polygon({{ring}});
}

void BM_ParseWkt(benchmark::State& state) {
  const std::string text = radon::to_wkt(circle(0, 0, 1, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(radon::parse_wkt(text));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseWkt)->Arg(16)->Arg(256)->Arg(4096);

void BM_De9imOverlappingPolygons(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const radon::PreparedGeometry a(circle(0, 0, 1, n));
  const radon::PreparedGeometry b(circle(0.5, 0.2, 1, n));
  for (auto _ : state) benchmark::DoNotOptimize(radon::de9im(a, b));
}
BENCHMARK(BM_De9imOverlappingPolygons)->Arg(8)->Arg(64)->Arg(256);

void BM_De9imPointInPolygon(benchmark::State& state) {
  const radon::PreparedGeometry a(circle(0, 0, 1, static_cast<int>(state.range(0))));
  const radon::PreparedGeometry p(radon::Geometry::point({0.1, 0.2}));
  for (auto _ : state) benchmark::DoNotOptimize(radon::de9im(p, a));
}
BENCHMARK(BM_De9imPointInPolygon)->Arg(8)->Arg(256)->Arg(4096);

void BM_EvaluateRelations(benchmark::State& state) {
  const radon::PreparedGeometry a(circle(0, 0, 1, 64));
  const radon::PreparedGeometry b(circle(0.2, 0.1, 0.5, 64));
  const auto r = radon::kCoreRelations[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) benchmark::DoNotOptimize(radon::evaluate(r, a, b));
  state.SetLabel(std::string(radon::to_string(r)));
}
BENCHMARK(BM_EvaluateRelations)->DenseRange(0, 6);

}  // namespace
BENCHMARK_MAIN();
