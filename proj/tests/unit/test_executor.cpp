#include <gtest/gtest.h>

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "generators.hpp"
#include "radon/error.hpp"
#include "radon/executor.hpp"

using namespace radon;

namespace {

std::vector<CellIndex> cells(std::size_t n) {
  std::vector<CellIndex> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back({static_cast<std::int64_t>(k), 0});
  return out;
}

}  // namespace

TEST(Schedule, FiveCellsTwoWorkers) {
  const auto cs = cells(5);
  const auto chunks = schedule(cs, {2, 2, SchedulePolicy::round_robin});
  ASSERT_EQ(chunks.size(), 3u);
  EXPECT_EQ(chunks[0].cells.size(), 2u);
  EXPECT_EQ(chunks[0].cells[0].i, 0);
  EXPECT_EQ(chunks[0].worker, 0u);
  EXPECT_EQ(chunks[1].cells[0].i, 2);
  EXPECT_EQ(chunks[1].cells[1].i, 3);
  EXPECT_EQ(chunks[1].worker, 1u);
  EXPECT_EQ(chunks[2].cells.size(), 1u);
  EXPECT_EQ(chunks[2].cells[0].i, 4);
  EXPECT_EQ(chunks[2].worker, 0u);
}

TEST(Schedule, SingleWorkerRunsInOrder) {
  const auto cs = cells(10);
  const ExecutorConfig cfg{1, 3, SchedulePolicy::round_robin};
  const auto chunks = schedule(cs, cfg);
  std::vector<std::int64_t> order;
  execute(chunks, cfg, [&](std::size_t worker, const WorkChunk& c) {
    EXPECT_EQ(worker, 0u);
    for (const CellIndex& cell : c.cells) order.push_back(cell.i);
  });
  std::vector<std::int64_t> expected(10);
  for (int k = 0; k < 10; ++k) expected[static_cast<std::size_t>(k)] = k;
  EXPECT_EQ(order, expected);
}

TEST(Schedule, DefaultsAndValidation) {
  const ExecutorConfig cfg;
  EXPECT_EQ(cfg.workers, 1u);
  EXPECT_EQ(cfg.chunk_size, 1000u);
  EXPECT_EQ(cfg.policy, SchedulePolicy::round_robin);
  EXPECT_THROW((ExecutorConfig{0, 10, SchedulePolicy::round_robin}.validate()), Error);
  EXPECT_THROW((ExecutorConfig{2, 0, SchedulePolicy::round_robin}.validate()), Error);
  EXPECT_TRUE(schedule({}, cfg).empty());
  EXPECT_EQ(parse_schedule_policy("work-stealing"), SchedulePolicy::work_stealing);
  EXPECT_EQ(parse_schedule_policy("round_robin"), SchedulePolicy::round_robin);
  EXPECT_THROW((void)parse_schedule_policy("random"), Error);
}

TEST(ScheduleProperty, EveryCellRunsExactlyOnce) {
  radon::testing::Gen g(51);
  for (int trial = 0; trial < 200; ++trial) {
    const auto n = static_cast<std::size_t>(g.integer(0, 300));
    const ExecutorConfig cfg{static_cast<std::size_t>(g.integer(1, 8)), static_cast<std::size_t>(g.integer(1, 40)),
                             g.chance(0.5) ? SchedulePolicy::round_robin : SchedulePolicy::work_stealing};
    const auto cs = cells(n);
    const auto chunks = schedule(cs, cfg);
    for (const WorkChunk& c : chunks) {
      EXPECT_LE(c.cells.size(), cfg.chunk_size);
      EXPECT_EQ(c.worker, c.index % cfg.workers);
    }
    std::vector<std::atomic<int>> hits(n);
    std::mutex m;
    std::vector<std::vector<std::size_t>> per_worker(cfg.workers);
    execute(chunks, cfg, [&](std::size_t worker, const WorkChunk& c) {
      if (cfg.policy == SchedulePolicy::round_robin) EXPECT_EQ(worker, c.worker);
      for (const CellIndex& cell : c.cells) hits[static_cast<std::size_t>(cell.i)]++;
      std::lock_guard lock(m);
      per_worker[worker].push_back(c.index);
    });
    for (std::size_t k = 0; k < n; ++k) EXPECT_EQ(hits[k].load(), 1);
    for (const auto& seq : per_worker) EXPECT_TRUE(std::is_sorted(seq.begin(), seq.end()));
  }
}

TEST(Execute, FailurePropagates) {
  const auto cs = cells(100);
  for (SchedulePolicy p : {SchedulePolicy::round_robin, SchedulePolicy::work_stealing})
    for (std::size_t workers : {1u, 4u}) {
      const ExecutorConfig cfg{workers, 5, p};
      const auto chunks = schedule(cs, cfg);
      std::atomic<int> ran{0};
      EXPECT_THROW(execute(chunks, cfg,
                           [&](std::size_t, const WorkChunk& c) {
                             ++ran;
                             if (c.index == 3) throw std::runtime_error("boom");
                           }),
                   std::runtime_error);
      if (workers == 1) EXPECT_EQ(ran.load(), 4);
    }
}
