#include "radon/executor.hpp"

#include <atomic>
#include <exception>
#include <string>
#include <thread>

#include "radon/error.hpp"

namespace radon {

std::string_view to_string(SchedulePolicy p) noexcept {
  return p == SchedulePolicy::round_robin ? "round-robin" : "work-stealing";
}

SchedulePolicy parse_schedule_policy(std::string_view token) {
  if (token == "round-robin" || token == "round_robin") return SchedulePolicy::round_robin;
  if (token == "work-stealing" || token == "work_stealing") return SchedulePolicy::work_stealing;
  throw Error(ErrorCode::invalid_config, "unknown schedule policy '" + std::string(token) + "'");
}

void ExecutorConfig::validate() const {
  if (workers < 1) throw Error(ErrorCode::invalid_config, "workers must be at least 1");
  if (chunk_size < 1) throw Error(ErrorCode::invalid_config, "chunk size must be at least 1");
}

std::vector<WorkChunk> schedule(std::span<const CellIndex> cells, const ExecutorConfig& cfg) {
  cfg.validate();
  std::vector<WorkChunk> chunks;
  chunks.reserve((cells.size() + cfg.chunk_size - 1) / cfg.chunk_size);
  for (std::size_t first = 0; first < cells.size(); first += cfg.chunk_size) {
    const std::size_t k = chunks.size();
    const std::size_t count = std::min(cfg.chunk_size, cells.size() - first);
    chunks.push_back({k, cells.subspan(first, count), k % cfg.workers});
  }
  return chunks;
}

void execute(std::span<const WorkChunk> chunks, const ExecutorConfig& cfg, const ChunkTask& task) {
  cfg.validate();
  if (chunks.empty()) return;

  if (cfg.workers == 1) {
    for (const WorkChunk& chunk : chunks) task(0, chunk);
    return;
  }

  std::atomic<bool> abort{false};
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(cfg.workers);

  auto body = [&](std::size_t worker) {
    try {
      if (cfg.policy == SchedulePolicy::round_robin) {
        for (std::size_t k = worker; k < chunks.size() && !abort.load(std::memory_order_relaxed); k += cfg.workers)
          task(worker, chunks[k]);
      } else {
        while (!abort.load(std::memory_order_relaxed)) {
          const std::size_t k = next.fetch_add(1, std::memory_order_relaxed);
          if (k >= chunks.size()) break;
          task(worker, chunks[k]);
        }
      }
    } catch (...) {
      failures[worker] = std::current_exception();
      abort.store(true, std::memory_order_relaxed);
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(cfg.workers);
    for (std::size_t w = 0; w < cfg.workers; ++w) pool.emplace_back(body, w);
  }

  for (const std::exception_ptr& failure : failures)
    if (failure) std::rethrow_exception(failure);
}

}  // namespace radon
