#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "radon/tiling.hpp"

namespace radon {

enum class SchedulePolicy {
  round_robin,    // chunk k runs on worker k mod workers
  work_stealing,  // idle workers pull the next unclaimed chunk
};

std::string_view to_string(SchedulePolicy p) noexcept;
SchedulePolicy parse_schedule_policy(std::string_view token);

struct ExecutorConfig {
  std::size_t workers = 1;
  std::size_t chunk_size = 1000;
  SchedulePolicy policy = SchedulePolicy::round_robin;

  /// Throws Error(invalid_config) unless workers >= 1 and chunk_size >= 1.
  void validate() const;
};

/// Consecutive run of shared cells handed to one worker.
struct WorkChunk {
  std::size_t index = 0;
  std::span<const CellIndex> cells;
  std::size_t worker = 0;
};

/// Cuts `cells` into chunks of at most chunk_size, in order, and assigns
/// chunk k to worker k mod workers.
std::vector<WorkChunk> schedule(std::span<const CellIndex> cells, const ExecutorConfig& cfg);

using ChunkTask = std::function<void(std::size_t worker, const WorkChunk& chunk)>;

/// Runs `task` over every chunk. Under round_robin each worker walks its own
/// chunks in index order; under work_stealing the `worker` field of a chunk is
/// ignored and the running worker's id is passed instead. A single worker runs
/// on the calling thread.
///
/// If a task throws, the remaining workers stop at their next chunk boundary
/// and the exception from the lowest-numbered failing worker is rethrown.
void execute(std::span<const WorkChunk> chunks, const ExecutorConfig& cfg, const ChunkTask& task);

}  // namespace radon
