#pragma once

#include <cstdint>
#include <functional>

namespace percolata {

/// Worker count: min(PERCOLATA_THREADS if set, hardware concurrency), at
/// least 1.
int worker_count();

/// Splits [0, total) into contiguous chunks, runs body(worker, begin, end) on
/// a pool, and joins. Deterministic partition: results indexed by position
/// are reproducible regardless of scheduling.
void parallel_ranges(
    std::int64_t total,
    const std::function<void(int worker, std::int64_t begin, std::int64_t end)>&
        body);

}  // namespace percolata
