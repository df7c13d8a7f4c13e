#pragma once

// Independent reference constructions used to check the partitioner. They
// work on plain indices and share no code with src/partition.cpp.

#include <cstddef>
#include <vector>

namespace llmr::test {

/// Block split built by dealing one unit of size at a time round-robin, then
/// cutting the index sequence into consecutive runs of those sizes.
inline std::vector<std::vector<std::size_t>> block_oracle(std::size_t items, std::size_t tasks) {
    std::vector<std::size_t> sizes(tasks, 0);
    for (std::size_t j = 0; j < items; ++j) ++sizes[j % tasks];

    std::vector<std::vector<std::size_t>> out(tasks);
    std::size_t next = 0;
    for (std::size_t t = 0; t < tasks; ++t)
        for (std::size_t n = 0; n < sizes[t]; ++n) out[t].push_back(next++);
    return out;
}

/// Cyclic split built per task by striding from its own offset.
inline std::vector<std::vector<std::size_t>> cyclic_oracle(std::size_t items, std::size_t tasks) {
    std::vector<std::vector<std::size_t>> out(tasks);
    for (std::size_t t = 0; t < tasks; ++t)
        for (std::size_t j = t; j < items; j += tasks) out[t].push_back(j);
    return out;
}

/// Task count with ndata files per task, counted by repeated removal.
inline std::size_t ndata_task_count_oracle(std::size_t files, std::size_t ndata) {
    std::size_t tasks = 0;
    for (std::size_t left = files; left > 0; left -= (left < ndata ? left : ndata)) ++tasks;
    return tasks;
}

}  // namespace llmr::test
