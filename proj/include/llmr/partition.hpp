#pragma once

#include "llmr/config.hpp"
#include "llmr/discovery.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace llmr {

/// One array task: 1-based index and its ordered work items.
struct TaskPlan {
    std::size_t index{};
    std::vector<WorkItem> items;

    bool operator==(TaskPlan const&) const = default;
};

/**
 * Number of array tasks for `file_count` inputs.
 *
 * ndata wins over np: T = ceil(F / ndata). Otherwise T = min(np, F), or F when
 * neither is set. Throws Error when T exceeds `max_array_tasks`.
 */
std::size_t resolve_task_count(std::size_t file_count, std::optional<std::size_t> np,
                               std::optional<std::size_t> ndata,
                               std::size_t max_array_tasks);

/// Contiguous slices; the first |items| mod T tasks get one extra item.
std::vector<TaskPlan> assign_block(std::vector<WorkItem> const& items, std::size_t tasks);

/// Item j goes to task (j mod T) + 1.
std::vector<TaskPlan> assign_cyclic(std::vector<WorkItem> const& items, std::size_t tasks);

std::vector<TaskPlan> assign(std::vector<WorkItem> const& items, std::size_t tasks,
                             Distribution distribution);

}  // namespace llmr
