#include "llmr/partition.hpp"

#include "llmr/error.hpp"

#include <algorithm>
#include <string>

namespace llmr {

std::size_t resolve_task_count(std::size_t file_count, std::optional<std::size_t> np,
                               std::optional<std::size_t> ndata,
                               std::size_t max_array_tasks) {
    if (file_count == 0) throw Error("no input files to partition");
    if ((np && *np == 0) || (ndata && *ndata == 0))
        throw Error("np and ndata must be positive");

    std::size_t tasks = file_count;
    if (ndata)
        tasks = (file_count + *ndata - 1) / *ndata;
    else if (np)
        tasks = std::min(*np, file_count);

    if (tasks > max_array_tasks)
        throw Error(std::to_string(tasks) + " array tasks exceed the scheduler limit of " +
                    std::to_string(max_array_tasks) + "; use --np or --ndata");
    return tasks;
}

namespace {

void check_task_count(std::size_t items, std::size_t tasks) {
    if (tasks == 0 || tasks > items)
        throw Error("cannot split " + std::to_string(items) + " items into " +
                    std::to_string(tasks) + " non-empty tasks");
}

}  // namespace

std::vector<TaskPlan> assign_block(std::vector<WorkItem> const& items, std::size_t tasks) {
    check_task_count(items.size(), tasks);
    auto const base = items.size() / tasks;
    auto const extra = items.size() % tasks;

    std::vector<TaskPlan> plans;
    plans.reserve(tasks);
    auto first = items.begin();
    for (std::size_t t = 0; t < tasks; ++t) {
        auto const n = static_cast<std::ptrdiff_t>(base + (t < extra ? 1 : 0));
        plans.push_back({t + 1, {first, first + n}});
        first += n;
    }
    return plans;
}

std::vector<TaskPlan> assign_cyclic(std::vector<WorkItem> const& items, std::size_t tasks) {
    check_task_count(items.size(), tasks);
    std::vector<TaskPlan> plans(tasks);
    for (std::size_t t = 0; t < tasks; ++t) {
        plans[t].index = t + 1;
        plans[t].items.reserve(items.size() / tasks + 1);
    }
    for (std::size_t j = 0; j < items.size(); ++j) plans[j % tasks].items.push_back(items[j]);
    return plans;
}

std::vector<TaskPlan> assign(std::vector<WorkItem> const& items, std::size_t tasks,
                             Distribution distribution) {
    return distribution == Distribution::block ? assign_block(items, tasks)
                                               : assign_cyclic(items, tasks);
}

}  // namespace llmr
