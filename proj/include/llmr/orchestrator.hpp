#pragma once

#include "llmr/backend.hpp"
#include "llmr/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace llmr {

enum class RunStatus {
    succeeded,
    mapper_failed,
    reducer_failed,
    emitted,  // dry-run backend: scripts written, nothing executed
};

std::string_view to_string(RunStatus s) noexcept;

struct RunReport {
    RunStatus status{RunStatus::succeeded};
    JobHandle mapper_handle;
    std::optional<JobHandle> reducer_handle;
    std::vector<TaskResult> task_results;
    std::optional<TaskResult> reducer_result;
    std::optional<fs::path> reducer_output;
    fs::path workspace;  // absolute
    bool workspace_kept{false};
    double wall_time{};
    std::size_t file_count{};
    std::size_t task_count{};
    std::vector<std::string> warnings;

    bool succeeded() const noexcept {
        return status == RunStatus::succeeded || status == RunStatus::emitted;
    }
};

/**
 * Discover, partition, generate, submit the mapper array, submit the
 * dependent reducer, wait, and clean up.
 *
 * Blocks until completion on an executing backend; returns right after
 * emission on a dry-run backend. Failures inside a stage are rethrown as
 * StageError. A failed run always keeps its workspace.
 */
RunReport launch(LaunchConfig const& config, Backend& backend, long pid);

/// Same, with the backend named by the config and the current process id.
RunReport launch(LaunchConfig const& config);

/**
 * Remove the workspace iff `!keep && run_succeeded`. Returns whether it was
 * removed; a removal failure is reported through `error` and is not fatal.
 */
bool cleanup(fs::path const& workspace, bool keep, bool run_succeeded,
             std::string* error = nullptr);

std::string summarize(RunReport const& report);

/// Write the report as JSON.
void write_report(RunReport const& report, fs::path const& path);

}  // namespace llmr
