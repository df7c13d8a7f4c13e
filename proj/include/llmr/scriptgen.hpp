#pragma once

#include "llmr/config.hpp"
#include "llmr/partition.hpp"

#include <optional>
#include <string>
#include <vector>

namespace llmr {

enum class Dialect { gridengine, slurm, lsf };

std::string_view to_string(Dialect d) noexcept;

/// Dialect whose submission script a backend writes. The local backend
/// executes the same run scripts a Grid Engine array job would dispatch.
Dialect dialect_for(BackendKind backend) noexcept;

/**
 * A materialized workspace.
 *
 * Every path is relative to `work_dir`, spelled exactly as it appears inside
 * the generated scripts; use `resolve()` for filesystem access.
 */
struct JobPlan {
    fs::path work_dir;
    fs::path workspace;
    std::vector<TaskPlan> tasks;
    AppType mode{AppType::siso};
    Dialect dialect{Dialect::gridengine};
    std::string job_name;
    fs::path submission_script;
    std::vector<fs::path> run_scripts;
    std::vector<fs::path> manifests;

    std::optional<fs::path> reducer_script;
    std::string reducer_name;
    bool exclusive{false};
    std::string extra_options;

    fs::path resolve(fs::path const& rel) const { return resolve_against(work_dir, rel); }
};

std::string workspace_name(long pid);

/// Create `work_dir/.MAPRED.<pid>`. Throws Error if it already exists.
fs::path create_workspace(fs::path const& work_dir, long pid);

std::string emit_run_script_siso(TaskPlan const& task, std::string const& mapper);

/// `<input> <output>\n` per item, in task order.
std::string emit_manifest(TaskPlan const& task);

std::string emit_run_script_mimo(std::size_t task_index, std::string const& mapper,
                                 fs::path const& workspace);

struct SubmissionOptions {
    Dialect dialect{Dialect::gridengine};
    std::string job_name;
    std::size_t tasks{1};
    fs::path workspace;
    bool exclusive{false};
    std::string extra_options;
};

/// Array-job script dispatching `<workspace>/run_llmap_<task id>`.
std::string emit_submission_script(SubmissionOptions const& opts);

/// Run script for the reduce step: `<reducer> <output_dir> <redout>`.
std::string emit_reducer_script(std::string const& reducer, fs::path const& output_dir,
                                std::string const& redout);

/// Single-task script for the reduce step, held until `after_job_id` succeeds.
std::string emit_reducer_submission_script(SubmissionOptions const& opts,
                                           std::string const& after_job_id);

inline constexpr std::string_view reducer_run_script_name = "run_llmap_reduce";

fs::path run_script_name(std::size_t task_index);
fs::path manifest_name(std::size_t task_index);
std::string task_log_name(std::string const& job_id, std::size_t task_index);
std::string reducer_log_name(std::string const& job_id);

/// Write `text` to `path`, marking it executable when asked.
void write_text_file(fs::path const& path, std::string const& text, bool executable);

/**
 * Create the workspace and write every run script, manifest, the mapper
 * submission script and the reducer run script for a validated config.
 */
JobPlan materialize(LaunchConfig const& config, std::vector<TaskPlan> tasks, long pid);

}  // namespace llmr
