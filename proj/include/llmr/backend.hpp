#pragma once

#include "llmr/scriptgen.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace llmr {

using Clock = std::chrono::steady_clock;

/// Backend-issued identifier of a submitted (array) job.
struct JobHandle {
    std::string job_id;
    std::size_t task_count{};

    bool operator==(JobHandle const&) const = default;
};

struct TaskResult {
    std::size_t task_index{};
    int exit_status{};
    double elapsed{};  // seconds
    fs::path log_path;
    bool started{true};  // false when a dependency failed and the task was skipped
    Clock::time_point started_at{};
    Clock::time_point finished_at{};
};

/**
 * Uniform submission contract over execution targets.
 *
 * `submit_dependent` runs `script` as a single task once every task of `after`
 * has finished, and only if all of them exited 0.
 */
class Backend {
public:
    virtual ~Backend() = default;

    /// True if jobs actually run (and `await_completion` is meaningful).
    virtual bool executes() const noexcept = 0;

    virtual JobHandle submit_array(JobPlan const& plan, unsigned concurrency_cap) = 0;
    virtual JobHandle submit_dependent(JobPlan const& plan, fs::path const& script,
                                       JobHandle const& after) = 0;
    virtual std::vector<TaskResult> await_completion(JobHandle const& handle) = 0;
};

/**
 * Runs array tasks as local subprocesses.
 *
 * Each task's run script is executed with the plan's work_dir as its working
 * directory, stdin from /dev/null, and stdout+stderr merged into
 * `<workspace>/llmap.log-<jobid>-<taskid>`. At most `concurrency_cap` tasks of
 * one job are alive at a time. Job ids are 1, 2, 3, ... per backend object.
 *
 * The object is driven from one controlling thread. The destructor waits for
 * every submitted job.
 */
class LocalBackend final : public Backend {
public:
    /// `extra_env` is added to (and overrides) the launcher's environment for tasks.
    explicit LocalBackend(std::map<std::string, std::string> extra_env = {});
    ~LocalBackend() override;

    LocalBackend(LocalBackend const&) = delete;
    LocalBackend& operator=(LocalBackend const&) = delete;

    bool executes() const noexcept override { return true; }
    JobHandle submit_array(JobPlan const& plan, unsigned concurrency_cap) override;
    JobHandle submit_dependent(JobPlan const& plan, fs::path const& script,
                               JobHandle const& after) override;
    std::vector<TaskResult> await_completion(JobHandle const& handle) override;

private:
    struct Job;

    std::shared_ptr<Job> find(JobHandle const& handle) const;
    std::string next_id();

    std::map<std::string, std::string> extra_env_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Job>> jobs_;
    std::size_t next_id_{1};
};

/**
 * Writes scheduler scripts without running anything.
 *
 * `submit_array` checks the plan's submission script is on disk and returns a
 * synthetic handle; `submit_dependent` writes the reducer submission script
 * (`<workspace>/<reducer>_reduce`) with the dialect's dependency directive.
 */
class DryRunBackend final : public Backend {
public:
    explicit DryRunBackend(Dialect dialect) : dialect_(dialect) {}

    bool executes() const noexcept override { return false; }
    JobHandle submit_array(JobPlan const& plan, unsigned concurrency_cap) override;
    JobHandle submit_dependent(JobPlan const& plan, fs::path const& script,
                               JobHandle const& after) override;
    std::vector<TaskResult> await_completion(JobHandle const& handle) override;

    Dialect dialect() const noexcept { return dialect_; }
    /// Script path (relative to work_dir) emitted for each handle.
    fs::path const& script_of(JobHandle const& handle) const;

private:
    Dialect dialect_;
    std::size_t next_id_{1};
    std::map<std::string, fs::path> scripts_;
};

std::unique_ptr<Backend> make_backend(BackendKind kind,
                                      std::map<std::string, std::string> extra_env = {});

}  // namespace llmr
