#include "llmr/backend.hpp"

#include "llmr/error.hpp"

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <future>
#include <spawn.h>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

extern char** environ;

namespace llmr {

namespace {

/// Owned copy of an environment block suitable for posix_spawn.
class Environment {
public:
    explicit Environment(std::map<std::string, std::string> const& extra) {
        for (char** e = environ; e && *e; ++e) {
            std::string entry(*e);
            auto const eq = entry.find('=');
            if (eq != std::string::npos && extra.count(entry.substr(0, eq))) continue;
            entries_.push_back(std::move(entry));
        }
        for (auto const& [k, v] : extra) entries_.push_back(k + "=" + v);
        for (auto& s : entries_) pointers_.push_back(s.data());
        pointers_.push_back(nullptr);
    }

    char* const* data() const { return pointers_.data(); }

private:
    std::vector<std::string> entries_;
    std::vector<char*> pointers_;
};

int decode_status(int status) {
    if (WIFEXITED(status)) return WEXITSTATUS(status);
    if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
    return -1;
}

void append_to_log(fs::path const& log, std::string const& message) {
    int fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) return;
    auto const n = ::write(fd, message.data(), message.size());
    (void)n;
    ::close(fd);
}

/// Run `program` in `cwd` with output merged into `log`; returns the exit status.
int run_process(fs::path const& program, fs::path const& cwd, fs::path const& log,
                Environment const& env) {
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addchdir_np(&actions, cwd.c_str());
    posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, log.c_str(),
                                     O_WRONLY | O_CREAT | O_TRUNC, 0644);
    posix_spawn_file_actions_adddup2(&actions, STDOUT_FILENO, STDERR_FILENO);

    std::string prog = program.string();
    char* argv[] = {prog.data(), nullptr};
    pid_t pid = -1;
    int const rc = ::posix_spawn(&pid, prog.c_str(), &actions, nullptr, argv, env.data());
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
        append_to_log(log, "llmapreduce: cannot start " + prog + ": " + std::strerror(rc) + "\n");
        return 127;
    }

    int status = 0;
    while (::waitpid(pid, &status, 0) < 0) {
        if (errno != EINTR) return -1;
    }
    return decode_status(status);
}

TaskResult run_task(std::size_t index, fs::path const& program, fs::path const& cwd,
                    fs::path const& log, Environment const& env) {
    TaskResult r;
    r.task_index = index;
    r.log_path = log;
    r.started_at = Clock::now();
    r.exit_status = run_process(program, cwd, log, env);
    r.finished_at = Clock::now();
    r.elapsed = std::chrono::duration<double>(r.finished_at - r.started_at).count();
    return r;
}

void require_executable(fs::path const& script) {
    if (!fs::is_regular_file(script)) throw Error("run script missing: " + script.string());
    if (::access(script.c_str(), X_OK) != 0)
        throw Error("run script not executable: " + script.string());
}

}  // namespace

struct LocalBackend::Job {
    JobHandle handle;
    std::vector<TaskResult> results;
    std::promise<void> finished;
    std::shared_future<void> done{finished.get_future().share()};
    std::thread controller;
};

LocalBackend::LocalBackend(std::map<std::string, std::string> extra_env)
    : extra_env_(std::move(extra_env)) {}

LocalBackend::~LocalBackend() {
    std::lock_guard lock(mutex_);
    for (auto& [id, job] : jobs_)
        if (job->controller.joinable()) job->controller.join();
}

std::string LocalBackend::next_id() {
    std::lock_guard lock(mutex_);
    return std::to_string(next_id_++);
}

std::shared_ptr<LocalBackend::Job> LocalBackend::find(JobHandle const& handle) const {
    std::lock_guard lock(mutex_);
    auto it = jobs_.find(handle.job_id);
    if (it == jobs_.end()) throw Error("unknown job handle " + handle.job_id);
    return it->second;
}

JobHandle LocalBackend::submit_array(JobPlan const& plan, unsigned concurrency_cap) {
    if (concurrency_cap == 0) throw Error("concurrency cap must be positive");
    if (plan.run_scripts.empty()) throw Error("plan has no run scripts");

    std::vector<fs::path> programs;
    for (auto const& script : plan.run_scripts) {
        programs.push_back(fs::absolute(plan.resolve(script)));
        require_executable(programs.back());
    }

    auto job = std::make_shared<Job>();
    job->handle = {next_id(), programs.size()};
    job->results.resize(programs.size());

    auto const cwd = fs::absolute(plan.work_dir.empty() ? fs::current_path() : plan.work_dir);
    auto const ws = cwd / plan.workspace;
    auto env = std::make_shared<Environment>(extra_env_);
    auto const workers = std::min<std::size_t>(concurrency_cap, programs.size());

    job->controller = std::thread([job, programs, cwd, ws, env, workers] {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < programs.size(); i = next++) {
                auto const log = ws / task_log_name(job->handle.job_id, i + 1);
                job->results[i] = run_task(i + 1, programs[i], cwd, log, *env);
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        job->finished.set_value();
    });

    std::lock_guard lock(mutex_);
    jobs_.emplace(job->handle.job_id, job);
    return job->handle;
}

JobHandle LocalBackend::submit_dependent(JobPlan const& plan, fs::path const& script,
                                         JobHandle const& after) {
    auto parent = find(after);
    auto const program = fs::absolute(plan.resolve(script));
    require_executable(program);

    auto job = std::make_shared<Job>();
    job->handle = {next_id(), 1};
    job->results.resize(1);

    auto const cwd = fs::absolute(plan.work_dir.empty() ? fs::current_path() : plan.work_dir);
    auto const log = cwd / plan.workspace / reducer_log_name(job->handle.job_id);
    auto env = std::make_shared<Environment>(extra_env_);

    job->controller = std::thread([job, parent, program, cwd, log, env] {
        parent->done.wait();
        bool const ok = std::all_of(parent->results.begin(), parent->results.end(),
                                    [](TaskResult const& r) { return r.exit_status == 0; });
        if (ok) {
            job->results[0] = run_task(1, program, cwd, log, *env);
        } else {
            auto& r = job->results[0];
            r.task_index = 1;
            r.exit_status = -1;
            r.started = false;
            r.log_path = log;
        }
        job->finished.set_value();
    });

    std::lock_guard lock(mutex_);
    jobs_.emplace(job->handle.job_id, job);
    return job->handle;
}

std::vector<TaskResult> LocalBackend::await_completion(JobHandle const& handle) {
    auto job = find(handle);
    job->done.wait();
    return job->results;
}

}  // namespace llmr
