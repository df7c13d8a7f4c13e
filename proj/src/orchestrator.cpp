#include "llmr/orchestrator.hpp"

#include "llmr/discovery.hpp"
#include "llmr/error.hpp"
#include "llmr/partition.hpp"
#include "llmr/scriptgen.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace llmr {

std::string_view to_string(RunStatus s) noexcept {
    switch (s) {
        case RunStatus::succeeded: return "succeeded";
        case RunStatus::mapper_failed: return "mapper_failed";
        case RunStatus::reducer_failed: return "reducer_failed";
        case RunStatus::emitted: return "emitted";
    }
    return "succeeded";
}

namespace {

template <class F>
auto stage(char const* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (StageError const&) {
        throw;
    } catch (std::exception const& e) {
        throw StageError(name, e.what());
    }
}

}  // namespace

bool cleanup(fs::path const& workspace, bool keep, bool run_succeeded, std::string* error) {
    if (keep || !run_succeeded) return false;
    std::error_code ec;
    fs::remove_all(workspace, ec);
    if (ec) {
        if (error) *error = "cannot remove " + workspace.string() + ": " + ec.message();
        return false;
    }
    return true;
}

RunReport launch(LaunchConfig const& raw, Backend& backend, long pid) {
    auto const t0 = Clock::now();
    RunReport report;

    auto const config = stage("validate", [&] { return validate(raw, &report.warnings); });
    auto const base = effective_work_dir(config);

    auto const items = stage("discover", [&] {
        auto const source = classify_input(config.input, base);
        auto const inputs = discover_inputs(source, config.subdir, base);
        auto items = make_work_items(inputs, source, config);
        mirror_output_tree(items, config.output, base);
        return items;
    });
    report.file_count = items.size();

    auto tasks = stage("partition", [&] {
        auto const t = resolve_task_count(items.size(), config.np, config.ndata,
                                          config.max_array_tasks);
        return assign(items, t, config.distribution);
    });
    report.task_count = tasks.size();

    auto const plan = stage("generate", [&] { return materialize(config, std::move(tasks), pid); });
    report.workspace = fs::absolute(plan.resolve(plan.workspace));

    auto const cap = config.concurrency.value_or(
        std::max(1u, std::thread::hardware_concurrency()));
    report.mapper_handle = stage("submit", [&] { return backend.submit_array(plan, cap); });
    if (plan.reducer_script)
        report.reducer_handle = stage("reduce", [&] {
            return backend.submit_dependent(plan, *plan.reducer_script, report.mapper_handle);
        });

    if (!backend.executes()) {
        report.status = RunStatus::emitted;
        report.workspace_kept = true;
        report.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
        return report;
    }

    report.task_results = stage("await", [&] { return backend.await_completion(report.mapper_handle); });
    bool const mappers_ok = std::all_of(report.task_results.begin(), report.task_results.end(),
                                        [](TaskResult const& r) { return r.exit_status == 0; });
    report.status = mappers_ok ? RunStatus::succeeded : RunStatus::mapper_failed;

    if (report.reducer_handle) {
        auto results = stage("await", [&] { return backend.await_completion(*report.reducer_handle); });
        report.reducer_result = results.at(0);
        if (mappers_ok) {
            report.reducer_output = resolve_against(base, *config.redout);
            if (report.reducer_result->exit_status != 0) report.status = RunStatus::reducer_failed;
        }
    }

    std::string error;
    bool const removed = cleanup(report.workspace, config.keep, report.succeeded(), &error);
    if (!error.empty()) report.warnings.push_back(error);
    report.workspace_kept = !removed;
    report.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return report;
}

RunReport launch(LaunchConfig const& config) {
    auto backend = make_backend(config.backend);
    return launch(config, *backend, static_cast<long>(::getpid()));
}

std::string summarize(RunReport const& r) {
    std::ostringstream os;
    os << "status: " << to_string(r.status) << '\n'
       << "files: " << r.file_count << ", array tasks: " << r.task_count << '\n'
       << "mapper job: " << r.mapper_handle.job_id << '\n';
    if (r.reducer_handle) os << "reducer job: " << r.reducer_handle->job_id << '\n';

    std::size_t failed = 0;
    for (auto const& t : r.task_results)
        if (t.exit_status != 0) {
            ++failed;
            os << "  task " << t.task_index << " exited " << t.exit_status << " (log "
               << t.log_path.string() << ")\n";
        }
    if (!r.task_results.empty())
        os << "mapper tasks failed: " << failed << '/' << r.task_results.size() << '\n';
    if (r.reducer_result) {
        if (!r.reducer_result->started)
            os << "reducer: not started\n";
        else
            os << "reducer exited " << r.reducer_result->exit_status << '\n';
    }
    if (r.reducer_output) os << "reducer output: " << r.reducer_output->string() << '\n';
    os << "workspace: " << r.workspace.string() << (r.workspace_kept ? " (kept)" : " (removed)")
       << '\n';
    os << "wall time: " << r.wall_time << " s\n";
    for (auto const& w : r.warnings) os << "warning: " << w << '\n';
    return os.str();
}

namespace {

nlohmann::json task_json(TaskResult const& t) {
    return {{"task_index", t.task_index},
            {"exit_status", t.exit_status},
            {"elapsed", t.elapsed},
            {"log_path", t.log_path.string()},
            {"started", t.started}};
}

}  // namespace

void write_report(RunReport const& r, fs::path const& path) {
    nlohmann::json j;
    j["status"] = to_string(r.status);
    j["mapper_handle"] = {{"job_id", r.mapper_handle.job_id},
                          {"task_count", r.mapper_handle.task_count}};
    j["reducer_handle"] = r.reducer_handle
                              ? nlohmann::json{{"job_id", r.reducer_handle->job_id},
                                               {"task_count", r.reducer_handle->task_count}}
                              : nlohmann::json(nullptr);
    j["task_results"] = nlohmann::json::array();
    for (auto const& t : r.task_results) j["task_results"].push_back(task_json(t));
    j["reducer_result"] = r.reducer_result ? task_json(*r.reducer_result) : nlohmann::json(nullptr);
    j["reducer_output"] =
        r.reducer_output ? nlohmann::json(r.reducer_output->string()) : nlohmann::json(nullptr);
    j["workspace"] = r.workspace.string();
    j["workspace_kept"] = r.workspace_kept;
    j["wall_time"] = r.wall_time;
    j["file_count"] = r.file_count;
    j["task_count"] = r.task_count;
    j["warnings"] = r.warnings;

    std::ofstream out(path);
    if (!out) throw Error("cannot write report " + path.string());
    out << j.dump(2) << '\n';
}

}  // namespace llmr
