#include "llmr/backend.hpp"

#include "llmr/error.hpp"

namespace llmr {

JobHandle DryRunBackend::submit_array(JobPlan const& plan, unsigned /*concurrency_cap*/) {
    if (plan.dialect != dialect_)
        throw Error("plan was generated for " + std::string(to_string(plan.dialect)) +
                    ", backend emits " + std::string(to_string(dialect_)));
    if (!fs::is_regular_file(plan.resolve(plan.submission_script)))
        throw Error("submission script missing: " + plan.submission_script.string());

    JobHandle h{std::string(to_string(dialect_)) + "-dryrun-" + std::to_string(next_id_++),
                plan.run_scripts.size()};
    scripts_.emplace(h.job_id, plan.submission_script);
    return h;
}

JobHandle DryRunBackend::submit_dependent(JobPlan const& plan, fs::path const& script,
                                          JobHandle const& after) {
    if (!scripts_.count(after.job_id)) throw Error("unknown job handle " + after.job_id);
    if (!fs::is_regular_file(plan.resolve(script)))
        throw Error("run script missing: " + script.string());

    auto const name = plan.reducer_name.empty() ? std::string("llmap") : plan.reducer_name;
    auto const path = plan.workspace / (name + "_reduce");
    write_text_file(plan.resolve(path),
                    emit_reducer_submission_script(
                        {dialect_, name, 1, plan.workspace, plan.exclusive, plan.extra_options},
                        after.job_id),
                    true);

    JobHandle h{std::string(to_string(dialect_)) + "-dryrun-" + std::to_string(next_id_++), 1};
    scripts_.emplace(h.job_id, path);
    return h;
}

std::vector<TaskResult> DryRunBackend::await_completion(JobHandle const& handle) {
    throw Error("job " + handle.job_id + " was emitted for " +
                std::string(to_string(dialect_)) + ", not executed");
}

fs::path const& DryRunBackend::script_of(JobHandle const& handle) const {
    auto it = scripts_.find(handle.job_id);
    if (it == scripts_.end()) throw Error("unknown job handle " + handle.job_id);
    return it->second;
}

std::unique_ptr<Backend> make_backend(BackendKind kind,
                                      std::map<std::string, std::string> extra_env) {
    if (kind == BackendKind::local) return std::make_unique<LocalBackend>(std::move(extra_env));
    return std::make_unique<DryRunBackend>(dialect_for(kind));
}

}  // namespace llmr
