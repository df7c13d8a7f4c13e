#include "llmr/scriptgen.hpp"

#include "llmr/error.hpp"

#include <fstream>
#include <sstream>

namespace llmr {

namespace {

constexpr std::string_view preamble = "#!/bin/bash\nexport PATH=${PATH}:.\n";

struct DialectSyntax {
    std::string_view directive;
    std::string_view task_var;
};

DialectSyntax syntax(Dialect d) {
    switch (d) {
        case Dialect::gridengine: return {"#$", "$SGE_TASK_ID"};
        case Dialect::slurm: return {"#SBATCH", "$SLURM_ARRAY_TASK_ID"};
        case Dialect::lsf: return {"#BSUB", "$LSB_JOBINDEX"};
    }
    throw Error("unknown scheduler dialect");
}

std::string ws(fs::path const& workspace) { return workspace.generic_string(); }

void append_extra(std::ostringstream& os, DialectSyntax const& s, std::string const& extra) {
    if (!extra.empty()) os << s.directive << ' ' << extra << '\n';
}

}  // namespace

std::string_view to_string(Dialect d) noexcept {
    switch (d) {
        case Dialect::gridengine: return "gridengine";
        case Dialect::slurm: return "slurm";
        case Dialect::lsf: return "lsf";
    }
    return "gridengine";
}

Dialect dialect_for(BackendKind backend) noexcept {
    switch (backend) {
        case BackendKind::slurm: return Dialect::slurm;
        case BackendKind::lsf: return Dialect::lsf;
        default: return Dialect::gridengine;
    }
}

std::string workspace_name(long pid) { return ".MAPRED." + std::to_string(pid); }

fs::path create_workspace(fs::path const& work_dir, long pid) {
    fs::path const name = workspace_name(pid);
    auto const target = resolve_against(work_dir, name);
    std::error_code ec;
    if (!fs::create_directory(target, ec)) {
        if (ec) throw Error("cannot create workspace " + target.string() + ": " + ec.message());
        throw Error("workspace exists: " + target.string());
    }
    return name;
}

fs::path run_script_name(std::size_t task_index) {
    return "run_llmap_" + std::to_string(task_index);
}

fs::path manifest_name(std::size_t task_index) {
    return "input_" + std::to_string(task_index);
}

std::string task_log_name(std::string const& job_id, std::size_t task_index) {
    return "llmap.log-" + job_id + "-" + std::to_string(task_index);
}

std::string reducer_log_name(std::string const& job_id) {
    return "llmap_reduce.log-" + job_id;
}

std::string emit_run_script_siso(TaskPlan const& task, std::string const& mapper) {
    std::ostringstream os;
    os << preamble;
    for (auto const& item : task.items)
        os << mapper << ' ' << item.input_path.generic_string() << ' '
           << item.output_path.generic_string() << '\n';
    return os.str();
}

std::string emit_manifest(TaskPlan const& task) {
    std::string out;
    for (auto const& item : task.items) {
        out += item.input_path.generic_string();
        out += ' ';
        out += item.output_path.generic_string();
        out += '\n';
    }
    return out;
}

std::string emit_run_script_mimo(std::size_t task_index, std::string const& mapper,
                                 fs::path const& workspace) {
    std::ostringstream os;
    os << preamble << mapper << ' ' << (workspace / manifest_name(task_index)).generic_string()
       << '\n';
    return os.str();
}

std::string emit_submission_script(SubmissionOptions const& o) {
    if (o.tasks == 0) throw Error("array job needs at least one task");
    auto const s = syntax(o.dialect);
    auto const w = ws(o.workspace);
    std::ostringstream os;
    os << "#!/bin/bash\n";
    switch (o.dialect) {
        case Dialect::gridengine:
            os << "#$ -terse -cwd -V -j y -N " << o.job_name << '\n'
               << "#$ -l excl=" << (o.exclusive ? "true" : "false") << " -t 1-" << o.tasks
               << '\n'
               << "#$ -o " << w << "/llmap.log-$JOB_ID-$TASK_ID\n";
            break;
        case Dialect::slurm:
            os << "#SBATCH --job-name=" << o.job_name << '\n'
               << "#SBATCH --array=1-" << o.tasks << '\n'
               << "#SBATCH --output=" << w << "/llmap.log-%A-%a\n";
            if (o.exclusive) os << "#SBATCH --exclusive\n";
            break;
        case Dialect::lsf:
            os << "#BSUB -J \"" << o.job_name << "[1-" << o.tasks << "]\"\n"
               << "#BSUB -o " << w << "/llmap.log-%J-%I\n";
            if (o.exclusive) os << "#BSUB -x\n";
            break;
    }
    append_extra(os, s, o.extra_options);
    os << w << "/run_llmap_" << s.task_var << '\n';
    return os.str();
}

std::string emit_reducer_script(std::string const& reducer, fs::path const& output_dir,
                                std::string const& redout) {
    std::ostringstream os;
    os << preamble << reducer << ' ' << output_dir.generic_string() << ' ' << redout << '\n';
    return os.str();
}

std::string emit_reducer_submission_script(SubmissionOptions const& o,
                                           std::string const& after_job_id) {
    auto const s = syntax(o.dialect);
    auto const w = ws(o.workspace);
    std::ostringstream os;
    os << "#!/bin/bash\n";
    switch (o.dialect) {
        case Dialect::gridengine:
            os << "#$ -terse -cwd -V -j y -N " << o.job_name << '\n'
               << "#$ -l excl=" << (o.exclusive ? "true" : "false") << " -hold_jid "
               << after_job_id << '\n'
               << "#$ -o " << w << "/llmap_reduce.log-$JOB_ID\n";
            break;
        case Dialect::slurm:
            os << "#SBATCH --job-name=" << o.job_name << '\n'
               << "#SBATCH --dependency=afterok:" << after_job_id << '\n'
               << "#SBATCH --output=" << w << "/llmap_reduce.log-%j\n";
            if (o.exclusive) os << "#SBATCH --exclusive\n";
            break;
        case Dialect::lsf:
            os << "#BSUB -J " << o.job_name << '\n'
               << "#BSUB -w \"done(" << after_job_id << ")\"\n"
               << "#BSUB -o " << w << "/llmap_reduce.log-%J\n";
            if (o.exclusive) os << "#BSUB -x\n";
            break;
    }
    append_extra(os, s, o.extra_options);
    os << w << '/' << reducer_run_script_name << '\n';
    return os.str();
}

void write_text_file(fs::path const& path, std::string const& text, bool executable) {
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + path.string());
        out << text;
        if (!out.flush()) throw Error("cannot write " + path.string());
    }
    if (executable) {
        using fs::perms;
        fs::permissions(path,
                        perms::owner_all | perms::group_read | perms::group_exec |
                            perms::others_read | perms::others_exec,
                        fs::perm_options::replace);
    }
}

JobPlan materialize(LaunchConfig const& config, std::vector<TaskPlan> tasks, long pid) {
    if (tasks.empty()) throw Error("no tasks to materialize");
    JobPlan plan;
    plan.work_dir = effective_work_dir(config);
    plan.workspace = create_workspace(plan.work_dir, pid);
    plan.mode = config.apptype;
    plan.dialect = dialect_for(config.backend);
    plan.job_name = fs::path(config.mapper).filename().string();
    plan.exclusive = config.exclusive;
    plan.extra_options = config.extra_options;

    for (auto const& task : tasks) {
        if (task.items.empty()) throw Error("task " + std::to_string(task.index) + " is empty");
        auto const script = plan.workspace / run_script_name(task.index);
        if (plan.mode == AppType::siso) {
            write_text_file(plan.resolve(script), emit_run_script_siso(task, config.mapper), true);
        } else {
            auto const manifest = plan.workspace / manifest_name(task.index);
            write_text_file(plan.resolve(manifest), emit_manifest(task), false);
            write_text_file(plan.resolve(script),
                            emit_run_script_mimo(task.index, config.mapper, plan.workspace),
                            true);
            plan.manifests.push_back(manifest);
        }
        plan.run_scripts.push_back(script);
    }

    plan.submission_script = plan.workspace / plan.job_name;
    write_text_file(plan.resolve(plan.submission_script),
                    emit_submission_script({plan.dialect, plan.job_name, tasks.size(),
                                            plan.workspace, plan.exclusive,
                                            plan.extra_options}),
                    true);

    if (config.reducer) {
        plan.reducer_name = fs::path(*config.reducer).filename().string();
        auto const script = plan.workspace / reducer_run_script_name;
        write_text_file(plan.resolve(script),
                        emit_reducer_script(*config.reducer, config.output,
                                            config.redout.value_or(std::string(default_redout))),
                        true);
        plan.reducer_script = script;
    }
    plan.tasks = std::move(tasks);
    return plan;
}

}  // namespace llmr
