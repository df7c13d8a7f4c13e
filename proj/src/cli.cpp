#include "llmr/cli.hpp"

#include "llmr/orchestrator.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

namespace llmr::cli {

namespace {

enum class Kind { text, count, number, boolean, choice };

struct FlagSpec {
    std::string name;
    Kind kind;
    std::vector<std::string> choices;
};

std::vector<FlagSpec> const& launch_flags() {
    static std::vector<FlagSpec> const flags = {
        {"np", Kind::count, {}},
        {"input", Kind::text, {}},
        {"output", Kind::text, {}},
        {"mapper", Kind::text, {}},
        {"reducer", Kind::text, {}},
        {"redout", Kind::text, {}},
        {"ndata", Kind::count, {}},
        {"distribution", Kind::choice, {"block", "cyclic"}},
        {"subdir", Kind::boolean, {}},
        {"ext", Kind::text, {}},
        {"delimiter", Kind::text, {}},
        {"exclusive", Kind::boolean, {}},
        {"keep", Kind::boolean, {}},
        {"apptype", Kind::choice, {"mimo", "siso"}},
        {"options", Kind::text, {}},
        // extensions
        {"backend", Kind::choice, {"local", "gridengine", "slurm", "lsf"}},
        {"concurrency", Kind::count, {}},
        {"max-array-tasks", Kind::count, {}},
        {"report", Kind::text, {}},
    };
    return flags;
}

std::vector<FlagSpec> const& bench_flags() {
    static std::vector<FlagSpec> const flags = {
        {"startup", Kind::number, {}},
        {"work", Kind::number, {}},
        {"files", Kind::count, {}},
        {"tasks", Kind::text, {}},
        {"modes", Kind::text, {}},
        {"repetitions", Kind::count, {}},
        {"payload-bytes", Kind::count, {}},
        {"dir", Kind::text, {}},
        {"stub", Kind::text, {}},
        {"table", Kind::text, {}},
    };
    return flags;
}

std::vector<FlagSpec> const& flags_for(Subcommand sub) {
    return sub == Subcommand::launch ? launch_flags() : bench_flags();
}

std::string join(std::vector<std::string> const& v, std::string_view sep) {
    std::string out;
    for (auto const& s : v) {
        if (!out.empty()) out += sep;
        out += s;
    }
    return out;
}

std::optional<std::size_t> to_count(std::string const& s) {
    std::size_t v = 0;
    auto const [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

std::optional<double> to_number(std::string const& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) return std::nullopt;
        return v;
    } catch (std::exception const&) {
        return std::nullopt;
    }
}

CLI::Validator validator_for(FlagSpec const& spec) {
    std::string const name = "--" + spec.name;
    switch (spec.kind) {
        case Kind::count:
            return CLI::Validator(
                [name](std::string& v) -> std::string {
                    return to_count(v) ? "" : name + ": expected a non-negative integer, got '" + v + "'";
                },
                "INT");
        case Kind::number:
            return CLI::Validator(
                [name](std::string& v) -> std::string {
                    return to_number(v) ? "" : name + ": expected a number, got '" + v + "'";
                },
                "NUM");
        case Kind::boolean:
            return CLI::Validator(
                [name](std::string& v) -> std::string {
                    return v == "true" || v == "false"
                               ? ""
                               : name + ": expected true or false, got '" + v + "'";
                },
                "true|false");
        case Kind::choice: {
            auto choices = spec.choices;
            return CLI::Validator(
                [name, choices](std::string& v) -> std::string {
                    if (std::find(choices.begin(), choices.end(), v) != choices.end()) return "";
                    return name + ": '" + v + "' is not one of " + join(choices, ", ");
                },
                join(spec.choices, "|"));
        }
        case Kind::text:
            break;
    }
    return CLI::Validator([](std::string&) { return std::string(); }, "TEXT");
}

std::string require(CliInvocation const& inv, std::string const& name) {
    auto it = inv.flags.find(name);
    return it == inv.flags.end() ? std::string() : it->second;
}

std::optional<std::string> get(CliInvocation const& inv, std::string const& name) {
    auto it = inv.flags.find(name);
    if (it == inv.flags.end()) return std::nullopt;
    return it->second;
}

}  // namespace

CliInvocation parse_args(std::vector<std::string> const& args) {
    CliInvocation inv;
    std::vector<std::string> rest = args;
    if (!rest.empty() && (rest.front() == "launch" || rest.front() == "bench")) {
        inv.subcommand = rest.front() == "bench" ? Subcommand::bench : Subcommand::launch;
        rest.erase(rest.begin());
    }
    for (auto const& a : rest)
        if (a == "-h" || a == "--help") throw HelpRequested(help_text(inv.subcommand));

    CLI::App app("llmapreduce");
    app.set_help_flag();
    app.allow_windows_style_options(false);
    auto const& specs = flags_for(inv.subcommand);
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    for (auto const& spec : specs) {
        auto* opt = app.add_option("--" + spec.name, values[spec.name]);
        opt->check(validator_for(spec));
        opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        options[spec.name] = opt;
    }

    std::vector<std::string> reversed(rest.rbegin(), rest.rend());
    try {
        app.parse(reversed);
    } catch (CLI::ParseError const& e) {
        throw UsageError(e.what());
    }
    for (auto const& [name, opt] : options)
        if (opt->count() > 0) inv.flags[name] = values[name];
    return inv;
}

std::vector<std::string> format_args(CliInvocation const& inv) {
    std::vector<std::string> out;
    out.emplace_back(inv.subcommand == Subcommand::bench ? "bench" : "launch");
    for (auto const& [name, value] : inv.flags) out.push_back("--" + name + "=" + value);
    return out;
}

LaunchConfig to_launch_config(CliInvocation const& inv) {
    if (inv.subcommand != Subcommand::launch) throw UsageError("not a launch invocation");
    LaunchConfig c;
    if (auto v = get(inv, "np")) c.np = to_count(*v);
    if (auto v = get(inv, "ndata")) c.ndata = to_count(*v);
    c.input = require(inv, "input");
    c.output = require(inv, "output");
    c.mapper = require(inv, "mapper");
    if (auto v = get(inv, "reducer")) c.reducer = *v;
    if (auto v = get(inv, "redout")) c.redout = *v;
    if (auto v = get(inv, "distribution")) c.distribution = *parse_distribution(*v);
    if (auto v = get(inv, "subdir")) c.subdir = *v == "true";
    if (auto v = get(inv, "ext")) c.ext = *v;
    if (auto v = get(inv, "delimiter")) c.delimiter = *v;
    if (auto v = get(inv, "exclusive")) c.exclusive = *v == "true";
    if (auto v = get(inv, "keep")) c.keep = *v == "true";
    if (auto v = get(inv, "apptype")) c.apptype = *parse_apptype(*v);
    if (auto v = get(inv, "options")) c.extra_options = *v;
    if (auto v = get(inv, "backend")) c.backend = *parse_backend(*v);
    if (auto v = get(inv, "concurrency")) c.concurrency = static_cast<unsigned>(*to_count(*v));
    if (auto v = get(inv, "max-array-tasks")) c.max_array_tasks = *to_count(*v);
    return c;
}

bench::CostModel to_cost_model(CliInvocation const& inv) {
    if (inv.subcommand != Subcommand::bench) throw UsageError("not a bench invocation");
    bench::CostModel m;
    if (auto v = get(inv, "startup")) m.startup_s = *to_number(*v);
    if (auto v = get(inv, "work")) m.work_w = *to_number(*v);
    if (auto v = get(inv, "files")) m.files = *to_count(*v);
    if (auto v = get(inv, "tasks")) {
        m.task_counts.clear();
        std::istringstream in(*v);
        for (std::string part; std::getline(in, part, ',');) {
            auto t = to_count(part);
            if (!t) throw UsageError("--tasks: expected comma-separated integers, got '" + *v + "'");
            m.task_counts.push_back(*t);
        }
    }
    if (auto v = get(inv, "modes")) {
        m.modes.clear();
        std::istringstream in(*v);
        for (std::string part; std::getline(in, part, ',');) {
            auto mode = bench::parse_mode(part);
            if (!mode) throw UsageError("--modes: '" + part + "' is not one of default, block, mimo");
            m.modes.push_back(*mode);
        }
    }
    return m;
}

std::string help_text(Subcommand sub) {
    if (sub == Subcommand::bench)
        return "usage: llmapreduce bench [options]\n"
               "\n"
               "Sweep DEFAULT/BLOCK/MIMO over task counts with a sleep-model mapper. elapsed is\n"
               "the array job span (first task start to last task exit); wall adds\n"
               "script generation and cleanup.\n"
               "\n"
               "  --startup=SECONDS       per-process startup cost (default 0.2)\n"
               "  --work=SECONDS          per-file work (default 0.02)\n"
               "  --files=N               corpus size (default 512)\n"
               "  --tasks=T1,T2,...       task counts (default 1,2,4,...,256)\n"
               "  --modes=M1,M2,...       subset of default,block,mimo (default all)\n"
               "  --repetitions=N         runs per point, median reported (default 1)\n"
               "  --payload-bytes=N       bytes per corpus file (default 64)\n"
               "  --dir=PATH              scratch directory (default ./llmr-bench)\n"
               "  --stub=PATH             sleep mapper (default: llmr-sleep-mapper next to this program)\n"
               "  --table=PATH            write the CSV table here instead of stdout\n";
    return "usage: llmapreduce [launch] --mapper=PROG --input=DIR|LIST --output=DIR [options]\n"
           "\n"
           "Options (both --flag=value and --flag value are accepted):\n"
           "  --np=number_of_tasks          number of array tasks (default: one per input file)\n"
           "  --input=input_dir|list_file   input directory, or a file listing one input per line\n"
           "  --output=output_dir           directory receiving mapper outputs\n"
           "  --mapper=myMapper             program run as: myMapper <input> <output>\n"
           "  --reducer=myReducer           program run as: myReducer <output_dir> <redout>\n"
           "  --redout=output_filename      reducer output name (default llmapreduce.out)\n"
           "  --ndata=NdataPerTask          input files per array task (overrides --np)\n"
           "  --distribution=block|cyclic   how files are dealt to tasks (default block)\n"
           "  --subdir=true|false           scan recursively and mirror the tree (default false)\n"
           "  --ext=myExt                   output extension (default out)\n"
           "  --delimiter=myExtDelimiter    separator before the extension (default .)\n"
           "  --exclusive=true|false        request whole nodes (default false)\n"
           "  --keep=true|false             keep .MAPRED.<pid> after success (default false)\n"
           "  --apptype=mimo|siso           mimo: one mapper start per task reading a list of\n"
           "                                input/output pairs (default siso)\n"
           "  --options=<scheduler_options> extra scheduler directive, inserted verbatim\n"
           "\n"
           "Extensions:\n"
           "  --backend=local|gridengine|slurm|lsf\n"
           "                                local runs the job here; the others only write\n"
           "                                the submission scripts (default local)\n"
           "  --concurrency=N               local: max tasks running at once (default: cores)\n"
           "  --max-array-tasks=N           array size limit (default 75000)\n"
           "  --report=PATH                 write a JSON run report\n"
           "\n"
           "Exit status: 0 success, 1 error, 2 usage error, 3 mapper task failed,\n"
           "4 reducer failed.\n"
           "\n"
           "Subcommands: launch (default), bench (see llmapreduce bench --help).\n";
}

namespace {

fs::path default_stub() {
    std::error_code ec;
    auto const self = fs::read_symlink("/proc/self/exe", ec);
    if (ec) return "llmr-sleep-mapper";
    return self.parent_path() / "llmr-sleep-mapper";
}

int run_launch(CliInvocation const& inv, std::ostream& out, std::ostream& err) {
    auto const config = to_launch_config(inv);
    RunReport report;
    try {
        report = launch(config);
    } catch (StageError const& e) {
        err << "llmapreduce: " << e.what() << '\n';
        return e.stage() == "validate" ? exit_usage : exit_error;
    }
    for (auto const& w : report.warnings) err << "llmapreduce: warning: " << w << '\n';
    out << summarize(report);
    if (auto path = get(inv, "report")) write_report(report, *path);

    switch (report.status) {
        case RunStatus::succeeded:
        case RunStatus::emitted: return exit_ok;
        case RunStatus::mapper_failed: return exit_mapper_failed;
        case RunStatus::reducer_failed: return exit_reducer_failed;
    }
    return exit_error;
}

int run_bench(CliInvocation const& inv, std::ostream& out, std::ostream& err) {
    auto const model = to_cost_model(inv);
    bench::SweepOptions opts;
    opts.root = get(inv, "dir").value_or("llmr-bench");
    opts.stub = get(inv, "stub") ? fs::path(*get(inv, "stub")) : default_stub();
    if (auto v = get(inv, "repetitions")) opts.repetitions = static_cast<unsigned>(*to_count(*v));
    if (auto v = get(inv, "payload-bytes")) opts.payload_bytes = *to_count(*v);

    auto const table = bench::format_table(bench::run_sweep(model, opts));
    if (auto path = get(inv, "table")) {
        std::ofstream f(*path);
        if (!(f << table)) {
            err << "llmapreduce: cannot write " << *path << '\n';
            return exit_error;
        }
    } else {
        out << table;
    }
    return exit_ok;
}

}  // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CliInvocation inv;
    try {
        inv = parse_args(args);
    } catch (HelpRequested const& h) {
        out << h.what();
        return exit_ok;
    } catch (UsageError const& e) {
        err << "llmapreduce: " << e.what() << "\n(see --help)\n";
        return exit_usage;
    }

    try {
        return inv.subcommand == Subcommand::launch ? run_launch(inv, out, err)
                                                    : run_bench(inv, out, err);
    } catch (ConfigError const& e) {
        err << "llmapreduce: " << e.what() << '\n';
        return exit_usage;
    } catch (UsageError const& e) {
        err << "llmapreduce: " << e.what() << '\n';
        return exit_usage;
    } catch (std::exception const& e) {
        err << "llmapreduce: " << e.what() << '\n';
        return exit_error;
    }
}

}  // namespace llmr::cli
