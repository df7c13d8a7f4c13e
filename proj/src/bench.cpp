#include "llmr/bench.hpp"

#include "llmr/backend.hpp"
#include "llmr/error.hpp"
#include "llmr/orchestrator.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unistd.h>

namespace llmr::bench {

std::string_view to_string(Mode m) noexcept {
    switch (m) {
        case Mode::default_mode: return "default";
        case Mode::block: return "block";
        case Mode::mimo: return "mimo";
    }
    return "default";
}

std::optional<Mode> parse_mode(std::string_view s) noexcept {
    if (s == "default") return Mode::default_mode;
    if (s == "block") return Mode::block;
    if (s == "mimo") return Mode::mimo;
    return std::nullopt;
}

void check(CostModel const& model) {
    if (!(model.startup_s > 0)) throw ConfigError("startup must be positive");
    if (!(model.work_w >= 0)) throw ConfigError("work must be non-negative");
    if (model.files == 0) throw ConfigError("files must be positive");
    if (model.task_counts.empty()) throw ConfigError("no task counts given");
    if (model.modes.empty()) throw ConfigError("no modes given");
    for (auto t : model.task_counts)
        if (t == 0 || t > model.files)
            throw ConfigError("task count " + std::to_string(t) + " outside [1, files]");
}

std::size_t files_per_task(std::size_t files, std::size_t tasks) {
    return (files + tasks - 1) / tasks;
}

double predicted_elapsed(CostModel const& m, Mode mode, std::size_t tasks) {
    auto const k = static_cast<double>(files_per_task(m.files, tasks));
    return mode == Mode::mimo ? m.startup_s + k * m.work_w : k * (m.startup_s + m.work_w);
}

double predicted_overhead(CostModel const& m, Mode mode, std::size_t tasks) {
    auto const k = static_cast<double>(files_per_task(m.files, tasks));
    return mode == Mode::mimo ? m.startup_s : k * m.startup_s;
}

double overhead_per_task(SweepMeasurement const& m, CostModel const& model) {
    return m.elapsed - static_cast<double>(m.files_per_task) * model.work_w;
}

fs::path synthesize_corpus(fs::path const& dir, std::size_t files, std::size_t payload_bytes) {
    if (files == 0) throw Error("corpus needs at least one file");
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto const width = std::max<std::size_t>(4, std::to_string(files).size());
    for (std::size_t i = 1; i <= files; ++i) {
        std::ostringstream name;
        name << "file_" << std::setw(static_cast<int>(width)) << std::setfill('0') << i;
        std::string payload(payload_bytes, 'a');
        for (std::size_t j = 0; j < payload_bytes; ++j)
            payload[j] = static_cast<char>('a' + (i + j) % 26);
        std::ofstream out(dir / name.str(), std::ios::binary);
        if (!(out << payload)) throw Error("cannot write corpus file " + name.str());
    }
    return dir;
}

LaunchConfig sweep_config(Mode mode, std::size_t tasks, fs::path const& root,
                          fs::path const& stub) {
    LaunchConfig c;
    c.work_dir = root;
    c.input = "input";
    c.output = "output_" + std::string(to_string(mode)) + "_" + std::to_string(tasks);
    c.mapper = fs::absolute(stub).string();
    c.np = tasks;
    c.distribution = mode == Mode::default_mode ? Distribution::cyclic : Distribution::block;
    c.apptype = mode == Mode::mimo ? AppType::mimo : AppType::siso;
    c.concurrency = static_cast<unsigned>(tasks);
    return c;
}

namespace {

std::string seconds(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    auto const n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double job_span(std::vector<TaskResult> const& results) {
    if (results.empty()) return 0;
    auto first = results.front().started_at;
    auto last = results.front().finished_at;
    for (auto const& r : results) {
        first = std::min(first, r.started_at);
        last = std::max(last, r.finished_at);
    }
    return std::chrono::duration<double>(last - first).count();
}

std::vector<SweepMeasurement> run_sweep(CostModel const& model, SweepOptions const& options) {
    check(model);
    if (options.repetitions == 0) throw ConfigError("repetitions must be positive");
    if (!fs::is_regular_file(options.stub))
        throw ConfigError("stub mapper not found: " + options.stub.string());

    fs::create_directories(options.root);
    auto const root = fs::absolute(options.root);
    synthesize_corpus(root / "input", model.files, options.payload_bytes);

    LocalBackend backend({{"LLMR_STUB_STARTUP", seconds(model.startup_s)},
                          {"LLMR_STUB_WORK", seconds(model.work_w)}});
    auto const pid = static_cast<long>(::getpid());

    std::vector<SweepMeasurement> out;
    for (auto mode : model.modes) {
        for (auto tasks : model.task_counts) {
            auto const config = sweep_config(mode, tasks, root, options.stub);
            std::vector<double> samples, walls;
            for (unsigned rep = 0; rep < options.repetitions; ++rep) {
                fs::remove_all(root / config.output);
                auto const report = launch(config, backend, pid);
                if (!report.succeeded())
                    throw Error("sweep point " + std::string(to_string(mode)) + "@" +
                                std::to_string(tasks) + " failed: " +
                                std::string(llmr::to_string(report.status)));
                samples.push_back(job_span(report.task_results));
                walls.push_back(report.wall_time);
            }
            fs::remove_all(root / config.output);

            SweepMeasurement m;
            m.mode = mode;
            m.tasks = tasks;
            m.files_per_task = files_per_task(model.files, tasks);
            m.elapsed = median(std::move(samples));
            m.wall = median(std::move(walls));
            m.overhead_per_task = overhead_per_task(m, model);
            out.push_back(m);
        }
    }
    bool const has_baseline = std::any_of(out.begin(), out.end(), [](SweepMeasurement const& m) {
        return m.mode == Mode::default_mode && m.tasks == 1;
    });
    return has_baseline ? speedup_table(std::move(out)) : out;
}

std::vector<SweepMeasurement> speedup_table(std::vector<SweepMeasurement> ms) {
    auto base = std::find_if(ms.begin(), ms.end(), [](SweepMeasurement const& m) {
        return m.mode == Mode::default_mode && m.tasks == 1;
    });
    if (base == ms.end()) throw Error("speedup table needs a DEFAULT measurement at T=1");
    double const baseline = base->elapsed;
    for (auto& m : ms) m.speedup = baseline / m.elapsed;
    std::stable_sort(ms.begin(), ms.end(), [](SweepMeasurement const& a, SweepMeasurement const& b) {
        if (a.mode != b.mode) return a.mode < b.mode;
        return a.tasks < b.tasks;
    });
    return ms;
}

std::string format_table(std::vector<SweepMeasurement> const& ms, char d) {
    std::ostringstream os;
    os << "mode" << d << "T" << d << "k" << d << "elapsed" << d << "overhead" << d << "speedup" << d << "wall\n";
    for (auto const& m : ms)
        os << to_string(m.mode) << d << m.tasks << d << m.files_per_task << d
           << seconds(m.elapsed) << d << seconds(m.overhead_per_task) << d
           << seconds(m.speedup) << d << seconds(m.wall) << '\n';
    return os.str();
}

}  // namespace llmr::bench
