#pragma once

#include "llmr/backend.hpp"
#include "llmr/config.hpp"

#include <optional>
#include <string>
#include <vector>

namespace llmr::bench {

/// DEFAULT runs siso+cyclic, BLOCK siso+block, MIMO mimo+block.
enum class Mode { default_mode, block, mimo };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view s) noexcept;

/**
 * Sleep-based cost model: every mapper process start costs `startup_s`, every
 * file costs `work_w`.
 */
struct CostModel {
    double startup_s{0.2};
    double work_w{0.02};
    std::size_t files{512};
    std::vector<std::size_t> task_counts{1, 2, 4, 8, 16, 32, 64, 128, 256};
    std::vector<Mode> modes{Mode::default_mode, Mode::block, Mode::mimo};
};

/// Throws ConfigError unless startup_s > 0, work_w >= 0 and every T is in [1, files].
void check(CostModel const& model);

struct SweepMeasurement {
    Mode mode{Mode::default_mode};
    std::size_t tasks{};
    std::size_t files_per_task{};
    double elapsed{};            // array job span: first task start to last task exit
    double overhead_per_task{};
    double speedup{};
    double wall{};               // whole launch, including script generation and cleanup
};

/// ceil(files / tasks): items held by the busiest task.
std::size_t files_per_task(std::size_t files, std::size_t tasks);

/// Closed-form job elapsed time: k(s+w) for siso modes, s + k*w for mimo.
double predicted_elapsed(CostModel const& model, Mode mode, std::size_t tasks);

/// Closed-form overhead: k*s for siso modes, s for mimo.
double predicted_overhead(CostModel const& model, Mode mode, std::size_t tasks);

/// Measured elapsed minus the modelled work k*w.
double overhead_per_task(SweepMeasurement const& m, CostModel const& model);

/// Write `files` deterministic files file_0001.. of `payload_bytes` each into a fresh `dir`.
fs::path synthesize_corpus(fs::path const& dir, std::size_t files, std::size_t payload_bytes);

/// The launch configuration for one sweep point.
LaunchConfig sweep_config(Mode mode, std::size_t tasks, fs::path const& root,
                          fs::path const& stub);

struct SweepOptions {
    fs::path root;           // scratch directory; corpus and outputs live here
    fs::path stub;           // path of the llmr-sleep-mapper executable
    unsigned repetitions{1};  // median of this many runs per point
    std::size_t payload_bytes{64};
};

/// Array job span of a finished local run: earliest task start to latest task exit.
double job_span(std::vector<TaskResult> const& results);

/// Run every (mode, T) point sequentially on the local backend with concurrency T.
/// Speedups are filled in when the sweep includes DEFAULT at T=1, otherwise left 0.
std::vector<SweepMeasurement> run_sweep(CostModel const& model, SweepOptions const& options);

/**
 * speedup = elapsed(DEFAULT, T=1) / elapsed; sorted by mode then T.
 * Throws Error when the DEFAULT@1 baseline is missing.
 */
std::vector<SweepMeasurement> speedup_table(std::vector<SweepMeasurement> measurements);

/// Delimited table: mode, T, k, elapsed, overhead, speedup, wall.
std::string format_table(std::vector<SweepMeasurement> const& measurements, char delimiter = ',');

}  // namespace llmr::bench
