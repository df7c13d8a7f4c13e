#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace llmr {

namespace fs = std::filesystem;

enum class Distribution { block, cyclic };
enum class AppType { siso, mimo };
enum class BackendKind { local, gridengine, slurm, lsf };

std::string_view to_string(Distribution d) noexcept;
std::string_view to_string(AppType a) noexcept;
std::string_view to_string(BackendKind b) noexcept;

std::optional<Distribution> parse_distribution(std::string_view s) noexcept;
std::optional<AppType> parse_apptype(std::string_view s) noexcept;
std::optional<BackendKind> parse_backend(std::string_view s) noexcept;

inline constexpr std::string_view default_redout = "llmapreduce.out";
inline constexpr std::string_view default_ext = "out";
inline constexpr std::string_view default_delimiter = ".";
inline constexpr std::size_t default_max_array_tasks = 75000;

/**
 * The complete option set of one launch.
 *
 * `input` is either a directory (scanned) or a regular file listing one input
 * path per line. Relative paths (input, output, list entries) are resolved
 * against `work_dir`, which is also the directory the workspace is created in
 * and the working directory of every task. An empty `work_dir` means the
 * current directory.
 */
struct LaunchConfig {
    std::optional<std::size_t> np;
    std::optional<std::size_t> ndata;
    fs::path input;
    fs::path output;
    std::string mapper;
    std::optional<std::string> reducer;
    std::optional<std::string> redout;
    Distribution distribution{Distribution::block};
    bool subdir{false};
    std::string ext{default_ext};
    std::string delimiter{default_delimiter};
    bool exclusive{false};
    bool keep{false};
    AppType apptype{AppType::siso};
    std::string extra_options;
    BackendKind backend{BackendKind::local};
    std::size_t max_array_tasks{default_max_array_tasks};

    // Extensions used by the local backend and tests.
    fs::path work_dir;
    std::optional<unsigned> concurrency;

    bool operator==(LaunchConfig const&) const = default;
};

/// Resolve `p` against `base` unless it is already absolute.
fs::path resolve_against(fs::path const& base, fs::path const& p);

/// Effective working directory of a config (current directory when unset).
fs::path effective_work_dir(LaunchConfig const& config);

/**
 * Check a raw config and fill its defaults.
 *
 * Throws ConfigError on missing mapper, input, or output; np or ndata equal to
 * zero; an empty ext or delimiter, or one containing a path separator; and an
 * input that does not exist. When both np and ndata are set, np is dropped and
 * a warning is appended to `warnings` (if given).
 */
LaunchConfig validate(LaunchConfig const& config,
                      std::vector<std::string>* warnings = nullptr);

}  // namespace llmr
