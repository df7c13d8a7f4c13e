#include "llmr/config.hpp"

#include "llmr/error.hpp"

#include <system_error>

namespace llmr {

std::string_view to_string(Distribution d) noexcept {
    return d == Distribution::block ? "block" : "cyclic";
}

std::string_view to_string(AppType a) noexcept {
    return a == AppType::siso ? "siso" : "mimo";
}

std::string_view to_string(BackendKind b) noexcept {
    switch (b) {
        case BackendKind::local: return "local";
        case BackendKind::gridengine: return "gridengine";
        case BackendKind::slurm: return "slurm";
        case BackendKind::lsf: return "lsf";
    }
    return "local";
}

std::optional<Distribution> parse_distribution(std::string_view s) noexcept {
    if (s == "block") return Distribution::block;
    if (s == "cyclic") return Distribution::cyclic;
    return std::nullopt;
}

std::optional<AppType> parse_apptype(std::string_view s) noexcept {
    if (s == "siso") return AppType::siso;
    if (s == "mimo") return AppType::mimo;
    return std::nullopt;
}

std::optional<BackendKind> parse_backend(std::string_view s) noexcept {
    if (s == "local") return BackendKind::local;
    if (s == "gridengine") return BackendKind::gridengine;
    if (s == "slurm") return BackendKind::slurm;
    if (s == "lsf") return BackendKind::lsf;
    return std::nullopt;
}

fs::path resolve_against(fs::path const& base, fs::path const& p) {
    if (p.is_absolute() || base.empty()) return p;
    return base / p;
}

fs::path effective_work_dir(LaunchConfig const& config) {
    return config.work_dir.empty() ? fs::current_path() : config.work_dir;
}

namespace {

void check_suffix_part(std::string const& value, std::string_view name) {
    if (value.empty())
        throw ConfigError(std::string(name) + " must not be empty");
    if (value.find('/') != std::string::npos)
        throw ConfigError(std::string(name) + " must not contain '/'");
}

}  // namespace

LaunchConfig validate(LaunchConfig const& config, std::vector<std::string>* warnings) {
    LaunchConfig out = config;

    if (out.mapper.empty()) throw ConfigError("mapper is required");
    if (out.input.empty()) throw ConfigError("input is required");
    if (out.output.empty()) throw ConfigError("output is required");
    if (out.np && *out.np == 0) throw ConfigError("np must be positive");
    if (out.ndata && *out.ndata == 0) throw ConfigError("ndata must be positive");
    if (out.max_array_tasks == 0) throw ConfigError("max_array_tasks must be positive");
    if (out.concurrency && *out.concurrency == 0)
        throw ConfigError("concurrency must be positive");
    if (out.reducer && out.reducer->empty()) throw ConfigError("reducer must not be empty");
    check_suffix_part(out.ext, "ext");
    check_suffix_part(out.delimiter, "delimiter");

    if (out.np && out.ndata) {
        if (warnings)
            warnings->push_back("both np and ndata given; ndata overrides np");
        out.np.reset();
    }

    if (out.reducer && !out.redout) out.redout = std::string(default_redout);
    if (out.redout && out.redout->empty()) throw ConfigError("redout must not be empty");
    if (out.redout && !out.reducer && warnings)
        warnings->push_back("redout given without a reducer; it has no effect");

    std::error_code ec;
    auto const input = resolve_against(out.work_dir, out.input);
    auto const st = fs::status(input, ec);
    if (ec || !fs::exists(st))
        throw ConfigError("input does not exist: " + out.input.string());
    if (!fs::is_directory(st) && !fs::is_regular_file(st))
        throw ConfigError("input is neither a directory nor a list file: " +
                          out.input.string());
    return out;
}

}  // namespace llmr
