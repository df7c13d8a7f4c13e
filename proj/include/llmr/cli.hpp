#pragma once

#include "llmr/bench.hpp"
#include "llmr/config.hpp"
#include "llmr/error.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace llmr::cli {

enum class Subcommand { launch, bench };

/// Parsed command line: subcommand plus every flag that was given, by name.
struct CliInvocation {
    Subcommand subcommand{Subcommand::launch};
    std::map<std::string, std::string> flags;

    bool operator==(CliInvocation const&) const = default;
};

class UsageError : public Error {
public:
    using Error::Error;
};

/// Thrown by parse_args for -h/--help; what() is the help text.
class HelpRequested : public Error {
public:
    using Error::Error;
};

/// Process exit codes.
enum ExitCode : int {
    exit_ok = 0,
    exit_error = 1,
    exit_usage = 2,
    exit_mapper_failed = 3,
    exit_reducer_failed = 4,
};

/**
 * Parse arguments (without the program name).
 *
 * The first argument may name a subcommand (`launch`, `bench`); without one
 * the launch surface is assumed. Flags accept both `--flag=value` and
 * `--flag value`.
 */
CliInvocation parse_args(std::vector<std::string> const& args);

/// Render an invocation back to arguments that parse to the same invocation.
std::vector<std::string> format_args(CliInvocation const& inv);

LaunchConfig to_launch_config(CliInvocation const& inv);
bench::CostModel to_cost_model(CliInvocation const& inv);

std::string help_text(Subcommand sub);

/// Entry point behind the `llmapreduce` executable; returns an ExitCode.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace llmr::cli
