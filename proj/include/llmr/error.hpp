#pragma once

#include <stdexcept>
#include <string>

namespace llmr {

/// Base class for every error raised by the launcher.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent options.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A launch stage failed; `stage()` names the pipeline step.
class StageError : public Error {
public:
    StageError(std::string stage, std::string const& what)
        : Error(stage + ": " + what), stage_(std::move(stage)) {}

    std::string const& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace llmr
