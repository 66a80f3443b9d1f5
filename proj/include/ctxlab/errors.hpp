#pragma once

#include <stdexcept>
#include <string>

namespace ctxlab {

/// Invalid or inconsistent configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A quality gate failed, e.g. detector validation accuracy (CLI exit code 3).
struct GateError : std::runtime_error {
    explicit GateError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Missing, corrupted, or provenance-mismatched artifact (CLI exit code 4).
struct ArtifactError : std::runtime_error {
    explicit ArtifactError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ctxlab
