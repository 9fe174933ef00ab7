#pragma once

#include <stdexcept>
#include <string>

namespace gpr {

/// Malformed input text (graph, signal, partition, config files).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structurally invalid arguments: bad graphs, mismatched lengths, bad settings.
class ValidationError : public std::runtime_error {
public:
    enum class Kind {
        EndpointOutOfRange,
        SelfLoop,
        DuplicateEdge,
        Disconnected,
        SizeMismatch,
        NonFinite,
        InvalidArgument,
    };

    ValidationError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Failures inside the numerical engines (e.g. a network with no finite cut).
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gpr
