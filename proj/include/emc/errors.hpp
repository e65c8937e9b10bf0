#pragma once

#include <stdexcept>
#include <string>

namespace emc {

// Error categories, used by the CLI to pick exit codes.
enum class ErrorKind {
    config,      // bad parameters or configuration
    schema,      // malformed input file (JSON/CSV)
    dimension,   // inconsistent array/matrix dimensions
    solver,      // numerical failure inside a solver
    infeasible,  // model infeasible even after relaxation
    io,          // filesystem trouble
    usage,       // bad command-line usage
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg)
        : std::runtime_error(std::move(msg)), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
    throw Error(kind, msg);
}

}  // namespace emc
