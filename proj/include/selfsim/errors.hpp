#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfsim {

enum class ErrorKind {
    invalid_argument,
    domain,
    singular_matrix,
    root_finding,
    condition_count,
    no_valid_solution,
    residual,
    empty_strategy,
    complex_solution,
    power_incompatible,
    config,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base of every error thrown by the library. The kind is what the CLI
/// reports in its status column.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace selfsim
