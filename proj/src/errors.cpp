#include "selfsim/errors.hpp"

namespace selfsim {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_argument: return "invalid-argument";
        case ErrorKind::domain: return "domain-error";
        case ErrorKind::singular_matrix: return "singular-matrix";
        case ErrorKind::root_finding: return "root-finding-failed";
        case ErrorKind::condition_count: return "condition-count-mismatch";
        case ErrorKind::no_valid_solution: return "no-valid-solution";
        case ErrorKind::residual: return "residual-failure";
        case ErrorKind::empty_strategy: return "empty-strategy";
        case ErrorKind::complex_solution: return "complex-solutions";
        case ErrorKind::power_incompatible: return "power-incompatible";
        case ErrorKind::config: return "config-error";
    }
    return "unknown";
}

}  // namespace selfsim
