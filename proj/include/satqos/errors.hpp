#pragma once

#include <stdexcept>

namespace satqos {

// Error classes map to CLI exit codes: validation -> 2, aggregation -> 3,
// usage -> 64. Domain errors inside a scenario cell become skip records
// instead of terminating the run.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AggregationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace satqos
