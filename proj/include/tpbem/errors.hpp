#pragma once

#include <stdexcept>

namespace tpbem {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested evaluation lies outside the regime the quadrature can resolve.
struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tpbem
