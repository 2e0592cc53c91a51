#pragma once

#include <stdexcept>
#include <string>

namespace lagvol {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid construction parameters (non-positive density, gamma <= 1, ...).
struct InvalidArgument : Error {
    using Error::Error;
};

// A query outside the space-time window of a flow, or a stencil leaving it.
struct DomainError : Error {
    using Error::Error;
};

// The grid stepper left the smooth regime or was driven with a bad step.
struct SolverError : Error {
    using Error::Error;
};

// Degenerate or self-intersecting boundary, or x0 placement violations.
struct GeometryError : Error {
    using Error::Error;
};

// A quadrature node came within the singularity floor of x0. This is the
// terminal "attained x0" event rather than a failure.
struct AttainedPoint : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

} // namespace lagvol
