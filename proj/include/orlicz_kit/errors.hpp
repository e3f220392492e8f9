#pragma once

#include <stdexcept>
#include <string>

namespace okit {

// Malformed input: files, config values, out-of-range parameters.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mathematical admissibility failure (e.g. a kernel that violates the
// integral condition at the origin).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Unknown condition or statement identifier.
struct UnknownIdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace okit
