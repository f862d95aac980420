#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace homsign {

struct RingMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct SingularMatrix : std::runtime_error {
    SingularMatrix() : std::runtime_error("singular matrix") {}
};

struct InexactDivision : std::runtime_error {
    InexactDivision() : std::runtime_error("polynomial division is not exact") {}
};

/// Rational function not recoverable from the series at the given bounds.
struct NoReconstruction : std::runtime_error {
    NoReconstruction() : std::runtime_error("no rational reconstruction within degree bounds") {}
};

/// Random linear form failed to separate or produced an invalid resolution.
struct BadAlpha : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Retries for random choices exhausted.
struct BadRandomness : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A violated internal invariant (count, degree bound, residual).
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos), reason(what) {}
    std::size_t position;
    std::string reason;
};

}  // namespace homsign
