#pragma once

#include <stdexcept>
#include <string>

namespace chazy {

/// Base class for all domain errors raised by this library.
struct ChazyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The coefficient k^2/(36-k^2) has a pole at k = 6.
struct PoleAtSix : ChazyError {
    PoleAtSix() : ChazyError("parameter k = 6 hits the coefficient pole of k^2/(36-k^2)") {}
};

/// Evaluation of a rational solution too close to its pole x = c.
struct PoleHit : ChazyError {
    explicit PoleHit(double dist)
        : ChazyError("rational solution evaluated within " + std::to_string(dist) + " of its pole") {}
};

/// The residue a does not make y = a/(x-c) a solution of the equation.
struct InadmissibleResidue : ChazyError {
    using ChazyError::ChazyError;
};

/// A transform denominator fell below the degeneracy threshold.
struct DegenerateInput : ChazyError {
    std::string denominator;
    DegenerateInput(std::string name, double magnitude)
        : ChazyError("degenerate input: |" + name + "| = " + std::to_string(magnitude) +
                     " below threshold"),
          denominator(std::move(name)) {}
};

/// The supplied root does not satisfy the entry's defining polynomial.
struct InconsistentRoot : ChazyError {
    using ChazyError::ChazyError;
};

/// Implicit differentiation at a (nearly) multiple root.
struct MultipleRoot : ChazyError {
    using ChazyError::ChazyError;
};

/// Two candidate roots collided; branch continuation is ill-defined.
struct BranchCollision : ChazyError {
    double x;
    BranchCollision(double at_x, double gap)
        : ChazyError("root collision at x = " + std::to_string(at_x) + " (gap " +
                     std::to_string(gap) + ")"),
          x(at_x) {}
};

/// Composition stages whose target/source parameters do not chain.
struct ParameterMismatch : ChazyError {
    using ChazyError::ChazyError;
};

/// Sample request outside a trajectory's covered interval.
struct OutOfRange : ChazyError {
    using ChazyError::ChazyError;
};

}  // namespace chazy
