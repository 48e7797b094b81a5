#ifndef ROTW_ERRORS_HPP
#define ROTW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rotw {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// An iteration/step budget was exhausted before the requested accuracy.
struct NonConvergence : Error {
    using Error::Error;
};

/// A function returned NaN or infinity where a finite value was required.
struct NonFinite : Error {
    using Error::Error;
};

/// Root bracket endpoints have the same sign and neither is a root.
struct NoBracket : Error {
    using Error::Error;
};

/// Argument outside the mathematical domain of the operation.
struct DomainError : Error {
    using Error::Error;
};

/// An integration event kept firing within the localization tolerance.
struct EventStall : Error {
    using Error::Error;
};

/// A named parameter constraint was violated.
struct BadParams : Error {
    using Error::Error;
};

/// The requested construction has no valid domain.
struct EmptyDomain : Error {
    using Error::Error;
};

/// Evaluation point lies outside a momentum's domain.
struct OutOfDomain : Error {
    using Error::Error;
};

struct TooFewSamples : Error {
    using Error::Error;
};

/// 1 - K(x)^2 vanishes strictly inside a graph span.
struct TurningPointInside : Error {
    using Error::Error;
};

/// Pointwise residuals are undefined for ODE-defined relations.
struct GenericNotPointwise : Error {
    using Error::Error;
};

/// Curve unusable for the requested measurement (e.g. z-stationary everywhere).
struct DegenerateCurve : Error {
    using Error::Error;
};

struct DegenerateGrid : Error {
    using Error::Error;
};

/// A mesh vertex would touch or cross the axis of revolution.
struct AxisTouch : Error {
    using Error::Error;
};

/// An ODE solve left its valid region at the initial condition.
struct ImmediateExit : Error {
    using Error::Error;
};

struct NeedsNonzeroA : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace rotw

#endif
