#pragma once

#include <stdexcept>
#include <string>

namespace chd {

/// Base class for all library failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A precondition on an argument was violated.
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

/// A Fock-space or photon-number cutoff does not hold the required
/// probability mass. Never silently renormalize; raise this instead.
struct TruncationError : Error {
    explicit TruncationError(const std::string& what) : Error(what) {}
};

/// Numerical quadrature failed its stability criterion.
struct QuadratureError : Error {
    explicit QuadratureError(const std::string& what) : Error(what) {}
};

/// A computed quantity violated a bound it provably satisfies in exact
/// arithmetic (negative probability, broken normalization, ...).
struct NumericalError : Error {
    explicit NumericalError(const std::string& what) : Error(what) {}
};

}  // namespace chd
