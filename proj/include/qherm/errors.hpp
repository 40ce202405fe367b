#pragma once

#include <stdexcept>
#include <string>

namespace qherm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A 2x2 complex matrix that is not the image of a quaternion.
class PatternViolation : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. s not in (0,1)).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Finite-difference step that is non-positive or vanishes against the base point.
class DegenerateStep : public Error {
public:
    using Error::Error;
};

class NotPerpendicular : public Error {
public:
    using Error::Error;
};

/// Floating evaluation beyond the representable range (e.g. H_n for very large n).
class OverflowError : public Error {
public:
    using Error::Error;
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// A coherent-state vector whose truncation drops more weight than allowed.
class TruncationInsufficient : public Error {
public:
    using Error::Error;
};

/// Two coefficient vectors that do not live in the same truncated basis.
class BasisMismatch : public Error {
public:
    using Error::Error;
};

} // namespace qherm
