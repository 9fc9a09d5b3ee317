#pragma once

#include <stdexcept>
#include <string>

namespace okalab {

// Two failure families, mirrored by the CLI exit codes:
//   PreconditionError -> exit 2 (bad input, domain violation, divisor on a cycle)
//   NumericalError    -> exit 3 (winding rejection, certification failure)

class PreconditionError : public std::invalid_argument {
public:
    explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Unwrapped angle sum is too far from a multiple of 2*pi, or refinement
// could not bring consecutive samples within the step limit.
class WindingRejection : public NumericalError {
public:
    explicit WindingRejection(const std::string& what) : NumericalError(what) {}
};

class ContinuationError : public NumericalError {
public:
    explicit ContinuationError(const std::string& what) : NumericalError(what) {}
};

// Truncation budget exhausted before the requested bound was met.
class CertificationError : public NumericalError {
public:
    explicit CertificationError(const std::string& what) : NumericalError(what) {}
};

// A function vanishes (within its certified bound) where it must not.
class ZeroProximityError : public PreconditionError {
public:
    explicit ZeroProximityError(const std::string& what) : PreconditionError(what) {}
};

// The target of an intersection count vanishes identically along the curve.
class IdenticallyZeroError : public NumericalError {
public:
    explicit IdenticallyZeroError(const std::string& what) : NumericalError(what) {}
};

}  // namespace okalab
