#pragma once

#include <stdexcept>
#include <string>

namespace flp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for invalid parameters or arguments; the CLI maps it to exit code 1.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Base for failures of a numerical method; the CLI maps these to exit code 2.
class NumericalError : public Error {
public:
    using Error::Error;
};

class BranchPointProximity : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateRoots : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonconvergentQuadrature : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class HingeViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnderResolvedOscillation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IllConditionedDeconvolution : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ClosureUnavailable : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace flp
