#pragma once

#include <stdexcept>
#include <string>

namespace nbperc {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: parse failures, out-of-range parameters, violated preconditions.
class InputError : public Error {
public:
    using Error::Error;
};

/// An iterative method failed to converge, or a numeric precondition failed.
class NumericError : public Error {
public:
    using Error::Error;
};

/// A quotient pattern parsed fine but does not describe an admissible infinite tree.
class InvalidPattern : public Error {
public:
    using Error::Error;
};

} // namespace nbperc
