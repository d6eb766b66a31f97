#pragma once

#include <stdexcept>
#include <string>

namespace sgo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed inputs: bad regions, out-of-region points, bad parameters.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DuplicatePointsError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// Cholesky factorization failed even with the largest allowed jitter.
class IllConditionedError : public Error {
public:
    using Error::Error;
};

/// Every candidate of an argmax was degenerate (or excluded).
class NoCandidateError : public Error {
public:
    using Error::Error;
};

/// The objective returned a non-finite value.
class ObjectiveError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace sgo
