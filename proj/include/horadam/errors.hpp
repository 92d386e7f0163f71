#pragma once

#include <stdexcept>
#include <string>

namespace horadam {

// Every error raised by the library derives from this, so callers that only
// care about "the evaluation could not be carried out" can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    using Error::Error;
};

class ZeroToNegativePower : public Error {
public:
    using Error::Error;
};

class DiscriminantMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateDiscriminant : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

// x in {0, 1} for the geometric forms, x == y for f, x == -y for g.
class PoleError : public Error {
public:
    using Error::Error;
};

class CapExceeded : public Error {
public:
    using Error::Error;
};

class IndexOverflow : public Error {
public:
    using Error::Error;
};

// Raised when an internal computation produces something the algebra says
// it cannot (e.g. a nonzero surd part where the result must be rational).
class InvariantBreach : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace horadam
