#ifndef TORUSISO_ERROR_HPP
#define TORUSISO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace torusiso {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete type onto its exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidShapeError : public Error {
public:
    using Error::Error;
};

// Argument outside an operation's precondition (t out of range, mismatched
// hosts, sub-midplane requests, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedShapeError : public Error {
public:
    using Error::Error;
};

class UnsupportedPatternError : public Error {
public:
    using Error::Error;
};

class NoGeometryError : public Error {
public:
    using Error::Error;
};

// Malformed machine/policy files or CLI values.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace torusiso

#endif  // TORUSISO_ERROR_HPP
