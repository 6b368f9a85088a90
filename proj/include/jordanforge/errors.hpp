#pragma once

#include <stdexcept>
#include <string>

namespace jforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// V_{>=0} came out exactly singular; the precision budget was too small.
class SingularVge : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed (conjugate pairing, root isolation).
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace jforge
