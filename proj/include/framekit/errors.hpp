#pragma once

#include <stdexcept>
#include <string>

namespace framekit {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A value or sequence violates one of its declared invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

// An operation received arguments outside its contract.
class InputError : public Error {
public:
    using Error::Error;
};

// A configured resource limit (ambient dimension, analysis window) was hit.
class ResourceError : public Error {
public:
    using Error::Error;
};

// Structured family falls outside the class we can analyze exactly.
// Raised instead of guessing.
class UnsupportedFamilyError : public Error {
public:
    using Error::Error;
};

// The span lower bound is too small to invert the frame operator.
class DegenerateFrameError : public Error {
public:
    DegenerateFrameError(const std::string& what, double eigenvalue)
        : Error(what), eigenvalue_(eigenvalue) {}
    double eigenvalue() const { return eigenvalue_; }

private:
    double eigenvalue_;
};

// A biorthogonal system was requested for a non-minimal sequence.
// Carries the 1-based index of a column contained in the span of the others.
class NotMinimalError : public Error {
public:
    NotMinimalError(const std::string& what, int column)
        : Error(what), column_(column) {}
    int column() const { return column_; }

private:
    int column_;
};

}  // namespace framekit
