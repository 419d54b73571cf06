#pragma once

#include <stdexcept>
#include <string>

namespace fusereid {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Homography estimation received a rank-deficient point configuration.
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
};

/// Projective mapping sent a pixel to the plane at infinity.
class PointAtInfinity : public Error {
public:
    using Error::Error;
};

/// Cosine distance requested on a zero embedding.
class ZeroVector : public Error {
public:
    using Error::Error;
};

/// A query id does not exist in the scenario.
class UnknownQuery : public Error {
public:
    using Error::Error;
};

/// A ranked list contains no ground-truth match for its query.
class NoRelevantItem : public Error {
public:
    using Error::Error;
};

/// A configuration value is out of range or inconsistent.
class InvalidConfig : public Error {
public:
    using Error::Error;
};

/// File could not be read, parsed, or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fusereid
