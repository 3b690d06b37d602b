#pragma once

#include <stdexcept>
#include <string>

namespace prineig {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidPanel : public Error {
public:
    using Error::Error;
};

class InvalidFactorCount : public Error {
public:
    using Error::Error;
};

class InvalidVector : public Error {
public:
    using Error::Error;
};

class InvalidLevel : public Error {
public:
    using Error::Error;
};

class InvalidIndex : public Error {
public:
    using Error::Error;
};

class InvalidInput : public Error {
public:
    using Error::Error;
};

class InvalidSpec : public Error {
public:
    using Error::Error;
};

class InvalidDesign : public Error {
public:
    using Error::Error;
};

/// Eigensolver failure or a numerically meaningless intermediate
/// (e.g. a materially negative eigenvalue of a covariance matrix).
class NumericalFailure : public Error {
public:
    using Error::Error;
};

/// Zero or near-zero eigenvalue where a positive one is required.
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

/// Variance estimate <= 0 where a positive one is required.
class DegenerateVariance : public Error {
public:
    using Error::Error;
};

/// Two spiked eigenvalues too close: the omega weights blow up and the
/// limit laws assume distinct spikes.
class NearDegenerateSpikes : public Error {
public:
    using Error::Error;
};

/// The eigenvector test has no defined null law for r = 1.
class UnsupportedFactorCount : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace prineig
