#pragma once

#include <stdexcept>
#include <string>

namespace approxc1 {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid combination of input parameters (degrees, sizes, lengths).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain of a function, e.g. a parameter outside [0,1].
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-positive Jacobian determinant or vanishing edge speed.
class DegenerateGeometryError : public Error {
public:
    using Error::Error;
};

/// Patches that do not meet along whole edges.
class ConformityError : public Error {
public:
    using Error::Error;
};

class NonManifoldError : public Error {
public:
    using Error::Error;
};

/// Gluing data vanishing or changing sign along an interface.
class SingularGluingError : public Error {
public:
    using Error::Error;
};

/// Singular local interpolation problem at a vertex.
class DegenerateVertexError : public Error {
public:
    using Error::Error;
};

/// A symmetric system turned out not to be positive definite.
class IndefiniteError : public Error {
public:
    using Error::Error;
};

/// Iterative method failed to converge, or a factorization failed.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace approxc1
