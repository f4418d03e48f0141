#pragma once

#include <stdexcept>
#include <string>

namespace biharm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query point lies outside a declared validity domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The metric is not positive-definite at the evaluation point.
class SingularMetric : public Error {
 public:
  using Error::Error;
};

/// The operation does not apply to the metric's representation.
class UnsupportedForm : public Error {
 public:
  using Error::Error;
};

/// A derivative order beyond what the jets carry was requested.
class OrderUnavailable : public Error {
 public:
  using Error::Error;
};

/// Nested finite differencing cannot separate the residual from its error.
class PrecisionLoss : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class EmptyDomain : public Error {
 public:
  using Error::Error;
};

class EmptyGrid : public Error {
 public:
  using Error::Error;
};

class UnknownFamily : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace biharm
