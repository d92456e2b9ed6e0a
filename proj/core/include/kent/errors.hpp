#pragma once

#include <stdexcept>
#include <string>

namespace kent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (e.g. s <= 0 for Delta).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for this flux kind.
class KindError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the image of a monotone map being inverted.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Front tracking exceeded its interaction budget.
class StallError : public Error {
 public:
  using Error::Error;
};

/// Parameters violate a precondition of a bound or construction.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// A function is not supported inside the projection window.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// A function is not a member of the requested one-sided class.
class ClassError : public Error {
 public:
  using Error::Error;
};

/// The flux is flat on an interval where curvature is required.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// A flux or experiment description is malformed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Some samples were not covered by the constructed family.
class CoverageFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace kent
