#pragma once

#include <stdexcept>
#include <string>

namespace parkroute {

/// Base of every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A loaded network, survey, weight file or config violates an invariant.
/// The message names the first violated invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

class NotAParkingLot : public Error {
 public:
  using Error::Error;
};

class InvalidRoute : public Error {
 public:
  using Error::Error;
};

class EmptySurvey : public Error {
 public:
  using Error::Error;
};

class InvalidConcentration : public Error {
 public:
  using Error::Error;
};

class DegenerateBounds : public Error {
 public:
  using Error::Error;
};

class EmptyNetwork : public Error {
 public:
  using Error::Error;
};

class NoRouteFound : public Error {
 public:
  using Error::Error;
};

class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace parkroute
