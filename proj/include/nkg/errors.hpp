#pragma once

#include <stdexcept>
#include <string>

namespace nkg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point lies outside a chart's coordinate box.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Metric not positive definite, degenerate frame seeds, singular matrix.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// The derivative engine cannot supply the requested order.
class OrderError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// An operation's stated precondition does not hold (non-Einstein base, J^2 != -1, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace nkg
