#pragma once

#include <stdexcept>
#include <string>

namespace quadineq {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// geometry
class NonConvexError : public Error {
 public:
  using Error::Error;
};
class DuplicatePointsError : public Error {
 public:
  using Error::Error;
};
class InvalidFrameError : public Error {
 public:
  using Error::Error;
};
class RejectionBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// interval
class DivisionByZeroInterval : public Error {
 public:
  using Error::Error;
};
class NegativeSqrtDomain : public Error {
 public:
  using Error::Error;
};
class IndeterminateRegion : public Error {
 public:
  using Error::Error;
};

// certifier / io
class MalformedCertificate : public Error {
 public:
  using Error::Error;
};
class MalformedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace quadineq
