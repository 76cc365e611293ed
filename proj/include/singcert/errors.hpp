#pragma once

#include <stdexcept>
#include <string>

namespace singcert {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A matrix that had to be inverted (or a minor that had to be selected)
/// turned out numerically singular.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// The input point does not behave like an isolated root: either the
/// system does not vanish there, or the dual space did not stabilise
/// before the depth limit.
class NotIsolated : public Error {
 public:
  using Error::Error;
};

/// Failure inside a multi-stage pipeline; `stage()` names the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& reason)
      : Error(stage + ": " + reason), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace singcert
