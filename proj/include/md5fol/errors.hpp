#pragma once

#include <stdexcept>
#include <string>

namespace md5fol {

/// Family parameters violate a catalog constraint; the message names the
/// constraint that failed (e.g. "lambda1 == lambda2").
class ConstraintViolation : public std::invalid_argument {
 public:
  explicit ConstraintViolation(const std::string& what) : std::invalid_argument(what) {}
};

/// Two computations that must agree did not. Signals a build bug, not a
/// user error.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

/// A covector claimed to be generic offers no coordinate from which the
/// leaf parameter can be recovered.
class DegenerateBase : public std::invalid_argument {
 public:
  explicit DegenerateBase(const std::string& what) : std::invalid_argument(what) {}
};

/// File could not be opened or written.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace md5fol
