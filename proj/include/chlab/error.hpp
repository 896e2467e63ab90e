#pragma once

#include <stdexcept>
#include <string>

namespace chlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A precondition on an argument was violated (odd N, support outside the domain, ...).
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

/// A NaN or infinity appeared in an input or in an intermediate result.
class NonFiniteError : public Error {
 public:
  explicit NonFiniteError(const std::string& msg) : Error(msg) {}
};

}  // namespace chlab
