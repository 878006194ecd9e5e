#pragma once

#include <stdexcept>
#include <string>

namespace revforge {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: out-of-range symbols, arity mismatches, bad layouts,
/// unparsable files. The CLI maps this to exit code 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap would be exceeded.
/// The CLI maps this to exit code 3.
class ResourceCapExceeded : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace revforge
