#pragma once

#include <stdexcept>
#include <string>

namespace qcover {

/// Base class for all qcover exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: malformed files, dimension mismatches, violated preconditions.
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// Numerical failure: degenerate geometry, non-convergence, invalid intermediate state.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

namespace detail {
inline void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}
}  // namespace detail

}  // namespace qcover
