// Error types shared across the library. ValidationError marks malformed
// caller input (wrong dimensions, invalid configuration, bad state files);
// NumericError marks a numeric contract failure inside a kernel
// (hermiticity, positivity, finiteness).
#pragma once

#include <stdexcept>
#include <string>

namespace qmono {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(what) {}
};

}  // namespace qmono
