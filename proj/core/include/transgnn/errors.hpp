#pragma once

#include <stdexcept>
#include <string>

namespace transgnn {

// Error taxonomy shared by the library and the CLI. The CLI maps each class
// to a distinct exit code (see tools/).

// Malformed input data: bad dataset files, labels out of range, etc.
class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Incompatible shapes or invalid arguments between in-memory objects.
class ShapeError : public std::invalid_argument {
public:
  explicit ShapeError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Non-finite values or diverging computations.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failures.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace transgnn
