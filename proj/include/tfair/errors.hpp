#ifndef TFAIR_ERRORS_HPP
#define TFAIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tfair {

/// Bad input: malformed scenario, out-of-range parameter, misaligned vectors.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A search or state space exceeds its configured cap.
class CapacityError : public std::length_error {
 public:
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

}  // namespace tfair

#endif  // TFAIR_ERRORS_HPP
