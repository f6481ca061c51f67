#ifndef TFAIR_NUMBER_FORMAT_HPP
#define TFAIR_NUMBER_FORMAT_HPP

#include <string>

namespace tfair {

/// Shortest decimal string that round-trips to `value` ("." separator,
/// locale independent). NaN prints as "nan".
std::string format_number(double value);

}  // namespace tfair

#endif  // TFAIR_NUMBER_FORMAT_HPP
