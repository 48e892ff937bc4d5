#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace torus_embed {

using BigInt = boost::multiprecision::cpp_int;

// Parses a non-negative decimal integer. Throws InputError on anything else.
BigInt parse_decimal(std::string_view text);

std::string to_decimal(const BigInt& value);

// Nearest double to num/den, computed from the exact rational (no
// intermediate rounding of num or den). den must be positive.
double ratio_to_double(const BigInt& num, const BigInt& den);

// Non-negative remainder in [0, m).
BigInt floor_mod(const BigInt& value, const BigInt& m);

std::size_t bit_length(const BigInt& value);

// Smallest integer >= value; value must be finite.
BigInt ceil_to_bigint(long double value);

}  // namespace torus_embed
