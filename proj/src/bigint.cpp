#include "torus_embed/bigint.hpp"

#include <cmath>
#include <cstdint>

#include "torus_embed/errors.hpp"

namespace torus_embed {

BigInt parse_decimal(std::string_view text) {
  if (text.empty()) throw InputError("empty integer string");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw InputError("not a non-negative decimal integer: '" +
                       std::string(text) + "'");
    }
  }
  return BigInt(std::string(text));
}

std::string to_decimal(const BigInt& value) { return value.str(); }

double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (den <= 0) throw InputError("ratio_to_double: non-positive denominator");
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  const BigInt mag = negative ? BigInt(-num) : num;

  // Scale so the integer quotient carries 64 significant bits, then let the
  // hardware round once from long double.
  const long shift = 64 - (static_cast<long>(bit_length(mag)) -
                           static_cast<long>(bit_length(den)));
  BigInt q = shift >= 0 ? BigInt((mag << shift) / den)
                        : BigInt(mag / (den << -shift));
  // q now has 64 or 65 bits; keep the top 64 and fold the rest into the shift.
  long extra = static_cast<long>(bit_length(q)) - 64;
  if (extra > 0) {
    q >>= extra;
  } else {
    extra = 0;
  }
  const auto top = static_cast<std::uint64_t>(q);
  const long double scaled =
      std::ldexp(static_cast<long double>(top), static_cast<int>(extra - shift));
  const auto result = static_cast<double>(scaled);
  return negative ? -result : result;
}

BigInt floor_mod(const BigInt& value, const BigInt& m) {
  BigInt r = value % m;
  if (r < 0) r += m;
  return r;
}

std::size_t bit_length(const BigInt& value) {
  if (value == 0) return 0;
  const BigInt mag = value < 0 ? BigInt(-value) : value;
  return boost::multiprecision::msb(mag) + 1;
}

BigInt ceil_to_bigint(long double value) {
  if (!std::isfinite(value)) throw InputError("ceil_to_bigint: non-finite value");
  const long double c = std::ceil(value);
  if (c == 0.0L) return BigInt(0);
  const bool negative = c < 0;
  int exponent = 0;
  const long double frac = std::frexp(negative ? -c : c, &exponent);
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(frac, 64));
  BigInt result(mantissa);
  if (exponent >= 64) {
    result <<= (exponent - 64);
  } else {
    result >>= (64 - exponent);
  }
  return negative ? BigInt(-result) : result;
}

}  // namespace torus_embed
