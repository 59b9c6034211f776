#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

namespace hyperorbit {

/// Arbitrary-precision integer used for set indices. Expression templates are
/// off so that mixed expressions have a single value type.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

/// Exact density values (count / length).
using Ratio = boost::rational<std::int64_t>;

/// 10^e, cached for small exponents.
const BigInt& pow10(unsigned e);

/// Number of decimal digits of |x| (1 for zero).
unsigned decimal_digits(const BigInt& x);

bool fits_int64(const BigInt& x);
std::int64_t to_int64(const BigInt& x);

double to_double(const Ratio& r);
std::string to_string(const Ratio& r);

/// Accepts "a/b", integers and plain decimals such as "0.2".
Ratio parse_ratio(std::string_view text);

/// Shortest round-trip decimal form; deterministic across runs.
std::string format_double(double v);

}  // namespace hyperorbit
