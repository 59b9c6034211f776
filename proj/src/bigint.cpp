#include "hyperorbit/bigint.hpp"

#include <charconv>
#include <cmath>
#include <deque>
#include <mutex>
#include <numeric>
#include <vector>

#include "hyperorbit/errors.hpp"

namespace hyperorbit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::NoData: return "no data";
    case ErrorKind::NoDensity: return "no density";
    case ErrorKind::ZeroWeight: return "zero weight";
    case ErrorKind::FamilyExhausted: return "family exhausted";
    case ErrorKind::InsufficientBlock: return "insufficient block";
    case ErrorKind::SpaceMismatch: return "space mismatch";
    case ErrorKind::OutOfRange: return "out of range";
    case ErrorKind::Parse: return "parse error";
  }
  return "error";
}

const BigInt& pow10(unsigned e) {
  static std::mutex mutex;
  // deque keeps references stable while the table grows
  static std::deque<BigInt> table{BigInt(1)};
  std::lock_guard lock(mutex);
  while (table.size() <= e) table.push_back(table.back() * 10);
  return table[e];
}

unsigned decimal_digits(const BigInt& x) {
  BigInt v = abs(x);
  if (v == 0) return 1;
  return static_cast<unsigned>(v.str().size());
}

bool fits_int64(const BigInt& x) {
  return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t to_int64(const BigInt& x) {
  if (!fits_int64(x)) throw Error(ErrorKind::OutOfRange, "index " + x.str() + " exceeds 64-bit range");
  return x.convert_to<std::int64_t>();
}

double to_double(const Ratio& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Ratio& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::Parse, "not an integer: '" + std::string(s) + "'");
  return v;
}

}  // namespace

Ratio parse_ratio(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorKind::Parse, "empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t den = parse_int(text.substr(slash + 1));
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
    return Ratio(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    std::string frac(text.substr(dot + 1));
    if (frac.size() > 15) throw Error(ErrorKind::Parse, "too many decimals: '" + std::string(text) + "'");
    bool negative = !digits.empty() && digits.front() == '-';
    if (negative) digits.erase(0, 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    std::int64_t whole = digits.empty() ? 0 : parse_int(digits);
    std::int64_t part = frac.empty() ? 0 : parse_int(frac);
    Ratio r(whole * den + part, den);
    return negative ? -r : r;
  }
  return Ratio(parse_int(text));
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace hyperorbit
