#pragma once

// Non-negative integers of the form v (an ordinary BigInt) or 10^E + c, where
// E is itself a TowerIndex beyond materializable size and c is a small
// offset. The block family of the c₀ counterexample lives at such indices:
// its second block already starts near 10^(10^102).

#include <compare>
#include <memory>
#include <optional>
#include <string>

#include "hyperorbit/bigint.hpp"

namespace hyperorbit {

class TowerIndex {
 public:
  /// Exponents up to this many digits are materialized as BigInt.
  static constexpr unsigned kFiniteDigits = 4096;

  TowerIndex(BigInt value = 0);  // NOLINT(google-explicit-constructor)

  /// 10^e + offset; finite when e is a finite value <= kFiniteDigits.
  static TowerIndex pow10_plus(const TowerIndex& e, const BigInt& offset = 0);

  bool finite() const { return !exponent_; }
  /// Throws OutOfRange for tower values.
  const BigInt& value() const;
  const TowerIndex& exponent() const;
  const BigInt& offset() const { return offset_; }

  TowerIndex operator+(const BigInt& c) const;
  TowerIndex operator-(const BigInt& c) const { return *this + BigInt(-c); }

  /// this - o when it is an ordinary integer (both finite, or equal exponents).
  std::optional<BigInt> minus(const TowerIndex& o) const;

  /// Decimal for finite values, "10^(E)+c" otherwise.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const TowerIndex& a, const TowerIndex& b);
  friend bool operator==(const TowerIndex& a, const TowerIndex& b) { return (a <=> b) == 0; }

 private:
  BigInt value_;                              // finite value
  std::shared_ptr<const TowerIndex> exponent_;  // tower exponent E
  BigInt offset_;                             // tower offset c
};

}  // namespace hyperorbit
