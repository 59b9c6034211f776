#include "hyperorbit/tower_index.hpp"

#include "hyperorbit/errors.hpp"

namespace hyperorbit {

namespace {

std::strong_ordering cmp(const BigInt& a, const BigInt& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Compares a tower value 10^E + c with a finite value v.
std::strong_ordering tower_vs_finite(const TowerIndex& t, const BigInt& v) {
  const TowerIndex& e = t.exponent();
  if (e.finite() && e.value() <= decimal_digits(v) + 1) {
    // Small enough to materialize next to v.
    return cmp(pow10(static_cast<unsigned>(e.value())) + t.offset(), v);
  }
  return std::strong_ordering::greater;
}

}  // namespace

TowerIndex::TowerIndex(BigInt value) : value_(std::move(value)) {}

TowerIndex TowerIndex::pow10_plus(const TowerIndex& e, const BigInt& offset) {
  if (e.finite() && e.value() < 0) throw Error(ErrorKind::InvalidArgument, "negative decimal exponent");
  if (e.finite() && e.value() <= kFiniteDigits) return TowerIndex(pow10(static_cast<unsigned>(e.value())) + offset);
  if (decimal_digits(offset) >= kFiniteDigits)
    throw Error(ErrorKind::OutOfRange, "tower offset too large to keep ordering exact");
  TowerIndex t;
  t.exponent_ = std::make_shared<const TowerIndex>(e);
  t.offset_ = offset;
  return t;
}

const BigInt& TowerIndex::value() const {
  if (!finite()) throw Error(ErrorKind::OutOfRange, "index " + to_string() + " cannot be materialized");
  return value_;
}

const TowerIndex& TowerIndex::exponent() const {
  if (finite()) throw Error(ErrorKind::InvalidArgument, "finite index has no tower exponent");
  return *exponent_;
}

TowerIndex TowerIndex::operator+(const BigInt& c) const {
  if (finite()) return TowerIndex(value_ + c);
  return pow10_plus(*exponent_, offset_ + c);
}

std::optional<BigInt> TowerIndex::minus(const TowerIndex& o) const {
  if (finite() && o.finite()) return value_ - o.value_;
  if (!finite() && !o.finite() && *exponent_ == *o.exponent_) return offset_ - o.offset_;
  return std::nullopt;
}

std::string TowerIndex::to_string() const {
  if (finite()) return value_.str();
  std::string out = "10^(" + exponent_->to_string() + ")";
  if (offset_ > 0) out += "+" + offset_.str();
  if (offset_ < 0) out += "-" + BigInt(-offset_).str();
  return out;
}

std::strong_ordering operator<=>(const TowerIndex& a, const TowerIndex& b) {
  if (a.finite() && b.finite()) return cmp(a.value_, b.value_);
  if (!a.finite() && b.finite()) return tower_vs_finite(a, b.value_);
  if (a.finite() && !b.finite()) return 0 <=> tower_vs_finite(b, a.value_);
  // Offsets have fewer than kFiniteDigits digits while exponents exceed it,
  // so the exponent decides unless the exponents coincide.
  if (auto c = *a.exponent_ <=> *b.exponent_; c != 0) return c;
  return cmp(a.offset_, b.offset_);
}

}  // namespace hyperorbit
