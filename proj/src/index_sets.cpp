#include "hyperorbit/index_sets.hpp"

#include <algorithm>
#include <sstream>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/kernels.hpp"

namespace hyperorbit {

const char* to_string(SetKind kind) {
  switch (kind) {
    case SetKind::ExplicitList: return "explicit-list";
    case SetKind::Periodic: return "periodic";
    case SetKind::IntervalUnion: return "interval-union";
    case SetKind::BlockFamily: return "block-family";
    case SetKind::Derived: return "derived";
  }
  return "unknown";
}

std::optional<BigInt> IndexSetImpl::next_member(const BigInt& from, const BigInt& limit) const {
  if (fits_int64(from) && fits_int64(limit)) {
    for (std::int64_t n = to_int64(from), end = to_int64(limit); n <= end; ++n)
      if (contains_small(n)) return BigInt(n);
    return std::nullopt;
  }
  for (BigInt n = from; n <= limit; ++n)
    if (contains(n)) return n;
  return std::nullopt;
}

BigInt IndexSetImpl::count(const BigInt& a, const BigInt& b) const {
  BigInt total = 0;
  if (fits_int64(a) && fits_int64(b)) {
    std::int64_t c = 0;
    for (std::int64_t n = to_int64(a), end = to_int64(b); n <= end; ++n) c += contains_small(n) ? 1 : 0;
    return c;
  }
  for (auto n = next_member(a, b); n; n = next_member(*n + 1, b)) ++total;
  return total;
}

std::vector<std::int64_t> IndexSetImpl::anchors(std::int64_t, std::int64_t) const { return {}; }

namespace {

class ExplicitSet final : public IndexSetImpl {
 public:
  explicit ExplicitSet(std::vector<BigInt> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.front() < 0) throw Error(ErrorKind::InvalidArgument, "negative index in explicit list");
    small_ = std::all_of(members_.begin(), members_.end(), [](const BigInt& m) { return fits_int64(m); });
    if (small_)
      for (const auto& m : members_) small_members_.push_back(to_int64(m));
  }

  SetKind kind() const override { return SetKind::ExplicitList; }

  bool contains(const BigInt& n) const override { return std::binary_search(members_.begin(), members_.end(), n); }

  bool contains_small(std::int64_t n) const override {
    if (small_) return std::binary_search(small_members_.begin(), small_members_.end(), n);
    return contains(BigInt(n));
  }

  std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const override {
    auto it = std::lower_bound(members_.begin(), members_.end(), from);
    if (it == members_.end() || *it > limit) return std::nullopt;
    return *it;
  }

  BigInt count(const BigInt& a, const BigInt& b) const override {
    if (a > b) return 0;
    return std::upper_bound(members_.begin(), members_.end(), b) - std::lower_bound(members_.begin(), members_.end(), a);
  }

  std::string to_text() const override {
    std::ostringstream out;
    out << "kind explicit-list\n";
    for (const auto& m : members_) out << m << '\n';
    return out.str();
  }

 private:
  std::vector<BigInt> members_;
  std::vector<std::int64_t> small_members_;
  bool small_ = true;
};

class PeriodicSet final : public IndexSetImpl {
 public:
  PeriodicSet(std::int64_t period, std::vector<std::int64_t> residues, BigInt start)
      : period_(period), residues_(std::move(residues)), start_(std::move(start)) {
    if (period_ < 1) throw Error(ErrorKind::InvalidArgument, "period must be positive");
    if (start_ < 0) throw Error(ErrorKind::InvalidArgument, "negative start");
    for (auto& r : residues_) r = ((r % period_) + period_) % period_;
    std::sort(residues_.begin(), residues_.end());
    residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
    mask_.assign(static_cast<std::size_t>(period_), 0);
    for (auto r : residues_) mask_[static_cast<std::size_t>(r)] = 1;
    start_small_ = fits_int64(start_) ? to_int64(start_) : -1;
  }

  SetKind kind() const override { return SetKind::Periodic; }

  bool contains(const BigInt& n) const override {
    if (n < start_) return false;
    return mask_[static_cast<std::size_t>(static_cast<std::int64_t>(n % period_))] != 0;
  }

  bool contains_small(std::int64_t n) const override {
    if (start_small_ < 0 || n < start_small_) return false;
    return mask_[static_cast<std::size_t>(n % period_)] != 0;
  }

  std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const override {
    if (residues_.empty()) return std::nullopt;
    BigInt n = from < start_ ? start_ : from;
    BigInt q = n / period_;
    auto r = static_cast<std::int64_t>(n % period_);
    auto it = std::lower_bound(residues_.begin(), residues_.end(), r);
    BigInt candidate = it == residues_.end() ? (q + 1) * period_ + residues_.front() : q * period_ + *it;
    if (candidate > limit) return std::nullopt;
    return candidate;
  }

  BigInt count(const BigInt& a, const BigInt& b) const override {
    BigInt lo = a < start_ ? start_ : a;
    if (lo > b) return 0;
    return upto(b) - upto(lo - 1);
  }

  std::vector<std::int64_t> anchors(std::int64_t lo, std::int64_t hi) const override {
    if (start_small_ > 0 && start_small_ >= lo && start_small_ <= hi) return {start_small_};
    return {};
  }

  std::string to_text() const override {
    std::ostringstream out;
    out << "kind periodic\nperiod " << period_ << "\nresidues";
    for (auto r : residues_) out << ' ' << r;
    out << "\nstart " << start_ << '\n';
    return out.str();
  }

 private:
  // Number of n in [0, x] with n mod period in residues.
  BigInt upto(const BigInt& x) const {
    if (x < 0) return 0;
    BigInt total = 0;
    for (auto r : residues_)
      if (x >= r) total += (x - r) / period_ + 1;
    return total;
  }

  std::int64_t period_;
  std::vector<std::int64_t> residues_;
  std::vector<std::uint8_t> mask_;
  BigInt start_;
  std::int64_t start_small_;
};

using Interval = std::pair<BigInt, BigInt>;

std::vector<Interval> merge_intervals(std::vector<Interval> in) {
  std::erase_if(in, [](const Interval& iv) { return iv.first > iv.second; });
  std::sort(in.begin(), in.end());
  std::vector<Interval> out;
  for (auto& iv : in) {
    if (iv.first < 0) throw Error(ErrorKind::InvalidArgument, "negative index in interval");
    if (!out.empty() && iv.first <= out.back().second + 1) {
      if (iv.second > out.back().second) out.back().second = iv.second;
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

BigInt overlap(const Interval& iv, const BigInt& a, const BigInt& b) {
  const BigInt& lo = iv.first > a ? iv.first : a;
  const BigInt& hi = iv.second < b ? iv.second : b;
  return lo > hi ? BigInt(0) : BigInt(hi - lo + 1);
}

std::optional<BigInt> next_in_intervals(const std::vector<Interval>& ivs, const BigInt& from, const BigInt& limit) {
  auto it = std::lower_bound(ivs.begin(), ivs.end(), from, [](const Interval& iv, const BigInt& x) { return iv.second < x; });
  if (it == ivs.end()) return std::nullopt;
  BigInt n = it->first > from ? it->first : from;
  if (n > limit) return std::nullopt;
  return n;
}

std::vector<std::int64_t> interval_anchors(const std::vector<Interval>& ivs, std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (const auto& iv : ivs) {
    if (iv.first > hi) break;
    for (const BigInt* e : {&iv.first, &iv.second})
      if (*e >= lo && *e <= hi) out.push_back(to_int64(*e));
  }
  return out;
}

class IntervalSet final : public IndexSetImpl {
 public:
  explicit IntervalSet(std::vector<Interval> ivs) : ivs_(merge_intervals(std::move(ivs))) {}

  SetKind kind() const override { return SetKind::IntervalUnion; }

  bool contains(const BigInt& n) const override {
    auto it = std::upper_bound(ivs_.begin(), ivs_.end(), n, [](const BigInt& x, const Interval& iv) { return x < iv.first; });
    return it != ivs_.begin() && n <= std::prev(it)->second;
  }

  std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const override {
    return next_in_intervals(ivs_, from, limit);
  }

  BigInt count(const BigInt& a, const BigInt& b) const override {
    BigInt total = 0;
    for (const auto& iv : ivs_) {
      if (iv.first > b) break;
      total += overlap(iv, a, b);
    }
    return total;
  }

  std::vector<std::int64_t> anchors(std::int64_t lo, std::int64_t hi) const override {
    return interval_anchors(ivs_, lo, hi);
  }

  std::string to_text() const override {
    std::ostringstream out;
    out << "kind interval-union\n";
    for (const auto& [lo, hi] : ivs_) out << lo << ' ' << hi << '\n';
    return out.str();
  }

 private:
  std::vector<Interval> ivs_;
};

class FactorialBlocks final : public IndexSetImpl {
 public:
  SetKind kind() const override { return SetKind::BlockFamily; }

  bool contains(const BigInt& m) const override {
    BigInt f = 1;
    for (unsigned n = 1; f <= m; ++n) {
      f *= n;
      if (f <= m && m <= f + n) return true;
    }
    return false;
  }

  bool contains_small(std::int64_t m) const override {
    std::int64_t f = 1;
    for (std::int64_t n = 1; n <= 20; ++n) {
      f *= n;
      if (f > m) return false;
      if (m <= f + n) return true;
    }
    return contains(BigInt(m));
  }

  std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const override {
    return next_in_intervals(blocks_upto(limit), from, limit);
  }

  BigInt count(const BigInt& a, const BigInt& b) const override {
    BigInt total = 0;
    for (const auto& iv : blocks_upto(b)) total += overlap(iv, a, b);
    return total;
  }

  std::vector<std::int64_t> anchors(std::int64_t lo, std::int64_t hi) const override {
    return interval_anchors(blocks_upto(hi), lo, hi);
  }

  std::string to_text() const override { return "kind block-family\nname factorial-blocks\n"; }

 private:
  static std::vector<Interval> blocks_upto(const BigInt& b) {
    std::vector<Interval> blocks;
    BigInt f = 1;
    for (unsigned n = 1;; ++n) {
      f *= n;
      if (f > b) break;
      blocks.emplace_back(f, f + n);
    }
    return merge_intervals(std::move(blocks));
  }
};

class SquareSet final : public IndexSetImpl {
 public:
  SetKind kind() const override { return SetKind::Derived; }

  bool contains(const BigInt& n) const override {
    if (n < 0) return false;
    BigInt r = boost::multiprecision::sqrt(n);
    return r * r == n;
  }

  bool contains_small(std::int64_t n) const override { return contains(BigInt(n)); }

  std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const override {
    BigInt r = from <= 0 ? BigInt(0) : BigInt(boost::multiprecision::sqrt(BigInt(from - 1)) + 1);
    BigInt sq = r * r;
    if (sq > limit) return std::nullopt;
    return sq;
  }

  BigInt count(const BigInt& a, const BigInt& b) const override {
    if (b < 0 || a > b) return 0;
    BigInt below = a <= 0 ? BigInt(0) : BigInt(boost::multiprecision::sqrt(BigInt(a - 1)) + 1);
    return boost::multiprecision::sqrt(b) + 1 - below;
  }

  std::string to_text() const override { return "kind derived\nname squares\n"; }
};

class PowerSet final : public IndexSetImpl {
 public:
  PowerSet(std::int64_t base, BigInt scale, unsigned min_exponent)
      : base_(base), scale_(std::move(scale)), min_exponent_(min_exponent) {
    if (base_ < 2) throw Error(ErrorKind::InvalidArgument, "power base must be at least 2");
    if (scale_ < 1) throw Error(ErrorKind::InvalidArgument, "power scale must be positive");
  }

  SetKind kind() const override { return SetKind::Derived; }

  bool contains(const BigInt& n) const override {
    if (n < scale_ || n % scale_ != 0) return false;
    BigInt q = n / scale_;
    unsigned e = 0;
    while (q % base_ == 0) {
      q /= base_;
      ++e;
    }
    return q == 1 && e >= min_exponent_;
  }

  std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const override {
    for (BigInt v = first(); v <= limit; v *= base_)
      if (v >= from) return v;
    return std::nullopt;
  }

  BigInt count(const BigInt& a, const BigInt& b) const override {
    BigInt total = 0;
    for (BigInt v = first(); v <= b; v *= base_)
      if (v >= a) ++total;
    return total;
  }

  std::string to_text() const override {
    std::ostringstream out;
    out << "kind derived\nname powers\nbase " << base_ << "\nscale " << scale_ << "\nmin-exponent " << min_exponent_
        << '\n';
    return out.str();
  }

 private:
  BigInt first() const {
    BigInt v = scale_;
    for (unsigned e = 0; e < min_exponent_; ++e) v *= base_;
    return v;
  }

  std::int64_t base_;
  BigInt scale_;
  unsigned min_exponent_;
};

class PredicateSet final : public IndexSetImpl {
 public:
  PredicateSet(std::string text, std::function<bool(const BigInt&)> big, std::function<bool(std::int64_t)> small)
      : text_(std::move(text)), big_(std::move(big)), small_(std::move(small)) {}

  SetKind kind() const override { return SetKind::Derived; }
  bool contains(const BigInt& n) const override { return n >= 0 && big_(n); }
  bool contains_small(std::int64_t n) const override { return n >= 0 && (small_ ? small_(n) : big_(BigInt(n))); }
  std::string to_text() const override { return text_; }

 private:
  std::string text_;
  std::function<bool(const BigInt&)> big_;
  std::function<bool(std::int64_t)> small_;
};

}  // namespace

IndexSet::IndexSet() : impl_(std::make_shared<ExplicitSet>(std::vector<BigInt>{})) {}

IndexSet::IndexSet(std::shared_ptr<const IndexSetImpl> impl) : impl_(std::move(impl)) {
  if (!impl_) throw Error(ErrorKind::InvalidArgument, "null set implementation");
}

IndexSet IndexSet::explicit_list(std::vector<BigInt> members) {
  return IndexSet(std::make_shared<ExplicitSet>(std::move(members)));
}

IndexSet IndexSet::explicit_list(std::span<const std::int64_t> members) {
  return explicit_list(std::vector<BigInt>(members.begin(), members.end()));
}

IndexSet IndexSet::periodic(std::int64_t period, std::vector<std::int64_t> residues, const BigInt& start) {
  return IndexSet(std::make_shared<PeriodicSet>(period, std::move(residues), start));
}

IndexSet IndexSet::intervals(std::vector<std::pair<BigInt, BigInt>> closed) {
  return IndexSet(std::make_shared<IntervalSet>(std::move(closed)));
}

IndexSet IndexSet::factorial_blocks() { return IndexSet(std::make_shared<FactorialBlocks>()); }

IndexSet IndexSet::squares() { return IndexSet(std::make_shared<SquareSet>()); }

IndexSet IndexSet::powers(std::int64_t base, const BigInt& scale, unsigned min_exponent) {
  return IndexSet(std::make_shared<PowerSet>(base, scale, min_exponent));
}

IndexSet IndexSet::all() { return periodic(1, {0}); }

IndexSet IndexSet::empty() { return IndexSet(); }

IndexSet IndexSet::derived(std::string text, std::function<bool(const BigInt&)> contains,
                           std::function<bool(std::int64_t)> contains_small) {
  return IndexSet(std::make_shared<PredicateSet>(std::move(text), std::move(contains), std::move(contains_small)));
}

bool IndexSet::contains(const BigInt& n) const { return n >= 0 && impl_->contains(n); }

bool IndexSet::contains(std::int64_t n) const { return n >= 0 && impl_->contains_small(n); }

std::vector<BigInt> IndexSet::enumerate(const BigInt& a, const BigInt& b) const {
  std::vector<BigInt> out;
  BigInt from = a < 0 ? BigInt(0) : a;
  for (auto n = impl_->next_member(from, b); n; n = impl_->next_member(*n + 1, b)) out.push_back(*n);
  return out;
}

std::vector<std::int64_t> IndexSet::members(std::int64_t a, std::int64_t b) const {
  a = std::max<std::int64_t>(a, 0);
  std::vector<std::int64_t> out;
  if (a > b) return out;
  if (kind() == SetKind::Derived && b - a <= (std::int64_t{1} << 26)) {
    auto bits = bitmap(a, b);
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) out.push_back(a + static_cast<std::int64_t>(i));
    return out;
  }
  for (const auto& n : enumerate(a, b)) out.push_back(to_int64(n));
  return out;
}

BigInt IndexSet::count(const BigInt& a, const BigInt& b) const {
  BigInt from = a < 0 ? BigInt(0) : a;
  if (from > b) return 0;
  return impl_->count(from, b);
}

std::vector<std::uint8_t> IndexSet::bitmap(std::int64_t lo, std::int64_t hi) const {
  const IndexSetImpl* impl = impl_.get();
  return kernels::omp::membership_bitmap(lo, hi, [impl](std::int64_t n) { return n >= 0 && impl->contains_small(n); });
}

BigInt count_window(const IndexSet& set, const BigInt& a, const BigInt& b) { return set.count(a, b); }

}  // namespace hyperorbit
