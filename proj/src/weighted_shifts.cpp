#include "hyperorbit/weighted_shifts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperorbit/bigint.hpp"
#include "hyperorbit/errors.hpp"

namespace hyperorbit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Exponent e with |c| = 2^e, if any.
std::optional<int> power_of_two(double c) {
  if (c == 0.0 || !std::isfinite(c)) return std::nullopt;
  int e = 0;
  double m = std::frexp(std::abs(c), &e);
  if (m != 0.5) return std::nullopt;
  return e - 1;
}

}  // namespace

void WeightSequence::check_index(std::int64_t k) const {
  if (k < 1 && !bilateral())
    throw Error(ErrorKind::OutOfRange, "weight index " + std::to_string(k) + " below 1 for a unilateral sequence");
}

double WeightSequence::log2_weight(std::int64_t k) const { return std::log2(std::abs(weight(k))); }

double WeightSequence::log2_product(std::int64_t a, std::int64_t b) const {
  double total = 0.0;
  for (std::int64_t k = a; k <= b; ++k) total += log2_weight(k);
  return total;
}

std::optional<std::int64_t> WeightSequence::exact_log2_product(std::int64_t, std::int64_t) const {
  return std::nullopt;
}

int WeightSequence::sign_product(std::int64_t, std::int64_t) const { return 1; }

std::optional<std::int64_t> WeightSequence::zero_in(std::int64_t, std::int64_t) const { return std::nullopt; }

double WeightSequence::product(std::int64_t a, std::int64_t b) const {
  if (a > b) return 1.0;
  if (auto e = exact_log2_product(a, b)) {
    auto clamped = static_cast<int>(std::clamp<std::int64_t>(*e, -4000, 4000));
    return sign_product(a, b) * std::ldexp(1.0, clamped);
  }
  if (b - a < 64) {
    double p = 1.0;
    for (std::int64_t k = a; k <= b; ++k) p *= weight(k);
    return p;
  }
  return sign_product(a, b) * std::exp2(log2_product(a, b));
}

namespace {

class ConstantWeights final : public WeightSequence {
 public:
  explicit ConstantWeights(double c) : c_(c), exp_(power_of_two(c)) {}

  double weight(std::int64_t k) const override {
    check_index(k);
    return c_;
  }
  double sup_bound() const override { return std::abs(c_); }
  std::string to_text() const override { return "constant " + format_double(c_); }

  double log2_product(std::int64_t a, std::int64_t b) const override {
    return a > b ? 0.0 : static_cast<double>(b - a + 1) * std::log2(std::abs(c_));
  }
  std::optional<std::int64_t> exact_log2_product(std::int64_t a, std::int64_t b) const override {
    if (!exp_) return std::nullopt;
    return a > b ? 0 : (b - a + 1) * *exp_;
  }
  int sign_product(std::int64_t a, std::int64_t b) const override {
    return c_ < 0 && a <= b && (b - a + 1) % 2 == 1 ? -1 : 1;
  }
  std::optional<std::int64_t> zero_in(std::int64_t a, std::int64_t b) const override {
    if (c_ == 0.0 && a <= b) return a;
    return std::nullopt;
  }
  std::optional<double> expansion_rate() const override {
    if (std::abs(c_) > 1.0) return std::abs(c_);
    return std::nullopt;
  }

 private:
  double c_;
  std::optional<int> exp_;
};

class RatioPowerWeights final : public WeightSequence {
 public:
  explicit RatioPowerWeights(double p) : p_(p) {
    if (!(p >= 1.0)) throw Error(ErrorKind::InvalidArgument, "ratio-power exponent must be >= 1");
  }

  double weight(std::int64_t k) const override {
    check_index(k);
    return std::pow(static_cast<double>(k + 1) / static_cast<double>(k), 1.0 / p_);
  }
  double sup_bound() const override { return std::pow(2.0, 1.0 / p_); }
  std::string to_text() const override { return "ratio-power " + format_double(p_); }

  double log2_product(std::int64_t a, std::int64_t b) const override {
    if (a > b) return 0.0;
    check_index(a);
    return (std::log2(static_cast<double>(b + 1)) - std::log2(static_cast<double>(a))) / p_;
  }

 private:
  double p_;
};

class TableWeights final : public WeightSequence {
 public:
  explicit TableWeights(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw Error(ErrorKind::InvalidArgument, "weight table is empty");
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "weight table holds a non-finite value");
      sup_ = std::max(sup_, std::abs(v));
    }
    negatives_.assign(values_.size() + 1, 0);
    for (std::size_t i = 0; i < values_.size(); ++i) negatives_[i + 1] = negatives_[i] + (values_[i] < 0 ? 1 : 0);
  }

  double weight(std::int64_t k) const override {
    check_index(k);
    auto i = static_cast<std::size_t>(std::min<std::int64_t>(k, static_cast<std::int64_t>(values_.size())) - 1);
    return values_[i];
  }
  double sup_bound() const override { return sup_; }

  std::string to_text() const override {
    std::string out = "table";
    for (double v : values_) out += ' ' + format_double(v);
    return out;
  }

  double log2_product(std::int64_t a, std::int64_t b) const override {
    if (a > b) return 0.0;
    const auto n = static_cast<std::int64_t>(values_.size());
    double total = 0.0;
    for (std::int64_t k = a; k <= std::min(b, n); ++k) total += log2_weight(k);
    if (b > n) total += static_cast<double>(b - std::max(a - 1, n)) * std::log2(std::abs(values_.back()));
    return total;
  }

  int sign_product(std::int64_t a, std::int64_t b) const override {
    if (a > b) return 1;
    const auto n = static_cast<std::int64_t>(values_.size());
    std::int64_t neg = 0;
    if (a <= n) neg += negatives_[static_cast<std::size_t>(std::min(b, n))] - negatives_[static_cast<std::size_t>(a - 1)];
    if (b > n && values_.back() < 0) neg += b - std::max(a - 1, n);
    return neg % 2 == 0 ? 1 : -1;
  }

  std::optional<std::int64_t> zero_in(std::int64_t a, std::int64_t b) const override {
    const auto n = static_cast<std::int64_t>(values_.size());
    for (std::int64_t k = a; k <= std::min(b, n); ++k)
      if (values_[static_cast<std::size_t>(k - 1)] == 0.0) return k;
    if (b > n && values_.back() == 0.0) return std::max(a, n + 1);
    return std::nullopt;
  }
  std::optional<double> expansion_rate() const override {
    double low = std::abs(values_.front());
    for (double v : values_) low = std::min(low, std::abs(v));
    if (low > 1.0) return low;
    return std::nullopt;
  }

 private:
  std::vector<double> values_;
  std::vector<std::int64_t> negatives_;
  double sup_ = 0.0;
};

class BilateralConstantWeights final : public WeightSequence {
 public:
  explicit BilateralConstantWeights(double c) : c_(c), exp_(power_of_two(c)) {
    if (c == 0.0) throw Error(ErrorKind::ZeroWeight, "bilateral constant weight must be nonzero");
  }

  double weight(std::int64_t k) const override { return k >= 1 ? c_ : 1.0 / c_; }
  double sup_bound() const override { return std::max(std::abs(c_), 1.0 / std::abs(c_)); }
  bool bilateral() const override { return true; }
  std::string to_text() const override { return "bilateral-constant " + format_double(c_); }

  double log2_product(std::int64_t a, std::int64_t b) const override {
    return static_cast<double>(net(a, b)) * std::log2(std::abs(c_));
  }
  std::optional<std::int64_t> exact_log2_product(std::int64_t a, std::int64_t b) const override {
    if (!exp_) return std::nullopt;
    return net(a, b) * *exp_;
  }
  int sign_product(std::int64_t a, std::int64_t b) const override {
    return c_ < 0 && a <= b && (b - a + 1) % 2 == 1 ? -1 : 1;
  }

 private:
  // (#k >= 1) - (#k <= 0) over [a, b].
  static std::int64_t net(std::int64_t a, std::int64_t b) {
    if (a > b) return 0;
    std::int64_t pos = b >= 1 ? b - std::max<std::int64_t>(a, 1) + 1 : 0;
    std::int64_t neg = a <= 0 ? std::min<std::int64_t>(b, 0) - a + 1 : 0;
    return pos - neg;
  }

  double c_;
  std::optional<int> exp_;
};

}  // namespace

WeightPtr constant_weights(double c) { return std::make_shared<ConstantWeights>(c); }
WeightPtr ratio_power_weights(double p) { return std::make_shared<RatioPowerWeights>(p); }
WeightPtr table_weights(std::vector<double> values) { return std::make_shared<TableWeights>(std::move(values)); }
WeightPtr bilateral_constant_weights(double c) { return std::make_shared<BilateralConstantWeights>(c); }

ShiftOperator::ShiftOperator(WeightPtr w, SpaceSpec s) : weights(std::move(w)), space(s) {
  if (!weights) throw Error(ErrorKind::InvalidArgument, "shift operator without weights");
  if (space.bilateral() && !weights->bilateral())
    throw Error(ErrorKind::SpaceMismatch, "bilateral space needs a bilateral weight sequence");
}

namespace {

void require_space(const ShiftOperator& T, const SpaceSpec& s) {
  if (!(T.space == s)) throw Error(ErrorKind::SpaceMismatch, T.space.to_text() + " vs " + s.to_text());
}

void require_nonzero(const WeightSequence& w, std::int64_t a, std::int64_t b) {
  if (auto k = w.zero_in(a, b)) throw Error(ErrorKind::ZeroWeight, "w_" + std::to_string(*k) + " = 0");
}

// value * (w_a ... w_b)^dir, exact for power-of-two products.
double scale_by_product(const WeightSequence& w, double value, std::int64_t a, std::int64_t b, int dir) {
  if (auto e = w.exact_log2_product(a, b)) {
    auto clamped = static_cast<int>(std::clamp<std::int64_t>(dir * *e, -5000, 5000));
    return w.sign_product(a, b) * std::ldexp(value, clamped);
  }
  return dir > 0 ? value * w.product(a, b) : value / w.product(a, b);
}

}  // namespace

SparseVec apply_backward(const ShiftOperator& T, const SparseVec& v, std::int64_t n) {
  require_space(T, v.space());
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  if (n == 0) return v;
  std::vector<SparseVec::Entry> out;
  for (const auto& [i, value] : v.entries()) {
    const std::int64_t m = i - n;
    if (m < 0 && !T.space.bilateral()) continue;
    out.emplace_back(m, scale_by_product(*T.weights, value, m + 1, i, +1));
  }
  return SparseVec(T.space, std::move(out));
}

SparseVec apply_right_inverse(const ShiftOperator& T, const SparseVec& v, std::int64_t n) {
  require_space(T, v.space());
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  if (n == 0) return v;
  std::vector<SparseVec::Entry> out;
  for (const auto& [m, value] : v.entries()) {
    require_nonzero(*T.weights, m + 1, m + n);
    out.emplace_back(m + n, scale_by_product(*T.weights, value, m + 1, m + n, -1));
  }
  return SparseVec(T.space, std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

// a + b for entries at the same index; nullopt when they cancel.
std::optional<LogSparseVec::Entry> combine(const LogSparseVec::Entry& a, const LogSparseVec::Entry& b) {
  const auto& big = a.log2_abs >= b.log2_abs ? a : b;
  const auto& small = a.log2_abs >= b.log2_abs ? b : a;
  const double r = std::exp2(small.log2_abs - big.log2_abs);
  if (big.sign == small.sign) return LogSparseVec::Entry{big.index, big.sign, big.log2_abs + std::log2(1.0 + r)};
  if (r < 1.0) return LogSparseVec::Entry{big.index, big.sign, big.log2_abs + std::log2(1.0 - r)};
  return std::nullopt;
}

}  // namespace

LogSparseVec::LogSparseVec(SpaceSpec space) : space_(space) {}

LogSparseVec LogSparseVec::from(const SparseVec& v) {
  LogSparseVec out(v.space());
  for (const auto& [i, value] : v.entries())
    out.entries_.push_back({i, value < 0 ? -1 : 1, std::log2(std::abs(value))});
  return out;
}

void LogSparseVec::set_entries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  entries_.clear();
  for (const auto& e : entries) {
    if (e.log2_abs == kNegInf) continue;
    if (!entries_.empty() && entries_.back().index == e.index) {
      auto sum = combine(entries_.back(), e);
      entries_.pop_back();
      if (sum) entries_.push_back(*sum);
    } else {
      entries_.push_back(e);
    }
  }
}

void LogSparseVec::add(const LogSparseVec& o) {
  if (!(space_ == o.space_)) throw Error(ErrorKind::SpaceMismatch, space_.to_text() + " vs " + o.space_.to_text());
  std::vector<Entry> out;
  out.reserve(entries_.size() + o.entries_.size());
  auto i = entries_.cbegin();
  auto j = o.entries_.cbegin();
  while (i != entries_.cend() || j != o.entries_.cend()) {
    if (j == o.entries_.cend() || (i != entries_.cend() && i->index < j->index)) {
      out.push_back(*i++);
    } else if (i == entries_.cend() || j->index < i->index) {
      out.push_back(*j++);
    } else {
      if (auto sum = combine(*i, *j)) out.push_back(*sum);
      ++i;
      ++j;
    }
  }
  entries_ = std::move(out);
}

namespace {

double log2_factor(const WeightSequence& w, std::int64_t a, std::int64_t b) {
  if (auto e = w.exact_log2_product(a, b)) return static_cast<double>(*e);
  return w.log2_product(a, b);
}

}  // namespace

LogSparseVec LogSparseVec::backward(const ShiftOperator& T, std::int64_t n) const {
  require_space(T, space_);
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  LogSparseVec out(space_);
  for (const auto& e : entries_) {
    const std::int64_t m = e.index - n;
    if (m < 0 && !space_.bilateral()) continue;
    if (n == 0) {
      out.entries_.push_back(e);
      continue;
    }
    const auto& w = *T.weights;
    out.entries_.push_back({m, e.sign * w.sign_product(m + 1, e.index), e.log2_abs + log2_factor(w, m + 1, e.index)});
  }
  return out;
}

LogSparseVec LogSparseVec::right_inverse(const ShiftOperator& T, std::int64_t n) const {
  require_space(T, space_);
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative power");
  LogSparseVec out(space_);
  for (const auto& e : entries_) {
    if (n == 0) {
      out.entries_.push_back(e);
      continue;
    }
    const auto& w = *T.weights;
    require_nonzero(w, e.index + 1, e.index + n);
    out.entries_.push_back(
        {e.index + n, e.sign * w.sign_product(e.index + 1, e.index + n), e.log2_abs - log2_factor(w, e.index + 1, e.index + n)});
  }
  return out;
}

double LogSparseVec::log2_norm() const {
  std::vector<double> logs;
  logs.reserve(entries_.size());
  for (const auto& e : entries_) logs.push_back(e.log2_abs);
  return hyperorbit::log2_norm(space_, logs);
}

std::pair<SparseVec, double> LogSparseVec::to_sparse(double min_log2) const {
  std::vector<SparseVec::Entry> kept;
  std::vector<double> dropped;
  for (const auto& e : entries_) {
    if (e.log2_abs >= min_log2) kept.emplace_back(e.index, e.sign * std::exp2(e.log2_abs));
    else dropped.push_back(e.log2_abs);
  }
  return {SparseVec(space_, std::move(kept)), hyperorbit::log2_norm(space_, dropped)};
}

LogSparseVec LogSparseVec::restricted(std::int64_t lo, std::int64_t hi) const {
  LogSparseVec out(space_);
  for (const auto& e : entries_)
    if (e.index >= lo && e.index <= hi) out.entries_.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------

std::string SeriesEvidence::label() const {
  std::ostringstream out;
  out << "evidence at horizon " << horizon << ": " << (converging ? "converging" : "diverging") << " (partial sum "
      << format_double(partial_sum) << ", last-half increment " << format_double(half_increment) << ")";
  return out.str();
}

SeriesEvidence frequent_hc_series_test(const WeightSequence& w, double p, std::int64_t horizon) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidArgument, "series exponent must be >= 1");
  if (horizon < 4) throw Error(ErrorKind::InvalidArgument, "series horizon must be at least 4");
  SeriesEvidence ev;
  ev.horizon = horizon;
  double log_w = 0.0;
  for (std::int64_t n = 1; n <= horizon; ++n) {
    log_w += w.log2_weight(n);
    const double term = std::exp2(-p * log_w);
    ev.partial_sum += term;
    if (n > horizon / 2) ev.half_increment += term;
    else if (n > horizon / 4) ev.quarter_increment += term;
  }
  const double negligible = 1e-12 * std::max(ev.partial_sum, 1e-300);
  ev.converging = ev.half_increment <= 0.75 * ev.quarter_increment ||
                  (ev.half_increment <= negligible && ev.quarter_increment <= negligible);
  return ev;
}

std::string MixingEvidence::label() const {
  std::ostringstream out;
  out << "evidence at horizon " << horizon << ": product "
      << (tends_to_infinity ? "tends to infinity" : "does not tend to infinity");
  if (!segment_minima.empty()) out << " (last dyadic minimum of log2 W_n: " << format_double(segment_minima.back()) << ")";
  return out.str();
}

MixingEvidence mixing_test(const WeightSequence& w, std::int64_t horizon, double threshold) {
  if (horizon < 2) throw Error(ErrorKind::InvalidArgument, "mixing horizon must be at least 2");
  MixingEvidence ev;
  ev.horizon = horizon;
  ev.threshold = threshold;
  double log_w = 0.0;
  std::int64_t segment_end = 2;
  double current = std::numeric_limits<double>::infinity();
  for (std::int64_t n = 1; n <= horizon; ++n) {
    if (n == segment_end) {
      ev.segment_minima.push_back(current);
      current = std::numeric_limits<double>::infinity();
      segment_end *= 2;
    }
    log_w += w.log2_weight(n);
    current = std::min(current, log_w);
  }
  if (current != std::numeric_limits<double>::infinity()) ev.segment_minima.push_back(current);
  bool increasing = true;
  for (std::size_t i = 1; i < ev.segment_minima.size(); ++i)
    increasing = increasing && ev.segment_minima[i] > ev.segment_minima[i - 1];
  ev.tends_to_infinity = increasing && ev.segment_minima.back() > threshold;
  return ev;
}

}  // namespace hyperorbit
