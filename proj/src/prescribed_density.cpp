// Sets with prescribed lower Banach, lower, upper and upper Banach densities
// (r1, r2, r3, r4).
//
// The set is a sequence of phases [start, end) with a constant local rate.
// Inside a phase of rate rho, n is a member iff floor(K(n+1)) > floor(K(n)),
// where K(n) is the accumulated rate mass up to n; every window of length s
// inside the phase then holds floor or ceil of rho*s members, and the prefix
// count up to n is exactly floor(K(n)).
//
// Layout: a seed phase of rate r2, then cycles of
//   high phase, rate r4, until the prefix density reaches r3,
//   low phase,  rate r1, until the prefix density falls back to r2.
// Each phase lasts at least ceil(sqrt(t)) indices (t = its start), so windows
// of any fixed length eventually fit inside a single phase and the Banach
// densities are r1 and r4. When r3 = r4 (or r1 = r2) the target is only
// approached, so that phase instead runs for 4*c*t indices in cycle c.
//
// Special cases: all four equal gives the periodic pattern of rate r, and
// (0, 0, 0, 1) gives the factorial blocks.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/index_sets.hpp"

namespace hyperorbit {

namespace {

using Wide = __int128;

struct Phase {
  std::int64_t start;
  std::int64_t step;  // rate * Q
  Wide mass;          // K(start) * Q
};

Wide floor_div(Wide a, Wide b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

class PhaseSet final : public IndexSetImpl {
 public:
  PhaseSet(std::vector<Phase> phases, std::int64_t q, std::int64_t end, std::string text)
      : phases_(std::move(phases)), q_(q), end_(end), text_(std::move(text)) {}

  SetKind kind() const override { return SetKind::BlockFamily; }

  bool contains(const BigInt& n) const override {
    if (n < 0) return false;
    if (!fits_int64(n) || to_int64(n) >= end_) out_of_range(n);
    return contains_small(to_int64(n));
  }

  bool contains_small(std::int64_t n) const override {
    if (n < 0) return false;
    if (n >= end_) out_of_range(n);
    return floor_div(mass(n + 1), q_) > floor_div(mass(n), q_);
  }

  std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const override {
    std::int64_t n = from < 0 ? 0 : (fits_int64(from) ? to_int64(from) : end_);
    std::int64_t lim = fits_int64(limit) ? std::min(to_int64(limit), end_ - 1) : end_ - 1;
    if (limit >= end_) out_of_range(limit);
    while (n <= lim) {
      std::size_t i = phase_of(n);
      const Phase& ph = phases_[i];
      std::int64_t phase_end = i + 1 < phases_.size() ? phases_[i + 1].start : end_;
      if (ph.step > 0) {
        // Smallest m > n with K(m) crossing the next integer; the member is m - 1.
        Wide target = (floor_div(mass(n), q_) + 1) * q_;
        Wide m = ph.start + (target - ph.mass + ph.step - 1) / ph.step;
        if (m <= phase_end) {
          auto member = static_cast<std::int64_t>(m - 1);
          if (member > lim) return std::nullopt;
          return BigInt(member);
        }
      }
      n = phase_end;
    }
    return std::nullopt;
  }

  BigInt count(const BigInt& a, const BigInt& b) const override {
    if (a > b) return 0;
    if (b >= end_) out_of_range(b);
    std::int64_t lo = std::max<std::int64_t>(0, to_int64(a)), hi = to_int64(b);
    return static_cast<std::int64_t>(floor_div(mass(hi + 1), q_) - floor_div(mass(lo), q_));
  }

  std::vector<std::int64_t> anchors(std::int64_t lo, std::int64_t hi) const override {
    std::vector<std::int64_t> out;
    for (std::size_t i = 1; i < phases_.size(); ++i) {
      std::int64_t s = phases_[i].start;
      if (s > hi + 1) break;
      if (s - 1 >= lo && s - 1 <= hi) out.push_back(s - 1);
      if (s >= lo && s <= hi) out.push_back(s);
    }
    return out;
  }

  std::string to_text() const override { return text_; }

  const std::vector<Phase>& phases() const { return phases_; }

 private:
  [[noreturn]] void out_of_range(const BigInt& n) const {
    std::ostringstream msg;
    msg << "index " << n << " lies beyond the generated range [0, " << end_ << ")";
    throw Error(ErrorKind::OutOfRange, msg.str());
  }

  std::size_t phase_of(std::int64_t n) const {
    auto it = std::upper_bound(phases_.begin(), phases_.end(), n, [](std::int64_t x, const Phase& p) { return x < p.start; });
    return static_cast<std::size_t>(std::distance(phases_.begin(), it) - 1);
  }

  Wide mass(std::int64_t n) const {
    if (n >= end_) {
      const Phase& last = phases_.back();
      return last.mass + static_cast<Wide>(last.step) * (end_ - last.start);
    }
    const Phase& ph = phases_[phase_of(n)];
    return ph.mass + static_cast<Wide>(ph.step) * (n - ph.start);
  }

  std::vector<Phase> phases_;
  std::int64_t q_;
  std::int64_t end_;
  std::string text_;
};

std::int64_t ceil_sqrt(std::int64_t t) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(t)));
  while (r * r < t) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= t) --r;
  return std::max<std::int64_t>(1, r);
}

// Smallest L >= 0 after which the prefix density, starting from mass/t at t,
// has reached target (rising) or dropped to it (falling). All rates are scaled by Q.
std::int64_t phase_length(Wide mass, std::int64_t t, std::int64_t step, std::int64_t target, bool rising) {
  Wide need = rising ? static_cast<Wide>(target) * t - mass : mass - static_cast<Wide>(target) * t;
  Wide slope = rising ? step - target : target - step;
  if (need <= 0) return 0;
  return static_cast<std::int64_t>((need + slope - 1) / slope);
}

}  // namespace

PrescribedDensitySet make_prescribed_density_set(const Ratio& r1, const Ratio& r2, const Ratio& r3, const Ratio& r4) {
  const Ratio zero(0), one(1);
  if (!(zero <= r1 && r1 <= r2 && r2 <= r3 && r3 <= r4 && r4 <= one)) {
    std::ostringstream msg;
    msg << "densities must satisfy 0 <= r1 <= r2 <= r3 <= r4 <= 1, got " << to_string(r1) << ", " << to_string(r2)
        << ", " << to_string(r3) << ", " << to_string(r4);
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }

  PrescribedDensitySet out;
  out.window_grid = {10, 100, 1000};

  if (r1 == r4) {
    const std::int64_t a = r1.numerator(), b = r1.denominator();
    std::vector<std::int64_t> residues;
    for (std::int64_t n = 0; n < b; ++n)
      if ((a * (n + 1)) / b > (a * n) / b) residues.push_back(n);
    out.set = IndexSet::periodic(b, residues);
    out.horizon = 1'000'000;
    out.burn_in = out.horizon / 10;
    return out;
  }
  if (r1 == zero && r2 == zero && r3 == zero && r4 == one) {
    out.set = IndexSet::factorial_blocks();
    out.horizon = 3'628'800;  // 10!
    out.burn_in = out.horizon / 10;
    out.window_grid = {9};
    return out;
  }

  std::int64_t q = 1;
  for (const Ratio* r : {&r1, &r2, &r3, &r4}) q = std::lcm(q, r->denominator());
  auto scaled = [q](const Ratio& r) { return r.numerator() * (q / r.denominator()); };
  const std::int64_t s1 = scaled(r1), s2 = scaled(r2), s3 = scaled(r3), s4 = scaled(r4);
  const std::int64_t limit = std::min<std::int64_t>(std::int64_t{1} << 50, (std::int64_t{1} << 62) / q);

  std::vector<Phase> phases;
  Wide mass = 0;
  std::int64_t t = 0;
  auto push = [&](std::int64_t step, std::int64_t length) {
    phases.push_back({t, step, mass});
    mass += static_cast<Wide>(step) * length;
    t += length;
  };
  push(s2, 64);

  // Phases of length ceil(sqrt(t)) alone need about sqrt(limit) cycles; the
  // phase cap still leaves the generated range beyond 10^9.
  constexpr std::size_t kMaxPhases = std::size_t{1} << 16;
  std::int64_t advertised = -1, trough = 0;
  for (int cycle = 1; t < limit && phases.size() < kMaxPhases; ++cycle) {
    const std::int64_t start_high = t;
    std::int64_t high = s3 == s4 ? 4 * cycle * t : phase_length(mass, t, s4, s3, true);
    high = std::max(high, ceil_sqrt(t));
    if (t + high >= limit) break;
    push(s4, high);
    if (advertised < 0 && t >= 1'000'000) {
      advertised = t - 1;
      trough = start_high;
    }
    std::int64_t low = s1 == s2 ? 4 * cycle * t : phase_length(mass, t, s1, s2, false);
    low = std::max(low, ceil_sqrt(t));
    if (t + low >= limit) break;
    push(s1, low);
  }
  if (advertised < 0) throw Error(ErrorKind::OutOfRange, "prescribed-density construction did not reach 10^6");

  std::ostringstream text;
  text << "kind block-family\nname prescribed\ndensities " << to_string(r1) << ' ' << to_string(r2) << ' '
       << to_string(r3) << ' ' << to_string(r4) << '\n';
  out.set = IndexSet(std::make_shared<PhaseSet>(std::move(phases), q, t, text.str()));
  out.horizon = advertised;
  out.burn_in = trough;
  return out;
}

}  // namespace hyperorbit
