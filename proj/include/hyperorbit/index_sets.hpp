#pragma once

// Subsets of the non-negative integers with exact membership, ordered
// enumeration and window counts, plus finite-horizon density analysis.
//
// Indices are arbitrary precision. Structured kinds (periodic, interval
// unions, block families) answer membership and counts arithmetically, so a
// query near 10^100 never scans from zero. Density estimation works on an
// int64 horizon through a membership bitmap and prefix counts.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hyperorbit/bigint.hpp"

namespace hyperorbit {

enum class SetKind { ExplicitList, Periodic, IntervalUnion, BlockFamily, Derived };

const char* to_string(SetKind kind);

class IndexSetImpl {
 public:
  virtual ~IndexSetImpl() = default;

  virtual SetKind kind() const = 0;
  virtual bool contains(const BigInt& n) const = 0;
  virtual bool contains_small(std::int64_t n) const { return contains(BigInt(n)); }

  /// Smallest member in [from, limit]. The default scans with contains().
  virtual std::optional<BigInt> next_member(const BigInt& from, const BigInt& limit) const;

  /// |A ∩ [a, b]|. The default walks next_member().
  virtual BigInt count(const BigInt& a, const BigInt& b) const;

  /// Structural positions in [lo, hi] (block starts and ends) used to anchor
  /// Banach-density windows.
  virtual std::vector<std::int64_t> anchors(std::int64_t lo, std::int64_t hi) const;

  /// Serialized description, starting with the "kind" line.
  virtual std::string to_text() const = 0;
};

/// Immutable handle to a set; cheap to copy, safe to share across threads.
class IndexSet {
 public:
  IndexSet();
  explicit IndexSet(std::shared_ptr<const IndexSetImpl> impl);

  static IndexSet explicit_list(std::vector<BigInt> members);
  static IndexSet explicit_list(std::span<const std::int64_t> members);
  /// {n >= start : n mod period in residues}.
  static IndexSet periodic(std::int64_t period, std::vector<std::int64_t> residues, const BigInt& start = 0);
  /// Union of closed intervals [lo, hi]; overlapping input is merged.
  static IndexSet intervals(std::vector<std::pair<BigInt, BigInt>> closed);
  /// ∪_{n>=1} [n!, n!+n].
  static IndexSet factorial_blocks();
  static IndexSet squares();
  /// {scale * base^j : j >= min_exponent}.
  static IndexSet powers(std::int64_t base, const BigInt& scale = 1, unsigned min_exponent = 0);
  static IndexSet all();
  static IndexSet empty();
  /// Set given only by a predicate; enumeration scans.
  static IndexSet derived(std::string text, std::function<bool(const BigInt&)> contains,
                          std::function<bool(std::int64_t)> contains_small = {});

  SetKind kind() const { return impl_->kind(); }
  bool contains(const BigInt& n) const;
  bool contains(std::int64_t n) const;

  /// Members of [a, b] in increasing order.
  std::vector<BigInt> enumerate(const BigInt& a, const BigInt& b) const;
  std::vector<std::int64_t> members(std::int64_t a, std::int64_t b) const;
  BigInt count(const BigInt& a, const BigInt& b) const;

  /// bitmap[i] = contains(lo + i), computed in parallel.
  std::vector<std::uint8_t> bitmap(std::int64_t lo, std::int64_t hi) const;
  std::vector<std::int64_t> anchors(std::int64_t lo, std::int64_t hi) const { return impl_->anchors(lo, hi); }

  std::string to_text() const { return impl_->to_text(); }
  const IndexSetImpl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const IndexSetImpl> impl_;
};

/// |A ∩ [a, b]|; zero when a > b.
BigInt count_window(const IndexSet& set, const BigInt& a, const BigInt& b);

/// Indexed collection k -> A_k, k = 1..size().
struct SetFamily {
  std::vector<IndexSet> sets;
  std::string label;

  int size() const { return static_cast<int>(sets.size()); }
  const IndexSet& at(int k) const { return sets.at(static_cast<std::size_t>(k - 1)); }
};

// ---------------------------------------------------------------------------
// Densities

struct DensityOptions {
  /// Smallest prefix length used for the lower/upper density. Negative means
  /// horizon / 10; values above the horizon use the last full prefix only.
  std::int64_t burn_in = -1;
  /// Uniform sample of window starts with stride max(1, s / stride_divisor).
  std::int64_t stride_divisor = 4;
  /// Scan every window start instead of anchors plus the uniform sample.
  bool exhaustive = false;
  std::vector<std::int64_t> extra_anchors;
};

struct WindowEstimate {
  std::int64_t s = 0;
  Ratio upper;
  Ratio lower;
  std::int64_t upper_position = 0;
  std::int64_t lower_position = 0;
  std::int64_t positions_scanned = 0;
};

/// Finite-horizon estimates over [0, horizon]. Banach values are reported at
/// the largest window; prefix lengths are multiples of that window, so every
/// prefix is a union of scanned windows and the chain
///   lower_banach <= lower_density <= upper_density <= upper_banach
/// holds exactly.
struct DensityReport {
  Ratio lower_banach;
  Ratio lower_density;
  Ratio upper_density;
  Ratio upper_banach;
  std::int64_t horizon = 0;
  std::vector<std::int64_t> window_grid;
  std::int64_t window = 0;
  std::int64_t upper_banach_position = 0;
  std::int64_t lower_banach_position = 0;
  std::int64_t lower_density_length = 0;
  std::int64_t upper_density_length = 0;
  std::int64_t prefix_from = 0;
  std::vector<WindowEstimate> per_window;
  std::vector<std::int64_t> anchors;

  bool chain_holds() const;
};

DensityReport estimate_densities(const IndexSet& set, std::int64_t horizon, std::vector<std::int64_t> window_grid,
                                 const DensityOptions& options = {});

// ---------------------------------------------------------------------------
// Gaps, differences, families

/// Finite-horizon syndeticity evidence. A finite horizon cannot prove bounded
/// gaps; the verdict says whether gaps stop growing inside [0, horizon].
struct SyndeticityEvidence {
  bool syndetic = false;
  std::int64_t gap_bound = 0;      // largest gap seen, counting the lead-in and tail
  std::int64_t gap_location = 0;   // start of that gap
  std::int64_t first_half_gap = 0;
  std::int64_t second_half_gap = 0;
  std::int64_t horizon = 0;
  std::int64_t members = 0;

  std::string label() const;
};

/// Verdict is true when gaps starting in the second half of [0, horizon]
/// (including the open tail) are no larger than those in the first half,
/// and, if max_gap is given, gap_bound <= *max_gap.
SyndeticityEvidence is_syndetic(const IndexSet& set, std::int64_t horizon,
                                std::optional<std::int64_t> max_gap = std::nullopt);
SyndeticityEvidence is_syndetic(std::span<const std::int64_t> sorted_members, std::int64_t horizon,
                                std::optional<std::int64_t> max_gap = std::nullopt);

/// {a - a' : a, a' in A ∩ [0, horizon], a >= a'} as an explicit list.
IndexSet difference_set(const IndexSet& set, std::int64_t horizon);

struct GapViolation {
  BigInt first;
  BigInt second;
  int first_level = 0;
  int second_level = 0;
};

struct GapCheck {
  bool ok = true;
  std::optional<GapViolation> violation;
  std::int64_t elements = 0;
};

/// Checks |j' - j| >= max{k, k'} for all distinct j in A_k, j' in A_k'
/// (k, k' <= k_max) inside [0, horizon]; a shared element of two different
/// sets also counts as a violation. Reports the first violation in index order.
GapCheck check_gap_family(const SetFamily& family, int k_max, const BigInt& horizon);

// ---------------------------------------------------------------------------
// Prescribed densities

struct PrescribedDensitySet {
  IndexSet set;
  std::int64_t horizon = 0;      // advertised horizon for the estimator
  std::int64_t burn_in = 0;      // prefix lengths the estimator should consider
  std::vector<std::int64_t> window_grid;
};

/// Builds a set whose (lower Banach, lower, upper, upper Banach) densities are
/// (r1, r2, r3, r4). See prescribed_density.cpp for the construction.
PrescribedDensitySet make_prescribed_density_set(const Ratio& r1, const Ratio& r2, const Ratio& r3, const Ratio& r4);

}  // namespace hyperorbit
