#pragma once

// Constructive A-frequently hypercyclic vectors for weighted backward shifts:
// pick levels k_1 < k_2 < ... of a family (A_k) so that the four tail
// conditions of the criterion hold with tolerances 1/(l 2^l) and 1/2^l,
// then assemble x = Σ_l Σ_{n ∈ A_{k_l}} S^n y_l.
//
// For S the right inverse of B_w, B^n S^i y = S^{i-n} y when i >= n and
// B^{n-i} y when i < n, so every quantity depends only on the offset i - n.
// Offset tables of ‖S^d y‖ and ‖B^d y‖ turn each condition into offset sums.

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "hyperorbit/index_sets.hpp"
#include "hyperorbit/sequence_spaces.hpp"
#include "hyperorbit/weighted_shifts.hpp"

namespace hyperorbit {

/// Enumeration of all finitely supported dyadic vectors. Level L holds the
/// vectors supported in [0, L) with coordinates m / 2^{L-1}, |coordinate| <= L,
/// that are not already in level L-1. Coordinates are ordered by denominator,
/// then magnitude, positive first, with zero last; vectors of a level follow
/// mixed-radix order with coordinate 0 varying fastest. Item 1 is e_0.
class DenseSequence {
 public:
  explicit DenseSequence(SpaceSpec space = {});

  /// y_l for l >= 1.
  SparseVec item(std::int64_t l) const;
  /// Level containing y_l.
  int level_of(std::int64_t l) const;
  const SpaceSpec& space() const { return space_; }

 private:
  void extend_to(std::int64_t l) const;

  SpaceSpec space_;
  mutable std::mutex mutex_;
  mutable std::vector<SparseVec> cache_;
  mutable std::vector<int> levels_;
  mutable int level_ = 0;
  mutable std::vector<std::size_t> digits_;
  mutable std::vector<double> values_;  // coordinate values of the current level, in order
};

/// A_k = {j·g_k + o_k : j >= 1} with g_k = base·2^k and o_k = base·2^{k-1}.
/// Distinct members differ by at least `base`; design density 1/g_k.
SetFamily dyadic_block_family(int levels, std::int64_t base);
/// A_k = {base·p_k^j : j >= 1}, p_k the k-th prime.
SetFamily prime_power_family(int levels, std::int64_t base);

/// Smallest power of two >= max(8, levels, support_width).
std::int64_t default_family_base(int levels, std::int64_t support_width);

struct Certificate {
  int condition = 0;  // 1..4 for conditions i..iv
  int l = 0;
  int k = 0;
  int j = 0;          // second level involved (i, iii), else l
  double bound = 0.0;
  double achieved = 0.0;
  bool tail_verified = true;

  bool holds() const { return achieved <= bound; }
  std::string to_line() const;
};

struct PlanOptions {
  /// Members up to horizon + tail_margin enter the finite sums; the rest is
  /// bounded analytically from the weights' expansion rate.
  std::int64_t tail_margin = 2048;
  /// Check the family's gap property before selecting levels.
  bool check_gaps = true;
};

struct ConstructionPlan {
  SetFamily family;
  std::vector<int> selected;       // k_1 < k_2 < ...
  std::vector<SparseVec> targets;  // y_1, y_2, ...
  std::vector<Certificate> certificates;
  std::int64_t horizon = 0;
  std::int64_t tail_margin = 0;
  std::vector<std::string> notes;

  int depth() const { return static_cast<int>(selected.size()); }
  /// One certificate per line: condition, l, k, j, bound, achieved, tail flag.
  std::string to_text() const;
};

/// Greedy minimal k_l > k_{l-1} satisfying conditions i-iv at every level.
/// Throws FamilyExhausted naming the failing condition.
ConstructionPlan select_subsequence(const ShiftOperator& T, const SetFamily& family, const DenseSequence& Y, int depth,
                                    std::int64_t horizon, const PlanOptions& options = {});

struct HCVector {
  LogSparseVec x;  // exact, including entries below double range
  ConstructionPlan plan;
  std::int64_t truncation = 0;

  /// Entries representable as doubles, and log2 of the norm of the rest.
  std::pair<SparseVec, double> as_sparse() const { return x.to_sparse(-1000.0); }
};

/// x = Σ_l Σ_{n ∈ A_{k_l} ∩ [0, truncation]} S^n y_l.
HCVector assemble_vector(const ConstructionPlan& plan, const ShiftOperator& T, std::int64_t truncation);

/// B^n x in log domain.
LogSparseVec orbit_point(const HCVector& v, const ShiftOperator& T, std::int64_t n);

struct LevelBoundReport {
  int l = 0;
  int k = 0;
  std::int64_t checked = 0;
  double bound = 0.0;          // 1/2^{l-2} + 1/2^{l-2} + 1/2^l
  double worst = 0.0;          // largest ‖B^n x − y_l‖
  std::int64_t worst_n = -1;
  double worst_slack = 0.0;    // bound + truncation term − worst
  std::vector<std::pair<std::int64_t, double>> violations;
};

struct OrbitBoundReport {
  std::vector<LevelBoundReport> levels;
  double truncation_term = 0.0;  // bound on the omitted members beyond truncation
  bool truncation_verified = true;
  bool ok = true;

  std::string to_csv() const;
};

/// Checks ‖B^n x − y_l‖ <= 1/2^{l-2} + 1/2^{l-2} + 1/2^l + truncation term for
/// every level l and every n ∈ A_{k_l} ∩ [0, horizon].
OrbitBoundReport verify_orbit_bounds(const HCVector& v, const ShiftOperator& T, std::int64_t horizon);

}  // namespace hyperorbit
