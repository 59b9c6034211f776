#pragma once

// A reiteratively hypercyclic weighted shift on c₀ that is not
// U-frequently hypercyclic, built from
//   S = ∪_{j,l>=1} ]l·10^j − j, l·10^j + j[,
//   w_k = 2 on S, w_k = (w_1 ... w_{k-1})^{-1} on (S+1)\S, 1 elsewhere,
// so that w_1 ... w_n = 2^{c(n)} with c(n) the length of the S-run ending
// at n. This module checks the finite combinatorial ingredients exactly.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperorbit/index_sets.hpp"
#include "hyperorbit/tower_index.hpp"
#include "hyperorbit/weighted_shifts.hpp"

namespace hyperorbit {

// ---------------------------------------------------------------------------
// The set S and the weights

bool s_contains(std::int64_t m);
bool s_contains(const BigInt& m);

/// Every (j, l) with m in ]l·10^j − j, l·10^j + j[.
struct SWitness {
  unsigned j;
  BigInt l;
};
std::vector<SWitness> s_witnesses(const BigInt& m);

IndexSet s_set();

/// c(n) = max{j >= 0 : ]n − j, n] ⊆ S}.
std::int64_t product_exponent(std::int64_t n);
BigInt product_exponent(const BigInt& n);

/// c(n) for every n in [lo, hi], computed in parallel.
std::vector<std::uint32_t> product_exponents(std::int64_t lo, std::int64_t hi);

/// The weight sequence above; log2 products are exact integers.
WeightPtr counterexample_weights();

// ---------------------------------------------------------------------------
// Block family

struct Block {
  int j = 0;        // block number; F_0 = {0}
  int k = 0;        // phi(j), the set A_k receiving the block; 0 for F_0
  TowerIndex j0;    // F_j = {10^{j0} + 10^{2k} l : 0 <= l < l0}
  std::int64_t l0 = 1;

  TowerIndex min() const;
  TowerIndex max() const;
  BigInt step() const;
};

struct BlockFamily {
  int k_max = 0;
  int reps = 0;
  std::vector<Block> blocks;  // blocks[0] is F_0
  std::string label;

  /// A_k restricted to materializable members; blocks at tower indices lie
  /// beyond every BigInt and contribute no members here.
  SetFamily as_set_family() const;
};

/// F_0 = {0}; phi cycles 1..k_max `reps` times; each F_{j+1} uses the
/// minimal l0 = j + 1 and then the minimal j0 satisfying conditions 1)-4).
BlockFamily build_block_family(int k_max, int reps);

struct ConditionCheck {
  int j = 0;          // block F_j checked
  int condition = 0;  // 1..4, or 5 for minimality of (j0, l0)
  bool ok = true;
  std::string detail;
};

/// Re-verifies conditions 1)-4) and minimality for every F_j, j >= 1.
std::vector<ConditionCheck> verify_block_conditions(const BlockFamily& family);

struct SymbolicGapCheck {
  bool ok = true;
  std::string violation;
  int pairs_checked = 0;
};

/// |j' − j| >= max{k, k'} for all distinct members of A_1..A_{k_max},
/// decided block by block without materializing tower indices.
SymbolicGapCheck check_gap_family_symbolic(const BlockFamily& family);

struct BanachBoundCheck {
  int k = 0;
  std::int64_t l0 = 0;
  std::int64_t s = 0;            // 10^{2k} l0
  std::int64_t count = 0;        // |F ∩ [min F, min F + s − 1]|
  std::int64_t shifted_count = 0;  // |F ∩ [min F + 1, min F + s]|
  Ratio ratio;                   // count / s
  Ratio shifted_ratio;             // shifted_count / s
  Ratio bound;                   // (1 − 1/l0) / 10^{2k}
  bool ok = false;
  int block = 0;
};

/// Window count over one block of A_k with 10^{2k} spacing and l0 members.
/// Throws InsufficientBlock when l0 < 2.
BanachBoundCheck banach_lower_bound_check(int k, std::int64_t l0);
/// Uses the block of A_k with the largest l0 in the family.
BanachBoundCheck banach_lower_bound_check(const BlockFamily& family, int k);

// ---------------------------------------------------------------------------
// Fact 1, D_j and E_j

struct Fact1Case {
  int k = 0;
  std::int64_t l = 0;
  std::int64_t m = 0;
  bool plus = true;
  bool in_s = false;
  unsigned max_witness_j = 0;  // largest j with m in ]l'10^j − j, l'10^j + j[
};

struct Fact1Report {
  bool ok = true;
  std::int64_t cases = 0;
  std::int64_t in_s = 0;
  std::vector<Fact1Case> violations;
};

/// For k <= k_max, l <= l_max, n with 10^{n−1} < k <= 10^n, and
/// m = l·10^k ± (1 + 10 + ... + 10^n): m is outside S or lies in an
/// interval of S with j0 > k.
Fact1Report verify_fact1(int k_max, std::int64_t l_max);

/// n in E_j = ∪_{k >= ceil(j/30)} ∪_{l>=1} ]l·10^k − 31k, l·10^k + 31k[.
bool e_contains(int j, std::int64_t n);
IndexSet e_set(int j);
/// D_j = {n >= 1 : w_1 ... w_n >= 2^j}.
IndexSet d_set(int j);

/// 8(9⌈j/30⌉ + 1)·10^{1 − ⌈j/30⌉}.
double dj_decay_bound(int j);

struct DjRow {
  std::int64_t n = 0;
  std::int64_t count = 0;  // |D_j ∩ [1, n]|
  Ratio ratio;
  double decay_bound = 0.0;
};

struct DjScan {
  int j = 0;
  std::int64_t horizon = 0;
  std::vector<DjRow> rows;        // n = 10^2, 10^3, ..., and the horizon
  bool bound_respected = true;    // ratio <= bound wherever bound < 1
  std::int64_t e_checked = 0;     // members of D_j tested against E_j
  std::vector<std::int64_t> e_violations;

  std::string to_csv() const;
};

DjScan dj_density_scan(int j, std::int64_t horizon);
/// One scan per j sharing a single pass over c(n).
std::vector<DjScan> dj_density_scan(std::span<const int> js, std::int64_t horizon);

}  // namespace hyperorbit
