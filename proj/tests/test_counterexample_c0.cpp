#include <gtest/gtest.h>

#include <set>

#include "hyperorbit/counterexample_c0.hpp"
#include "hyperorbit/errors.hpp"

using namespace hyperorbit;

namespace {

// m in ]l 10^j - j, l 10^j + j[ for some j, l >= 1, scanning every l near m / 10^j.
bool s_oracle(std::int64_t m) {
  std::int64_t p = 10;
  for (std::int64_t j = 1; j <= 18; ++j, p *= 10) {
    if (p - j >= m) break;
    for (std::int64_t l = std::max<std::int64_t>(1, m / p - 1); l <= m / p + 1; ++l)
      if (m > l * p - j && m < l * p + j) return true;
    if (p > std::numeric_limits<std::int64_t>::max() / 10) break;
  }
  return false;
}

// log2 w_k from the recursive definition: 1 on S, minus the running exponent
// right after a run of S, 0 elsewhere.
std::vector<std::int64_t> exponent_oracle(std::int64_t n_max) {
  std::vector<std::int64_t> prefix(static_cast<std::size_t>(n_max + 1), 0);
  for (std::int64_t k = 1; k <= n_max; ++k) {
    std::int64_t e = 0;
    if (s_oracle(k))
      e = 1;
    else if (s_oracle(k - 1))
      e = -prefix[static_cast<std::size_t>(k - 1)];
    prefix[static_cast<std::size_t>(k)] = prefix[static_cast<std::size_t>(k - 1)] + e;
  }
  return prefix;
}

}  // namespace

TEST(SSet, MatchesIntervalDefinition) {
  for (std::int64_t m = 0; m <= 200000; ++m) ASSERT_EQ(s_contains(m), s_oracle(m)) << m;
  EXPECT_TRUE(s_contains(BigInt(pow10(60)) + 59));
  EXPECT_FALSE(s_contains(BigInt(pow10(60)) + 5 * pow10(29) + 5 * pow10(14) + 55));
  const auto w = s_witnesses(BigInt(1000002));
  ASSERT_FALSE(w.empty());
}

TEST(SSet, WorkedMembers) {
  EXPECT_TRUE(s_contains(std::int64_t{10}));
  EXPECT_FALSE(s_contains(std::int64_t{11}));
  EXPECT_TRUE(s_contains(std::int64_t{99}));
  // Count on [1, 120] from the intervals themselves: ]9,11[, ]19,21[, ..., ]109,111[
  // for j = 1 and ]98,102[ for j = 2; j = 3 starts at 997.
  std::set<std::int64_t> members;
  for (std::int64_t j = 1, p = 10; j <= 2; ++j, p *= 10)
    for (std::int64_t l = 1; l * p - j < 120; ++l)
      for (std::int64_t m = l * p - j + 1; m < l * p + j; ++m)
        if (m >= 1 && m <= 120) members.insert(m);
  EXPECT_EQ(s_set().count(1, 120), BigInt(static_cast<std::int64_t>(members.size())));
  EXPECT_EQ(members.size(), 14u);
}

TEST(Weights, WorkedExponents) {
  EXPECT_EQ(product_exponent(10), 1);
  EXPECT_EQ(product_exponent(11), 0);
  EXPECT_EQ(product_exponent(101), 3);
  const ShiftOperator T(counterexample_weights(), SpaceSpec::c0());
  EXPECT_EQ(apply_backward(T, SparseVec::basis(SpaceSpec::c0(), 101), 101), SparseVec(SpaceSpec::c0(), {{0, 8.0}}));
  EXPECT_FALSE(mixing_test(*T.weights, 100000).tends_to_infinity);
}

TEST(Weights, ProductExponentMatchesRecursion) {
  const auto want = exponent_oracle(100000);
  const auto got = product_exponents(1, 100000);
  for (std::int64_t n = 1; n <= 100000; ++n) {
    ASSERT_EQ(static_cast<std::int64_t>(got[static_cast<std::size_t>(n - 1)]), want[static_cast<std::size_t>(n)]) << n;
    ASSERT_EQ(product_exponent(n), want[static_cast<std::size_t>(n)]);
    ASSERT_EQ(want[static_cast<std::size_t>(n)] == 0, !s_contains(n)) << n;
  }
  const auto w = counterexample_weights();
  EXPECT_EQ(*w->exact_log2_product(1, 99999), want[99999]);
  EXPECT_EQ(w->weight(9), 1.0);
  EXPECT_EQ(w->weight(10), 2.0);
  EXPECT_EQ(w->weight(11), 0.5);  // 11 follows the run {10}
}

TEST(Fact1, FirstCasesLieOutsideS) {
  for (std::int64_t m : {9, 11, 89, 111}) EXPECT_FALSE(s_contains(m)) << m;
  EXPECT_TRUE(verify_fact1(2, 1).ok);
}

TEST(Fact1, HoldsForSmallRange) {
  const auto r = verify_fact1(4, 50);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.cases, 4 * 50 * 2);
  EXPECT_TRUE(r.violations.empty());
}

TEST(BlockFamily, ConditionsAndGapsHold) {
  const auto f = build_block_family(2, 2);
  ASSERT_EQ(f.blocks.size(), 5u);
  EXPECT_EQ(f.blocks[1].j0, TowerIndex(102));
  EXPECT_EQ(f.blocks[1].l0, 1);
  for (const auto& c : verify_block_conditions(f)) EXPECT_TRUE(c.ok) << c.j << ":" << c.condition << " " << c.detail;
  EXPECT_TRUE(check_gap_family_symbolic(f).ok);
  for (std::size_t j = 2; j < f.blocks.size(); ++j) {
    EXPECT_LT(f.blocks[j - 1].max(), f.blocks[j].min());
    EXPECT_EQ(f.blocks[j].l0, static_cast<std::int64_t>(j));
  }
}

TEST(BlockFamily, BanachWindowCounts) {
  const auto c = banach_lower_bound_check(1, 5);
  EXPECT_EQ(c.s, 500);
  EXPECT_EQ(c.count, 5);
  EXPECT_EQ(c.shifted_count, 4);
  EXPECT_EQ(c.bound, Ratio(4, 500));
  EXPECT_TRUE(c.ok);
  EXPECT_THROW(banach_lower_bound_check(1, 1), Error);
}

TEST(Dj, FirstSetIsSAndDeepSetsAreEmpty) {
  const auto scan = dj_density_scan(1, 10000);
  std::int64_t count = 0;
  for (std::int64_t m = 1; m <= 10000; ++m) count += s_oracle(m) ? 1 : 0;
  ASSERT_FALSE(scan.rows.empty());
  EXPECT_EQ(scan.rows.back().n, 10000);
  EXPECT_EQ(scan.rows.back().count, count);
  EXPECT_EQ(scan.rows.back().ratio, Ratio(count, 10000));
  // The longest S-run below 10^4 has length 2*3 - 1 = 5.
  EXPECT_EQ(dj_density_scan(6, 10000).rows.back().count, 0);
}

TEST(Dj, NestedAndInsideEj) {
  const std::vector<int> js{1, 2, 3};
  const auto scans = dj_density_scan(js, 200000);
  for (const auto& s : scans) {
    EXPECT_TRUE(s.bound_respected);
    EXPECT_TRUE(s.e_violations.empty());
  }
  for (std::size_t i = 1; i < scans.size(); ++i)
    for (std::size_t r = 0; r < scans[i].rows.size(); ++r) EXPECT_LE(scans[i].rows[r].count, scans[i - 1].rows[r].count);
  const auto d2 = d_set(2), d3 = d_set(3);
  for (std::int64_t n = 1; n <= 50000; ++n)
    if (d3.contains(n)) ASSERT_TRUE(d2.contains(n)) << n;
  EXPECT_NEAR(dj_decay_bound(30), 80.0, 1e-12);
}
