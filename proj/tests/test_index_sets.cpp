#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/index_sets.hpp"

using namespace hyperorbit;

namespace {

std::vector<std::int64_t> brute(const std::function<bool(std::int64_t)>& in, std::int64_t a, std::int64_t b) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = a; n <= b; ++n)
    if (in(n)) out.push_back(n);
  return out;
}

// Densities by definition: every window start, every prefix length.
struct Exact {
  Ratio ub, lb;
};
Exact banach_exact(const std::vector<std::uint8_t>& bits, std::int64_t s) {
  std::int64_t mx = 0, mn = s;
  for (std::size_t p = 0; p + static_cast<std::size_t>(s) <= bits.size(); ++p) {
    std::int64_t c = 0;
    for (std::int64_t i = 0; i < s; ++i) c += bits[p + static_cast<std::size_t>(i)];
    mx = std::max(mx, c);
    mn = std::min(mn, c);
  }
  return {Ratio(mx, s), Ratio(mn, s)};
}

}  // namespace

TEST(IndexSets, PeriodicCountsMatchEnumeration) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::int64_t q = 1 + static_cast<std::int64_t>(rng() % 12);
    std::vector<std::int64_t> res;
    for (std::int64_t r = 0; r < q; ++r)
      if (rng() % 2) res.push_back(r);
    const std::int64_t start = static_cast<std::int64_t>(rng() % 30);
    const IndexSet a = IndexSet::periodic(q, res, start);
    auto in = [&](std::int64_t n) {
      return n >= start && std::find(res.begin(), res.end(), n % q) != res.end();
    };
    const auto want = brute(in, 0, 500);
    EXPECT_EQ(a.members(0, 500), want);
    const std::int64_t lo = static_cast<std::int64_t>(rng() % 200), hi = lo + static_cast<std::int64_t>(rng() % 300);
    EXPECT_EQ(a.count(lo, hi), BigInt(brute(in, lo, hi).size()));
  }
}

TEST(IndexSets, PeriodicAnswersNearGoogol) {
  const IndexSet a = IndexSet::periodic(7, {3});
  const BigInt g = pow10(100);
  // 10^100 mod 7 = 4, so the next member is 10^100 + 6.
  EXPECT_FALSE(a.contains(g));
  EXPECT_TRUE(a.contains(g + 6));
  EXPECT_EQ(a.count(g, g + 699), BigInt(100));
  EXPECT_EQ(*a.impl().next_member(g, g + 100), g + 6);
}

TEST(IndexSets, FactorialBlocksMatchDefinition) {
  std::set<std::int64_t> want;
  std::int64_t f = 1;
  for (std::int64_t n = 1; f <= 100000; ++n) {
    f *= n;
    for (std::int64_t i = 0; i <= n && f + i <= 100000; ++i) want.insert(f + i);
  }
  const auto got = IndexSet::factorial_blocks().members(0, 100000);
  EXPECT_EQ(got, std::vector<std::int64_t>(want.begin(), want.end()));
  // 30! + 30 is a member, 30! + 31 is not.
  BigInt f30 = 1;
  for (int i = 2; i <= 30; ++i) f30 *= i;
  EXPECT_TRUE(IndexSet::factorial_blocks().contains(f30 + 30));
  EXPECT_FALSE(IndexSet::factorial_blocks().contains(f30 + 31));
}

TEST(IndexSets, SquaresPowersIntervalsExplicit) {
  EXPECT_EQ(IndexSet::squares().members(0, 50), (std::vector<std::int64_t>{0, 1, 4, 9, 16, 25, 36, 49}));
  EXPECT_EQ(IndexSet::powers(2).members(0, 40), (std::vector<std::int64_t>{1, 2, 4, 8, 16, 32}));
  EXPECT_EQ(IndexSet::powers(3, 5, 1).members(0, 200), (std::vector<std::int64_t>{15, 45, 135}));
  const IndexSet iv = IndexSet::intervals({{5, 7}, {6, 9}, {20, 20}});
  EXPECT_EQ(iv.members(0, 30), (std::vector<std::int64_t>{5, 6, 7, 8, 9, 20}));
  EXPECT_EQ(iv.count(0, 100), BigInt(6));
  const std::vector<std::int64_t> raw{9, 1, 4, 4};
  EXPECT_EQ(IndexSet::explicit_list(raw).members(0, 10), (std::vector<std::int64_t>{1, 4, 9}));
  EXPECT_TRUE(IndexSet::empty().members(0, 10).empty());
}

TEST(Densities, EvensAreOneHalfEverywhere) {
  const auto d = estimate_densities(IndexSet::periodic(2, {0}), 100000, {10, 100, 1000});
  EXPECT_EQ(d.lower_banach, Ratio(1, 2));
  EXPECT_EQ(d.lower_density, Ratio(1, 2));
  EXPECT_EQ(d.upper_density, Ratio(1, 2));
  EXPECT_EQ(d.upper_banach, Ratio(1, 2));
}

TEST(Densities, ChainHoldsAndBanachMatchesExhaustiveDefinition) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<BigInt, BigInt>> ivs;
    std::int64_t x = 0;
    while (x < 5000) {
      const std::int64_t len = 1 + static_cast<std::int64_t>(rng() % 40), gap = 1 + static_cast<std::int64_t>(rng() % 90);
      ivs.emplace_back(x, x + len - 1);
      x += len + gap;
    }
    const IndexSet a = IndexSet::intervals(ivs);
    DensityOptions exhaustive;
    exhaustive.exhaustive = true;
    const auto d = estimate_densities(a, 4999, {8, 50}, exhaustive);
    EXPECT_TRUE(d.chain_holds());
    const auto e = banach_exact(a.bitmap(0, 4999), 50);
    EXPECT_EQ(d.upper_banach, e.ub);
    EXPECT_EQ(d.lower_banach, e.lb);
    const auto sampled = estimate_densities(a, 4999, {8, 50});
    EXPECT_TRUE(sampled.chain_holds());
    EXPECT_LE(sampled.upper_banach, e.ub);
    EXPECT_GE(sampled.lower_banach, e.lb);
  }
}

TEST(Densities, FactorialBlocksAreThickButSparse) {
  const auto d = estimate_densities(IndexSet::factorial_blocks(), 100000, {5});
  EXPECT_EQ(d.upper_banach, Ratio(1));
  EXPECT_EQ(d.lower_banach, Ratio(0));
  EXPECT_LT(to_double(d.upper_density), 0.01);
}

TEST(Densities, FactorialBlocksAtTenFactorial) {
  // [9!, 9! + 9] holds ten consecutive members, so some window of length 9 is full.
  const auto p = make_prescribed_density_set(Ratio(0), Ratio(0), Ratio(0), Ratio(1));
  EXPECT_EQ(p.horizon, 3628800);
  EXPECT_EQ(p.window_grid, std::vector<std::int64_t>{9});
  const auto d = estimate_densities(p.set, p.horizon, p.window_grid);
  EXPECT_EQ(d.upper_banach, Ratio(1));
  EXPECT_LT(to_double(d.upper_density), 0.01);
  EXPECT_EQ(p.set.members(362880, 362892), brute([](std::int64_t n) { return n >= 362880 && n <= 362889; }, 362880, 362892));
}

TEST(Densities, PowersOfTwoHaveNoUpperDensity) {
  DensityOptions o;
  o.burn_in = 1000000;
  const auto d = estimate_densities(IndexSet::powers(2), 1000000, {10, 100, 1000}, o);
  // 2^0 .. 2^19 lie below 10^6.
  EXPECT_EQ(IndexSet::powers(2).count(0, 1000000), BigInt(20));
  EXPECT_LE(d.upper_density, Ratio(20, 1000000));
}

TEST(Densities, RejectsWindowLongerThanHorizon) {
  EXPECT_THROW(estimate_densities(IndexSet::all(), 10, {100}), Error);
}

TEST(Syndetic, GapsOfSimpleSets) {
  const auto ev = is_syndetic(IndexSet::periodic(5, {2}), 10000);
  EXPECT_TRUE(ev.syndetic);
  EXPECT_EQ(ev.gap_bound, 5);
  EXPECT_EQ(is_syndetic(IndexSet::periodic(2, {0}), 10000).gap_bound, 2);
  const auto sq = is_syndetic(IndexSet::squares(), 10000);
  EXPECT_FALSE(sq.syndetic);
  EXPECT_GT(sq.second_half_gap, sq.first_half_gap);
  EXPECT_FALSE(is_syndetic(IndexSet::periodic(5, {2}), 10000, 4).syndetic);
  try {
    is_syndetic(IndexSet::empty(), 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoData);
  }
}

TEST(Syndetic, DifferenceSetOfSmallList) {
  const std::vector<std::int64_t> m{0, 3, 7};
  EXPECT_EQ(difference_set(IndexSet::explicit_list(m), 100).members(0, 100), (std::vector<std::int64_t>{0, 3, 4, 7}));
}

TEST(GapFamily, MatchesPairwiseOracle) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    SetFamily f;
    std::vector<std::vector<std::int64_t>> raw(3);
    for (int k = 0; k < 3; ++k) {
      std::int64_t x = static_cast<std::int64_t>(rng() % 10);
      while (x < 300) {
        raw[static_cast<std::size_t>(k)].push_back(x);
        x += 1 + static_cast<std::int64_t>(rng() % 60);
      }
      f.sets.push_back(IndexSet::explicit_list(raw[static_cast<std::size_t>(k)]));
    }
    bool ok = true;
    for (int k = 0; k < 3; ++k)
      for (int k2 = 0; k2 < 3; ++k2)
        for (auto a : raw[static_cast<std::size_t>(k)])
          for (auto b : raw[static_cast<std::size_t>(k2)]) {
            if (k == k2 && a == b) continue;
            if (std::abs(a - b) < std::max(k, k2) + 1) ok = false;
          }
    EXPECT_EQ(check_gap_family(f, 3, 400).ok, ok);
  }
}

TEST(GapFamily, HundredPowerMultiples) {
  // A_k = {m 10^{2k} : m >= 1}: every multiple of 10^4 lies in both sets.
  SetFamily f;
  f.sets = {IndexSet::periodic(100, {0}, 100), IndexSet::periodic(10000, {0}, 10000)};
  const auto g = check_gap_family(f, 2, 100000);
  ASSERT_FALSE(g.ok);
  EXPECT_EQ(g.violation->first, BigInt(10000));
  SetFamily one;
  one.sets = {IndexSet::all()};
  EXPECT_TRUE(check_gap_family(one, 1, 1000).ok);
}

TEST(GapFamily, SharedElementIsAViolation) {
  SetFamily f;
  f.sets = {IndexSet::periodic(10, {0}), IndexSet::periodic(20, {0})};
  const auto g = check_gap_family(f, 2, 100);
  ASSERT_FALSE(g.ok);
  EXPECT_EQ(g.violation->first, BigInt(0));
  EXPECT_THROW(check_gap_family(f, 3, 100), Error);
}

TEST(Prescribed, PeriodicWhenAllEqual) {
  const auto p = make_prescribed_density_set(Ratio(1, 2), Ratio(1, 2), Ratio(1, 2), Ratio(1, 2));
  EXPECT_EQ(p.set.members(0, 20), IndexSet::periodic(2, {1}).members(0, 20));
}

TEST(Prescribed, ReproducesTargetsAtAdvertisedHorizon) {
  const Ratio r[4] = {Ratio(0), Ratio(1, 5), Ratio(1, 2), Ratio(1)};
  const auto p = make_prescribed_density_set(r[0], r[1], r[2], r[3]);
  DensityOptions o;
  o.burn_in = p.burn_in;
  const auto d = estimate_densities(p.set, p.horizon, p.window_grid, o);
  EXPECT_NEAR(to_double(d.lower_banach), 0.0, 0.05);
  EXPECT_NEAR(to_double(d.lower_density), 0.2, 0.05);
  EXPECT_NEAR(to_double(d.upper_density), 0.5, 0.05);
  EXPECT_NEAR(to_double(d.upper_banach), 1.0, 0.05);
}

TEST(Prescribed, EqualPrefixDensities) {
  // Lower and upper density coincide; only short phases separate them.
  const auto p = make_prescribed_density_set(Ratio(1, 10), Ratio(3, 5), Ratio(3, 5), Ratio(1));
  DensityOptions o;
  o.burn_in = p.burn_in;
  const auto d = estimate_densities(p.set, p.horizon, p.window_grid, o);
  EXPECT_NEAR(to_double(d.lower_banach), 0.1, 0.05);
  EXPECT_NEAR(to_double(d.lower_density), 0.6, 0.05);
  EXPECT_NEAR(to_double(d.upper_density), 0.6, 0.05);
  EXPECT_NEAR(to_double(d.upper_banach), 1.0, 0.05);
  EXPECT_NO_THROW(p.set.count(0, 1'000'000'000));
}

TEST(Prescribed, RejectsUnorderedTargets) {
  EXPECT_THROW(make_prescribed_density_set(Ratio(1, 2), Ratio(1, 4), Ratio(1, 2), Ratio(1)), Error);
}
