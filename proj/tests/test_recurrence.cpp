#include <gtest/gtest.h>

#include <cmath>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/hc_constructor.hpp"
#include "hyperorbit/recurrence_analysis.hpp"

using namespace hyperorbit;

namespace {

const SpaceSpec kL2 = SpaceSpec::lp(2);
ShiftOperator rolewicz2() { return ShiftOperator(constant_weights(2.0), kL2); }

}  // namespace

TEST(HittingTimes, CollapsingOrbit) {
  const auto T = rolewicz2();
  const auto e0 = SparseVec::basis(kL2, 0);
  const auto r = hitting_times(T, e0, {{SparseVec(kL2), 0.5}, {e0, 0.5}}, 100, {{10}, {}, 1e300});
  ASSERT_EQ(r.size(), 2u);
  ASSERT_EQ(r[0].times.size(), 100u);
  EXPECT_EQ(r[0].times.front(), 1);
  EXPECT_EQ(r[1].times, std::vector<std::int64_t>{0});
}

TEST(HittingTimes, ZeroVectorAlwaysHome) {
  const auto r = hitting_times(rolewicz2(), SparseVec(kL2), {{SparseVec(kL2), 0.1}}, 1000);
  EXPECT_EQ(r[0].times.size(), 1001u);
  EXPECT_EQ(r[0].densities.lower_density, Ratio(1));
}

TEST(HittingTimes, EveryTimeReverifies) {
  const auto T = rolewicz2();
  const SparseVec x(kL2, {{3, 0.125}, {9, 1.0 / 512}, {20, 1.0 / (1 << 20)}});
  const Ball b{SparseVec::basis(kL2, 0), 0.6};
  const auto r = hitting_times(T, x, {b}, 40);
  for (std::int64_t n = 0; n <= 40; ++n) {
    const bool in = ball_contains(b.center, b.radius, apply_backward(T, x, n));
    EXPECT_EQ(in, std::binary_search(r[0].times.begin(), r[0].times.end(), n)) << n;
  }
  EXPECT_EQ(r[0].times, (std::vector<std::int64_t>{3, 9, 20}));
}

TEST(HittingTimes, OverflowTruncatesWithWarning) {
  const auto r = hitting_times(rolewicz2(), SparseVec::basis(kL2, 2000), {{SparseVec(kL2), 1.0}}, 1500,
                               {{10}, {}, 1e30});
  EXPECT_TRUE(r[0].truncated);
  EXPECT_FALSE(r[0].warning.empty());
  EXPECT_LT(r[0].horizon, 200);
}

TEST(HittingTimes, ConstructedVectorHitsItsBlocks) {
  const auto T = rolewicz2();
  DenseSequence Y(kL2);
  const auto plan = select_subsequence(T, dyadic_block_family(6, 8), Y, 3, 3000);
  const auto v = assemble_vector(plan, T, 3000 + 2048);
  std::vector<Ball> balls;
  for (int l = 1; l <= 3; ++l) balls.push_back({plan.targets[static_cast<std::size_t>(l - 1)], std::ldexp(1.0, -l)});
  const auto r = hitting_times(T, v.x, balls, 3000);
  for (int l = 1; l <= 3; ++l) {
    const auto& times = r[static_cast<std::size_t>(l - 1)].times;
    for (auto n : plan.family.at(plan.selected[static_cast<std::size_t>(l - 1)]).members(0, 3000))
      EXPECT_TRUE(std::binary_search(times.begin(), times.end(), n)) << "l=" << l << " n=" << n;
  }
}

TEST(Classify, LabelsFollowDensityChain) {
  DensityReport all, blocks, none;
  all = estimate_densities(IndexSet::all(), 10000, {10});
  blocks = estimate_densities(IndexSet::factorial_blocks(), 10000, {5});
  none = estimate_densities(IndexSet::empty(), 10000, {10});
  // Factorial blocks up to 10^4 still have upper density about 0.026, so the
  // threshold sits above that.
  const Ratio theta(1, 20);
  const auto c = classify(std::vector<DensityReport>{all, blocks, none}, theta);
  EXPECT_EQ(c.targets[0].label, "frequently hypercyclic");
  EXPECT_EQ(c.targets[1].label, "reiteratively hypercyclic");
  EXPECT_EQ(c.targets[2].label, "no hypercyclicity evidence");
  EXPECT_EQ(c.overall, "no hypercyclicity evidence");
  EXPECT_NE(c.label().find("evidence at horizon 10000, theta 1/20"), std::string::npos);
  EXPECT_EQ(classify(std::vector<DensityReport>{all, blocks}, theta).overall, "reiteratively hypercyclic");
  for (const auto& t : c.targets) {
    EXPECT_TRUE(!t.frequent || t.u_frequent);
    EXPECT_TRUE(!t.u_frequent || t.reiterative);
  }
}

TEST(ReturnSet, IdentityAndRolewicz) {
  const auto T = rolewicz2();
  DenseSequence Y(kL2);
  const Ball U{Y.item(1), 0.5}, V{Y.item(4), 0.5};
  const auto same = return_set(T, U, U, 100);
  ASSERT_FALSE(same.times.empty());
  EXPECT_EQ(same.times.front(), 0);
  const auto r = return_set(T, U, V, 2000, 8, 64);
  EXPECT_TRUE(r.evidence.syndetic);
  EXPECT_LE(r.evidence.gap_bound, 64);
  // Reported n stay witnessed by the steering probe; doubles hold S^n z only
  // for moderate n.
  for (auto n : r.times) {
    if (n > 600) break;
    SparseVec z = V.center - apply_backward(T, U.center, n);
    const SparseVec u = U.center + apply_right_inverse(T, z, n);
    EXPECT_TRUE(ball_contains(U.center, U.radius, u));
    EXPECT_TRUE(ball_contains(V.center, V.radius, apply_backward(T, u, n)));
  }
}

TEST(ReturnSet, WmInclusionAudit) {
  const auto T = rolewicz2();
  DenseSequence Y(kL2);
  const auto plan = select_subsequence(T, dyadic_block_family(6, 8), Y, 2, 2000);
  const auto v = assemble_vector(plan, T, 2000 + 2048);
  const Ball U{Y.item(1), 0.5}, V{SparseVec(kL2), 0.5};
  const auto r = wm_inclusion_check(T, v.x, U, V, 1, 2000);
  EXPECT_FALSE(r.visits.empty());
  EXPECT_GT(r.pairs_checked, 0);
  EXPECT_TRUE(r.ok());
}

TEST(Correlation, MultiplesOfThree) {
  const auto r = correlation_scan(IndexSet::periodic(3, {0}), Ratio(1, 2), 30, {{0, 3000}});
  EXPECT_EQ(r.delta, Ratio(1, 3));
  for (std::int64_t k = 1; k <= 30; ++k) EXPECT_EQ(r.eta[static_cast<std::size_t>(k - 1)], k % 3 == 0 ? Ratio(1, 3) : Ratio(0));
  EXPECT_EQ(r.F.size(), 10u);
  EXPECT_TRUE(r.F_evidence.syndetic);
  EXPECT_EQ(r.F_evidence.gap_bound, 3);
  EXPECT_EQ(r.antichain_bound, Ratio(5));
  EXPECT_LE(Ratio(static_cast<std::int64_t>(r.antichain.size())), r.antichain_bound);
}

TEST(Correlation, AllIntegersAndErrors) {
  const auto r = correlation_scan(IndexSet::all(), Ratio(1, 4), 10, {{0, 500}});
  EXPECT_EQ(r.delta, Ratio(1));
  EXPECT_EQ(r.F.size(), 10u);
  EXPECT_THROW(correlation_scan(IndexSet::empty(), Ratio(1, 2), 5, {{0, 100}}), Error);
  EXPECT_THROW(correlation_scan(IndexSet::all(), Ratio(1), 5, {{0, 100}}), Error);
  EXPECT_THROW(correlation_scan(IndexSet::all(), Ratio(1, 2), 5, {}), Error);
}

TEST(Beta, EvensMatchClosedForm) {
  const auto r = beta_sequence(IndexSet::periodic(2, {0}), AlphaProfile::ones(), 2000);
  for (std::size_t i = 0; i < r.n.size(); ++i) {
    // Members of A above n and at most 2000: (2000 - n) / 2.
    EXPECT_NEAR(r.beta[i], static_cast<double>(2000 - r.n[i]) / 2.0, 1.0);
  }
  EXPECT_TRUE(r.growth_detected);
  EXPECT_NEAR(r.alpha_partial_sum, 2000.0, 1e-9);
}

TEST(Beta, FiniteSetIsFlatAndBadProfileRejected) {
  const std::vector<std::int64_t> m{1, 2, 5};
  const auto r = beta_sequence(IndexSet::explicit_list(m), AlphaProfile::ones(), 4096);
  EXPECT_FALSE(r.growth_detected);
  AlphaProfile bad{[](std::int64_t n) { return n == 3 ? 1.0 : 0.0; }, 0.5, std::nullopt, "spike"};
  EXPECT_THROW(beta_sequence(IndexSet::all(), bad, 100), Error);
}

TEST(Beta, FactorialBlocksHarmonicGrows) {
  const auto r = beta_sequence(IndexSet::factorial_blocks(), AlphaProfile::harmonic(), 100000);
  // Direct double sum at the start of the 8! block.
  const auto members = IndexSet::factorial_blocks().members(0, 100000);
  const std::int64_t n = 40320;
  double want = 0;
  for (auto m : members)
    if (m > n) want += 1.0 / static_cast<double>(m - n);
  const auto it = std::find(r.n.begin(), r.n.end(), n);
  ASSERT_NE(it, r.n.end());
  EXPECT_NEAR(r.beta[static_cast<std::size_t>(it - r.n.begin())], want, 1e-9);
  EXPECT_GE(r.growth.back().max_beta, r.growth.front().max_beta);
}

TEST(Eqbeta, ProductArithmetic) {
  const auto w = bilateral_constant_weights(2.0);
  const std::vector<std::int64_t> m{0, 10, 20};
  const auto A = IndexSet::explicit_list(m);
  for (double p : {1.0, 2.0}) {
    const auto s = eqbeta_sums(*w, p, A, 10, 100);
    EXPECT_NEAR(s.right, std::pow(2.0, -10 * p), 1e-15);
    EXPECT_NEAR(s.left, std::pow(2.0, -10 * p), 1e-15);
    EXPECT_EQ(s.left_terms, 1);
    EXPECT_EQ(s.right_terms, 1);
  }
  const std::vector<std::int64_t> single{7};
  const auto s = eqbeta_sums(*w, 2, IndexSet::explicit_list(single), 7, 100);
  EXPECT_EQ(s.left, 0.0);
  EXPECT_EQ(s.right, 0.0);
  EXPECT_THROW(eqbeta_sums(*w, 2, A, 5, 100), Error);
  EXPECT_THROW(eqbeta_sums(*constant_weights(2.0), 2, A, 10, 100), Error);
}
