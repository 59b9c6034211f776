#include <gtest/gtest.h>

#include <random>

#include "hyperorbit/kernels.hpp"
#include "hyperorbit/parallel.hpp"

using namespace hyperorbit;
namespace ks = hyperorbit::kernels::serial;
namespace ko = hyperorbit::kernels::omp;

namespace {

struct Workers {
  explicit Workers(int n) { set_workers(n); }
  ~Workers() { set_workers(0); }
};

std::vector<std::int64_t> random_members(std::mt19937_64& rng, std::int64_t hi, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i <= hi; ++i)
    if (keep(rng)) out.push_back(i);
  return out;
}

bool hashed(std::int64_t n) { return (static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ull) >> 61 < 3; }

}  // namespace

TEST(Kernels, BitmapAndPrefixMatchDirectLoop) {
  for (int w : {1, 3, 8}) {
    Workers guard(w);
    const auto a = ko::membership_bitmap(-50, 20000, hashed);
    ASSERT_EQ(a, ks::membership_bitmap(-50, 20000, hashed));
    for (std::int64_t i = -50; i <= 20000; ++i) ASSERT_EQ(a[static_cast<std::size_t>(i + 50)], hashed(i));
    const auto p = ko::prefix_counts(a);
    ASSERT_EQ(p, ks::prefix_counts(a));
    std::int64_t run = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_EQ(p[i], run);
      run += a[i];
    }
    ASSERT_EQ(p.back(), run);
  }
}

TEST(Kernels, WindowExtremaMatchBruteForce) {
  std::mt19937_64 rng(7);
  const auto bits = ks::membership_bitmap(0, 5000, hashed);
  const auto prefix = ks::prefix_counts(bits);
  for (std::int64_t s : {1, 7, 64, 1000}) {
    std::vector<std::int64_t> pos;
    std::uniform_int_distribution<std::int64_t> pick(0, 5001 - s);
    for (int i = 0; i < 300; ++i) pos.push_back(pick(rng));
    std::int64_t mx = -1, mn = 1 << 30, mxp = 0, mnp = 0;
    for (auto p : pos) {
      std::int64_t c = 0;
      for (std::int64_t i = p; i < p + s; ++i) c += bits[static_cast<std::size_t>(i)];
      if (c > mx || (c == mx && p < mxp)) mx = c, mxp = p;
      if (c < mn || (c == mn && p < mnp)) mn = c, mnp = p;
    }
    for (int w : {1, 4}) {
      Workers guard(w);
      const auto e = ko::window_extrema(prefix, s, pos);
      const auto r = ks::window_extrema(prefix, s, pos);
      EXPECT_EQ(e.max_count, mx);
      EXPECT_EQ(e.min_count, mn);
      EXPECT_EQ(e.max_position, mxp);
      EXPECT_EQ(e.min_position, mnp);
      EXPECT_EQ(r.max_position, e.max_position);
      EXPECT_EQ(r.min_position, e.min_position);
    }
  }
}

TEST(Kernels, DifferenceBitmapMatchesPairs) {
  std::mt19937_64 rng(11);
  const auto m = random_members(rng, 3000, 0.01);
  std::vector<std::uint8_t> want(1001, 0);
  for (auto a : m)
    for (auto b : m)
      if (a >= b && a - b <= 1000) want[static_cast<std::size_t>(a - b)] = 1;
  for (int w : {1, 5}) {
    Workers guard(w);
    EXPECT_EQ(ko::difference_bitmap(m, 1000), want);
  }
  EXPECT_EQ(ks::difference_bitmap(m, 1000), want);
}

TEST(Kernels, RunLengthsCountBackwards) {
  auto pred = [](std::int64_t n) { return n % 7 != 0; };
  for (int w : {1, 6}) {
    Workers guard(w);
    const auto r = ko::run_lengths(100, 400, pred);
    ASSERT_EQ(r, ks::run_lengths(100, 400, pred));
    for (std::int64_t n = 100; n <= 400; ++n) {
      std::uint32_t c = 0;
      for (std::int64_t i = n; pred(i); --i) ++c;
      ASSERT_EQ(r[static_cast<std::size_t>(n - 100)], c) << n;
    }
  }
}

TEST(Kernels, BetaValuesMatchDoubleLoop) {
  std::mt19937_64 rng(3);
  const auto m = random_members(rng, 2000, 0.1);
  auto alpha = [](std::int64_t d) { return d > 0 ? 1.0 / static_cast<double>(d) : d < 0 ? 0.25 : 0.0; };
  std::vector<double> want;
  for (auto t : m) {
    double s = 0;
    for (auto x : m)
      if (x <= 1500) s += alpha(x - t);
    want.push_back(s);
  }
  for (int w : {1, 7}) {
    Workers guard(w);
    const auto got = ko::beta_values(m, m, 1500, alpha);
    ASSERT_EQ(got, ks::beta_values(m, m, 1500, alpha));
    for (std::size_t i = 0; i < m.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-9 * (1 + want[i]));
  }
}

TEST(Kernels, OffsetSumsMatchDoubleLoop) {
  std::mt19937_64 rng(5);
  const auto members = random_members(rng, 4000, 0.05);
  const auto centers = random_members(rng, 3000, 0.02);
  std::vector<double> fwd(600), bwd(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (auto& f : fwd) f = u(rng);
  for (auto& b : bwd) b = u(rng);
  std::vector<double> want;
  for (auto c : centers) {
    double s = 0;
    for (auto i : members) {
      const auto d = i - c;
      if (d > 0 && d < 600) s += fwd[static_cast<std::size_t>(d)];
      if (d < 0 && -d < 5) s += bwd[static_cast<std::size_t>(-d)];
    }
    want.push_back(s);
  }
  for (int w : {1, 8}) {
    Workers guard(w);
    const auto got = ko::offset_sums(centers, members, fwd, bwd);
    ASSERT_EQ(got, ks::offset_sums(centers, members, fwd, bwd));
    for (std::size_t i = 0; i < want.size(); ++i) ASSERT_NEAR(got[i], want[i], 1e-12 * (1 + want[i]));
  }
}
