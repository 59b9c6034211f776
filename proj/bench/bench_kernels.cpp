// Serial reference kernels against their OpenMP versions. The second range
// argument of each omp benchmark is the worker count.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "hyperorbit/counterexample_c0.hpp"
#include "hyperorbit/kernels.hpp"
#include "hyperorbit/parallel.hpp"

namespace k = hyperorbit::kernels;

namespace {

bool in_s(std::int64_t n) { return hyperorbit::s_contains(n); }

bool squarefree_ish(std::int64_t n) { return n % 4 != 0 && n % 9 != 0 && n % 25 != 0; }

std::vector<std::int64_t> members_upto(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i <= n; ++i)
    if (i % 7 == 0 || i % 11 == 3) out.push_back(i);
  return out;
}

void set_threads(benchmark::State& state) { hyperorbit::set_workers(static_cast<int>(state.range(1))); }

template <bool Omp>
void BM_MembershipBitmap(benchmark::State& state) {
  if constexpr (Omp) set_threads(state);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    auto b = Omp ? k::omp::membership_bitmap(0, n, in_s)
                 : k::serial::membership_bitmap(0, n, in_s);
    benchmark::DoNotOptimize(b.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <bool Omp>
void BM_WindowExtrema(benchmark::State& state) {
  if constexpr (Omp) set_threads(state);
  const std::int64_t n = state.range(0);
  const auto bitmap = k::serial::membership_bitmap(0, n, squarefree_ish);
  const auto prefix = k::serial::prefix_counts(bitmap);
  std::vector<std::int64_t> positions;
  for (std::int64_t p = 0; p + 1000 <= n; ++p) positions.push_back(p);
  for (auto _ : state) {
    auto e = Omp ? k::omp::window_extrema(prefix, 1000, positions) : k::serial::window_extrema(prefix, 1000, positions);
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(positions.size()));
}

template <bool Omp>
void BM_DifferenceBitmap(benchmark::State& state) {
  if constexpr (Omp) set_threads(state);
  const auto members = members_upto(state.range(0));
  for (auto _ : state) {
    auto d = Omp ? k::omp::difference_bitmap(members, state.range(0))
                 : k::serial::difference_bitmap(members, state.range(0));
    benchmark::DoNotOptimize(d.data());
  }
}

template <bool Omp>
void BM_BetaValues(benchmark::State& state) {
  if constexpr (Omp) set_threads(state);
  const auto members = members_upto(state.range(0));
  const k::Alpha alpha = [](std::int64_t n) { return n >= 1 ? 1.0 / static_cast<double>(n) : 0.0; };
  for (auto _ : state) {
    auto b = Omp ? k::omp::beta_values(members, members, state.range(0), alpha)
                 : k::serial::beta_values(members, members, state.range(0), alpha);
    benchmark::DoNotOptimize(b.data());
  }
}

template <bool Omp>
void BM_OffsetSums(benchmark::State& state) {
  if constexpr (Omp) set_threads(state);
  const auto members = members_upto(state.range(0));
  std::vector<double> forward(4096), backward(8);
  for (std::size_t d = 0; d < forward.size(); ++d) forward[d] = std::ldexp(1.0, -static_cast<int>(d));
  for (auto _ : state) {
    auto s = Omp ? k::omp::offset_sums(members, members, forward, backward)
                 : k::serial::offset_sums(members, members, forward, backward);
    benchmark::DoNotOptimize(s.data());
  }
}

void omp_args(benchmark::internal::Benchmark* b, std::int64_t n) {
  for (int w : {1, 2, 4, 8}) b->Args({n, w});
  b->UseRealTime();
}

}  // namespace

BENCHMARK_TEMPLATE(BM_MembershipBitmap, false)->Arg(1 << 20)->UseRealTime();
BENCHMARK_TEMPLATE(BM_MembershipBitmap, true)->Apply([](auto* b) { omp_args(b, 1 << 20); });
BENCHMARK_TEMPLATE(BM_WindowExtrema, false)->Arg(1 << 22)->UseRealTime();
BENCHMARK_TEMPLATE(BM_WindowExtrema, true)->Apply([](auto* b) { omp_args(b, 1 << 22); });
BENCHMARK_TEMPLATE(BM_DifferenceBitmap, false)->Arg(20000)->UseRealTime();
BENCHMARK_TEMPLATE(BM_DifferenceBitmap, true)->Apply([](auto* b) { omp_args(b, 20000); });
BENCHMARK_TEMPLATE(BM_BetaValues, false)->Arg(20000)->UseRealTime();
BENCHMARK_TEMPLATE(BM_BetaValues, true)->Apply([](auto* b) { omp_args(b, 20000); });
BENCHMARK_TEMPLATE(BM_OffsetSums, false)->Arg(50000)->UseRealTime();
BENCHMARK_TEMPLATE(BM_OffsetSums, true)->Apply([](auto* b) { omp_args(b, 50000); });

BENCHMARK_MAIN();
