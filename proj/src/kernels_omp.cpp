#include <algorithm>
#include <bit>

#include <omp.h>

#include "hyperorbit/kernels.hpp"
#include "hyperorbit/parallel.hpp"

namespace hyperorbit::kernels::omp {

namespace {

struct Chunks {
  std::int64_t count;
  std::int64_t size;
};

Chunks chunk_layout(std::int64_t n, std::int64_t min_size = 4096) {
  std::int64_t c = std::max<std::int64_t>(1, std::min<std::int64_t>(4 * workers(), (n + min_size - 1) / min_size));
  return {c, (n + c - 1) / c};
}

}  // namespace

std::vector<std::uint8_t> membership_bitmap(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred) {
  if (hi < lo) return {};
  const std::int64_t n = hi - lo + 1;
  std::vector<std::uint8_t> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static) num_threads(workers())
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = pred(lo + i) ? 1 : 0;
  return out;
}

std::vector<std::int64_t> prefix_counts(std::span<const std::uint8_t> bitmap) {
  const auto n = static_cast<std::int64_t>(bitmap.size());
  std::vector<std::int64_t> prefix(bitmap.size() + 1, 0);
  const Chunks ch = chunk_layout(n);
  std::vector<std::int64_t> totals(static_cast<std::size_t>(ch.count + 1), 0);
#pragma omp parallel for schedule(static) num_threads(workers())
  for (std::int64_t c = 0; c < ch.count; ++c) {
    std::int64_t begin = c * ch.size, end = std::min(n, begin + ch.size), run = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      run += bitmap[static_cast<std::size_t>(i)];
      prefix[static_cast<std::size_t>(i + 1)] = run;
    }
    totals[static_cast<std::size_t>(c + 1)] = run;
  }
  for (std::size_t c = 1; c < totals.size(); ++c) totals[c] += totals[c - 1];
#pragma omp parallel for schedule(static) num_threads(workers())
  for (std::int64_t c = 1; c < ch.count; ++c) {
    std::int64_t begin = c * ch.size, end = std::min(n, begin + ch.size);
    for (std::int64_t i = begin; i < end; ++i) prefix[static_cast<std::size_t>(i + 1)] += totals[static_cast<std::size_t>(c)];
  }
  return prefix;
}

WindowExtrema window_extrema(std::span<const std::int64_t> prefix, std::int64_t s,
                             std::span<const std::int64_t> positions) {
  const auto n = static_cast<std::int64_t>(positions.size());
  if (n == 0) return {};
  const Chunks ch = chunk_layout(n, 1024);
  std::vector<WindowExtrema> partial(static_cast<std::size_t>(ch.count));
#pragma omp parallel for schedule(static) num_threads(workers())
  for (std::int64_t c = 0; c < ch.count; ++c) {
    std::int64_t begin = c * ch.size, end = std::min(n, begin + ch.size);
    if (begin >= end) continue;
    partial[static_cast<std::size_t>(c)] =
        serial::window_extrema(prefix, s, positions.subspan(static_cast<std::size_t>(begin), static_cast<std::size_t>(end - begin)));
  }
  WindowExtrema ex = partial.front();
  for (std::int64_t c = 1; c < ch.count; ++c) {
    if (c * ch.size >= n) break;
    const WindowExtrema& p = partial[static_cast<std::size_t>(c)];
    if (p.max_count > ex.max_count || (p.max_count == ex.max_count && p.max_position < ex.max_position)) {
      ex.max_count = p.max_count;
      ex.max_position = p.max_position;
    }
    if (p.min_count < ex.min_count || (p.min_count == ex.min_count && p.min_position < ex.min_position)) {
      ex.min_count = p.min_count;
      ex.min_position = p.min_position;
    }
  }
  return ex;
}

std::vector<std::uint8_t> difference_bitmap(std::span<const std::int64_t> members, std::int64_t horizon) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(horizon + 1), 0);
  if (members.empty()) return out;
  const std::int64_t top = members.back();
  const std::size_t words = static_cast<std::size_t>(top / 64 + 1);
  std::vector<std::uint64_t> set(words, 0);
  for (std::int64_t m : members) set[static_cast<std::size_t>(m / 64)] |= std::uint64_t{1} << (m % 64);

  const std::size_t out_words = static_cast<std::size_t>(std::min(top, horizon) / 64 + 1);
  const int nt = workers();
  std::vector<std::vector<std::uint64_t>> local(static_cast<std::size_t>(nt), std::vector<std::uint64_t>(out_words, 0));
  const auto count = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(nt)
  for (std::int64_t idx = 0; idx < count; ++idx) {
    auto& acc = local[static_cast<std::size_t>(omp_get_thread_num())];
    const std::int64_t b = members[static_cast<std::size_t>(idx)];
    const std::size_t ws = static_cast<std::size_t>(b / 64);
    const unsigned bs = static_cast<unsigned>(b % 64);
    // acc |= set >> b
    for (std::size_t w = 0; w < out_words && w + ws < words; ++w) {
      std::uint64_t lo = set[w + ws] >> bs;
      std::uint64_t hi = (bs != 0 && w + ws + 1 < words) ? set[w + ws + 1] << (64 - bs) : 0;
      acc[w] |= lo | hi;
    }
  }
  std::vector<std::uint64_t> merged(out_words, 0);
  for (const auto& acc : local)
    for (std::size_t w = 0; w < out_words; ++w) merged[w] |= acc[w];
  for (std::int64_t d = 0; d <= std::min(top, horizon); ++d)
    out[static_cast<std::size_t>(d)] = (merged[static_cast<std::size_t>(d / 64)] >> (d % 64)) & 1U;
  return out;
}

std::vector<std::uint32_t> run_lengths(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred) {
  if (hi < lo) return {};
  const std::int64_t n = hi - lo + 1;
  std::vector<std::uint32_t> out(static_cast<std::size_t>(n));
  const Chunks ch = chunk_layout(n);
#pragma omp parallel for schedule(static) num_threads(workers())
  for (std::int64_t c = 0; c < ch.count; ++c) {
    std::int64_t begin = lo + c * ch.size, end = std::min(hi + 1, begin + ch.size);
    if (begin >= end) continue;
    std::uint32_t run = 0;
    for (std::int64_t m = begin - 1; m >= 0 && pred(m); --m) ++run;
    for (std::int64_t m = begin; m < end; ++m) {
      run = pred(m) ? run + 1 : 0;
      out[static_cast<std::size_t>(m - lo)] = run;
    }
  }
  return out;
}

std::vector<double> beta_values(std::span<const std::int64_t> members, std::span<const std::int64_t> targets,
                                std::int64_t upper, const Alpha& alpha) {
  std::vector<double> out(targets.size(), 0.0);
  const auto n = static_cast<std::int64_t>(targets.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers())
  for (std::int64_t t = 0; t < n; ++t) {
    double sum = 0.0;
    for (std::int64_t m : members) {
      if (m > upper) break;
      sum += alpha(m - targets[static_cast<std::size_t>(t)]);
    }
    out[static_cast<std::size_t>(t)] = sum;
  }
  return out;
}

std::vector<double> offset_sums(std::span<const std::int64_t> centers, std::span<const std::int64_t> members,
                                std::span<const double> forward, std::span<const double> backward) {
  std::vector<double> out(centers.size(), 0.0);
  const auto n = static_cast<std::int64_t>(centers.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers())
  for (std::int64_t t = 0; t < n; ++t) {
    double sum = 0.0;
    const std::int64_t c = centers[static_cast<std::size_t>(t)];
    for (std::int64_t i : members) {
      std::int64_t d = i - c;
      if (d > 0 && static_cast<std::size_t>(d) < forward.size()) sum += forward[static_cast<std::size_t>(d)];
      if (d < 0 && static_cast<std::size_t>(-d) < backward.size()) sum += backward[static_cast<std::size_t>(-d)];
    }
    out[static_cast<std::size_t>(t)] = sum;
  }
  return out;
}

}  // namespace hyperorbit::kernels::omp
