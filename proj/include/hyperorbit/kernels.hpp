#pragma once

// Data-parallel inner loops. Every kernel exists twice with the same
// signature: kernels::serial is the reference implementation used by the
// tests, kernels::omp is the OpenMP version the library calls. Outputs are
// identical for any worker count: no floating-point reduction crosses
// threads, and ties resolve to the smallest index.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hyperorbit::kernels {

using IndexPredicate = std::function<bool(std::int64_t)>;
using Alpha = std::function<double(std::int64_t)>;

struct WindowExtrema {
  std::int64_t max_count = 0;
  std::int64_t max_position = 0;
  std::int64_t min_count = 0;
  std::int64_t min_position = 0;
};

namespace serial {

/// bitmap[i] = pred(lo + i) for i in [0, hi - lo].
std::vector<std::uint8_t> membership_bitmap(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred);

/// prefix[i] = number of set entries among bitmap[0, i); size is bitmap.size() + 1.
std::vector<std::int64_t> prefix_counts(std::span<const std::uint8_t> bitmap);

/// Extrema of prefix[p + s] - prefix[p] over the window starts p.
WindowExtrema window_extrema(std::span<const std::int64_t> prefix, std::int64_t s,
                             std::span<const std::int64_t> positions);

/// out[d] = 1 iff d = a - b for sorted members a >= b, d <= horizon.
std::vector<std::uint8_t> difference_bitmap(std::span<const std::int64_t> members, std::int64_t horizon);

/// out[i] = length of the maximal run of pred ending at lo + i (may extend below lo).
std::vector<std::uint32_t> run_lengths(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred);

/// out[t] = sum over members m <= upper of alpha(m - targets[t]).
std::vector<double> beta_values(std::span<const std::int64_t> members, std::span<const std::int64_t> targets,
                                std::int64_t upper, const Alpha& alpha);

/// out[t] = sum over members i != centers[t] of g(i - centers[t]), with
/// g(d) = forward[d] for d > 0 and backward[-d] for d < 0, zero past either table.
std::vector<double> offset_sums(std::span<const std::int64_t> centers, std::span<const std::int64_t> members,
                                std::span<const double> forward, std::span<const double> backward);

}  // namespace serial

namespace omp {

std::vector<std::uint8_t> membership_bitmap(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred);
std::vector<std::int64_t> prefix_counts(std::span<const std::uint8_t> bitmap);
WindowExtrema window_extrema(std::span<const std::int64_t> prefix, std::int64_t s,
                             std::span<const std::int64_t> positions);
std::vector<std::uint8_t> difference_bitmap(std::span<const std::int64_t> members, std::int64_t horizon);
std::vector<std::uint32_t> run_lengths(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred);
std::vector<double> beta_values(std::span<const std::int64_t> members, std::span<const std::int64_t> targets,
                                std::int64_t upper, const Alpha& alpha);
std::vector<double> offset_sums(std::span<const std::int64_t> centers, std::span<const std::int64_t> members,
                                std::span<const double> forward, std::span<const double> backward);

}  // namespace omp

}  // namespace hyperorbit::kernels
