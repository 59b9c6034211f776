#include <algorithm>

#include "hyperorbit/kernels.hpp"

namespace hyperorbit::kernels::serial {

std::vector<std::uint8_t> membership_bitmap(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred) {
  if (hi < lo) return {};
  std::vector<std::uint8_t> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) out[static_cast<std::size_t>(n - lo)] = pred(n) ? 1 : 0;
  return out;
}

std::vector<std::int64_t> prefix_counts(std::span<const std::uint8_t> bitmap) {
  std::vector<std::int64_t> prefix(bitmap.size() + 1, 0);
  for (std::size_t i = 0; i < bitmap.size(); ++i) prefix[i + 1] = prefix[i] + bitmap[i];
  return prefix;
}

WindowExtrema window_extrema(std::span<const std::int64_t> prefix, std::int64_t s,
                             std::span<const std::int64_t> positions) {
  WindowExtrema ex;
  bool first = true;
  for (std::int64_t p : positions) {
    std::int64_t c = prefix[static_cast<std::size_t>(p + s)] - prefix[static_cast<std::size_t>(p)];
    if (first || c > ex.max_count || (c == ex.max_count && p < ex.max_position)) {
      ex.max_count = c;
      ex.max_position = p;
    }
    if (first || c < ex.min_count || (c == ex.min_count && p < ex.min_position)) {
      ex.min_count = c;
      ex.min_position = p;
    }
    first = false;
  }
  return ex;
}

std::vector<std::uint8_t> difference_bitmap(std::span<const std::int64_t> members, std::int64_t horizon) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(horizon + 1), 0);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      std::int64_t d = members[i] - members[j];
      if (d >= 0 && d <= horizon) out[static_cast<std::size_t>(d)] = 1;
    }
  return out;
}

std::vector<std::uint32_t> run_lengths(std::int64_t lo, std::int64_t hi, const IndexPredicate& pred) {
  if (hi < lo) return {};
  std::uint32_t run = 0;
  for (std::int64_t n = lo - 1; n >= 0 && pred(n); --n) ++run;
  std::vector<std::uint32_t> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n) {
    run = pred(n) ? run + 1 : 0;
    out[static_cast<std::size_t>(n - lo)] = run;
  }
  return out;
}

std::vector<double> beta_values(std::span<const std::int64_t> members, std::span<const std::int64_t> targets,
                                std::int64_t upper, const Alpha& alpha) {
  std::vector<double> out(targets.size(), 0.0);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    double sum = 0.0;
    for (std::int64_t m : members) {
      if (m > upper) break;
      sum += alpha(m - targets[t]);
    }
    out[t] = sum;
  }
  return out;
}

std::vector<double> offset_sums(std::span<const std::int64_t> centers, std::span<const std::int64_t> members,
                                std::span<const double> forward, std::span<const double> backward) {
  std::vector<double> out(centers.size(), 0.0);
  for (std::size_t t = 0; t < centers.size(); ++t) {
    double sum = 0.0;
    for (std::int64_t i : members) {
      std::int64_t d = i - centers[t];
      if (d > 0 && static_cast<std::size_t>(d) < forward.size()) sum += forward[static_cast<std::size_t>(d)];
      if (d < 0 && static_cast<std::size_t>(-d) < backward.size()) sum += backward[static_cast<std::size_t>(-d)];
    }
    out[t] = sum;
  }
  return out;
}

}  // namespace hyperorbit::kernels::serial
