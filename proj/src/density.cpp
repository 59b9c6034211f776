#include <algorithm>
#include <sstream>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/index_sets.hpp"
#include "hyperorbit/kernels.hpp"

namespace hyperorbit {

bool DensityReport::chain_holds() const {
  return lower_banach <= lower_density && lower_density <= upper_density && upper_density <= upper_banach;
}

namespace {

std::vector<std::int64_t> window_positions(std::int64_t length, std::int64_t s, const std::vector<std::int64_t>& anchors,
                                           const DensityOptions& options) {
  const std::int64_t last = length - s;
  std::vector<std::int64_t> pos;
  if (options.exhaustive) {
    pos.resize(static_cast<std::size_t>(last + 1));
    for (std::int64_t p = 0; p <= last; ++p) pos[static_cast<std::size_t>(p)] = p;
    return pos;
  }
  for (std::int64_t p = 0; p <= last; p += s) pos.push_back(p);
  const std::int64_t stride = std::max<std::int64_t>(1, s / std::max<std::int64_t>(1, options.stride_divisor));
  if (stride < s)
    for (std::int64_t p = 0; p <= last; p += stride) pos.push_back(p);
  pos.push_back(last);
  for (auto a : anchors) {
    pos.push_back(std::clamp<std::int64_t>(a, 0, last));
    pos.push_back(std::clamp<std::int64_t>(a - s + 1, 0, last));
  }
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  return pos;
}

}  // namespace

DensityReport estimate_densities(const IndexSet& set, std::int64_t horizon, std::vector<std::int64_t> window_grid,
                                 const DensityOptions& options) {
  if (window_grid.empty()) throw Error(ErrorKind::InvalidArgument, "window grid is empty");
  std::sort(window_grid.begin(), window_grid.end());
  window_grid.erase(std::unique(window_grid.begin(), window_grid.end()), window_grid.end());
  if (window_grid.front() < 1) throw Error(ErrorKind::InvalidArgument, "window lengths must be positive");
  const std::int64_t s_max = window_grid.back();
  if (horizon + 1 < s_max) {
    std::ostringstream msg;
    msg << "horizon " << horizon << " is smaller than the largest window " << s_max
        << "; a window of length s needs at least s indices in [0, horizon]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }

  const std::int64_t length = horizon + 1;
  const auto bits = set.bitmap(0, horizon);
  const auto prefix = kernels::omp::prefix_counts(bits);

  std::vector<std::int64_t> anchors = set.anchors(0, horizon);
  for (auto a : options.extra_anchors)
    if (a >= 0 && a <= horizon) anchors.push_back(a);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

  DensityReport report;
  report.horizon = horizon;
  report.window_grid = window_grid;
  report.window = s_max;
  report.anchors = anchors;

  for (auto s : window_grid) {
    const auto pos = window_positions(length, s, anchors, options);
    const auto ex = kernels::omp::window_extrema(prefix, s, pos);
    WindowEstimate w;
    w.s = s;
    w.upper = Ratio(ex.max_count, s);
    w.lower = Ratio(ex.min_count, s);
    w.upper_position = ex.max_position;
    w.lower_position = ex.min_position;
    w.positions_scanned = static_cast<std::int64_t>(pos.size());
    report.per_window.push_back(w);
  }
  const WindowEstimate& top = report.per_window.back();
  report.upper_banach = top.upper;
  report.lower_banach = top.lower;
  report.upper_banach_position = top.upper_position;
  report.lower_banach_position = top.lower_position;

  // Prefix lengths are multiples of s_max so each prefix is an average of
  // aligned windows, all of which were scanned above.
  std::int64_t burn_in = options.burn_in < 0 ? horizon / 10 : options.burn_in;
  std::int64_t first = std::max<std::int64_t>(1, (burn_in + s_max - 1) / s_max) * s_max;
  if (first > length) first = (length / s_max) * s_max;
  report.prefix_from = first;
  bool any = false;
  for (std::int64_t n = first; n <= length; n += s_max) {
    Ratio r(prefix[static_cast<std::size_t>(n)], n);
    if (!any || r < report.lower_density) {
      report.lower_density = r;
      report.lower_density_length = n;
    }
    if (!any || r > report.upper_density) {
      report.upper_density = r;
      report.upper_density_length = n;
    }
    any = true;
  }
  return report;
}

std::string SyndeticityEvidence::label() const {
  std::ostringstream out;
  out << "evidence at horizon " << horizon << ": "
      << (syndetic ? "gaps bounded by " : "gaps grow; largest ") << gap_bound;
  if (!syndetic) out << " starting at " << gap_location;
  return out.str();
}

SyndeticityEvidence is_syndetic(std::span<const std::int64_t> members, std::int64_t horizon,
                                std::optional<std::int64_t> max_gap) {
  std::vector<std::int64_t> in;
  for (auto m : members)
    if (m >= 0 && m <= horizon) in.push_back(m);
  if (in.empty()) {
    std::ostringstream msg;
    msg << "set has no members in [0, " << horizon << "]";
    throw Error(ErrorKind::NoData, msg.str());
  }
  SyndeticityEvidence ev;
  ev.horizon = horizon;
  ev.members = static_cast<std::int64_t>(in.size());
  const std::int64_t half = horizon / 2;
  auto record = [&](std::int64_t start, std::int64_t gap, bool tail) {
    if (gap > ev.gap_bound) {
      ev.gap_bound = gap;
      ev.gap_location = start;
    }
    if (tail || start >= half) ev.second_half_gap = std::max(ev.second_half_gap, gap);
    else ev.first_half_gap = std::max(ev.first_half_gap, gap);
  };
  record(0, in.front(), false);
  for (std::size_t i = 1; i < in.size(); ++i) record(in[i - 1], in[i] - in[i - 1], false);
  record(in.back(), horizon - in.back(), true);
  ev.syndetic = ev.second_half_gap <= ev.first_half_gap && (!max_gap || ev.gap_bound <= *max_gap);
  return ev;
}

SyndeticityEvidence is_syndetic(const IndexSet& set, std::int64_t horizon, std::optional<std::int64_t> max_gap) {
  const auto members = set.members(0, horizon);
  return is_syndetic(members, horizon, max_gap);
}

IndexSet difference_set(const IndexSet& set, std::int64_t horizon) {
  const auto members = set.members(0, horizon);
  const auto bits = kernels::omp::difference_bitmap(members, horizon);
  std::vector<std::int64_t> diffs;
  for (std::size_t d = 0; d < bits.size(); ++d)
    if (bits[d]) diffs.push_back(static_cast<std::int64_t>(d));
  return IndexSet::explicit_list(diffs);
}

GapCheck check_gap_family(const SetFamily& family, int k_max, const BigInt& horizon) {
  if (k_max < 1 || k_max > family.size()) {
    std::ostringstream msg;
    msg << "family '" << family.label << "' defines " << family.size() << " sets, need A_1..A_" << k_max;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  struct Tagged {
    BigInt value;
    int level;
    bool operator<(const Tagged& o) const { return value < o.value || (value == o.value && level < o.level); }
  };
  std::vector<Tagged> all;
  for (int k = 1; k <= k_max; ++k)
    for (auto& v : family.at(k).enumerate(0, horizon)) all.push_back({std::move(v), k});
  std::sort(all.begin(), all.end());

  GapCheck result;
  result.elements = static_cast<std::int64_t>(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      BigInt diff = all[j].value - all[i].value;
      if (diff >= k_max) break;
      const bool same_element = diff == 0;
      if (same_element || diff < std::max(all[i].level, all[j].level)) {
        result.ok = false;
        result.violation = GapViolation{all[i].value, all[j].value, all[i].level, all[j].level};
        return result;
      }
    }
  }
  return result;
}

}  // namespace hyperorbit
