// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. argv[1] is the path of the hyperorbit binary.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hyperorbit/counterexample_c0.hpp"
#include "hyperorbit/errors.hpp"
#include "hyperorbit/hc_constructor.hpp"
#include "hyperorbit/index_sets.hpp"
#include "hyperorbit/recurrence_analysis.hpp"
#include "hyperorbit/weighted_shifts.hpp"

#include "experiment_config.hpp"

using namespace hyperorbit;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double as_double(const Ratio& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

// Shared by criteria 7, 8, 10 and 12: 2B on l2, depth 4, horizon 10^4, with
// the command line's default family.
struct Constructed {
  ShiftOperator T{constant_weights(2.0), SpaceSpec::lp(2)};
  DenseSequence Y{SpaceSpec::lp(2)};
  static constexpr int depth = 4;
  static constexpr std::int64_t horizon = 10000;
  static constexpr std::int64_t margin = 2048;
  ConstructionPlan plan;
  HCVector v;
  std::vector<HittingReport> hits;

  Constructed() {
    std::int64_t width = 1;
    for (int l = 1; l <= depth; ++l)
      if (!Y.item(l).empty()) width = std::max(width, Y.item(l).max_index() + 1);
    const SetFamily family = dyadic_block_family(depth + 4, default_family_base(depth + 4, width));
    plan = select_subsequence(T, family, Y, depth, horizon);
    v = assemble_vector(plan, T, horizon + margin);
    std::vector<Ball> balls;
    for (int l = 1; l <= depth; ++l) balls.push_back({plan.targets[static_cast<std::size_t>(l - 1)], std::ldexp(1.0, -l)});
    hits = hitting_times(T, v.x, balls, horizon);
  }

  const IndexSet& level_set(int l) const { return plan.family.at(plan.selected[static_cast<std::size_t>(l - 1)]); }
};

const Constructed& constructed() {
  static const Constructed c;
  return c;
}

Outcome density_chain() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240611);
  std::vector<std::pair<std::string, IndexSet>> sets;
  for (int i = 0; i < 40; ++i) {
    const std::int64_t period = std::uniform_int_distribution<std::int64_t>(2, 97)(rng);
    std::vector<std::int64_t> residues;
    for (std::int64_t r = 0; r < period; ++r)
      if (std::bernoulli_distribution(0.3)(rng)) residues.push_back(r);
    if (residues.empty()) residues.push_back(0);
    sets.emplace_back("periodic", IndexSet::periodic(period, residues, std::uniform_int_distribution<int>(0, 500)(rng)));
  }
  for (int i = 0; i < 40; ++i) {
    std::vector<std::pair<BigInt, BigInt>> blocks;
    std::int64_t at = std::uniform_int_distribution<std::int64_t>(0, 50)(rng);
    while (at < 100000) {
      const std::int64_t len = std::uniform_int_distribution<std::int64_t>(1, 2000)(rng);
      blocks.emplace_back(at, at + len - 1);
      at += len + std::uniform_int_distribution<std::int64_t>(1, 5000)(rng);
    }
    sets.emplace_back("block", IndexSet::intervals(blocks));
  }
  for (int i = 0; i < 20; ++i) {
    std::vector<std::int64_t> d;
    for (int q = 0; q < 4; ++q) d.push_back(std::uniform_int_distribution<std::int64_t>(0, 10)(rng));
    std::sort(d.begin(), d.end());
    const auto p = make_prescribed_density_set(Ratio(d[0], 10), Ratio(d[1], 10), Ratio(d[2], 10), Ratio(d[3], 10));
    sets.emplace_back("prescribed", p.set);
  }
  int failures = 0;
  std::string first;
  for (const auto& [kind, set] : sets) {
    const DensityReport r = estimate_densities(set, 100000, {10, 100, 1000});
    const bool ok = r.lower_banach <= r.lower_density && r.lower_density <= r.upper_density &&
                    r.upper_density <= r.upper_banach && r.chain_holds();
    if (!ok && failures++ == 0) first = kind + " " + set.to_text();
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 10.0, std::to_string(sets.size()) + " sets, " + std::to_string(failures) +
                                            " chain failures" + (first.empty() ? "" : " (" + first + ")") + ", " +
                                            fmt(secs) + " s"};
}

Outcome prescribed_densities() {
  const Ratio want[4] = {Ratio(0), Ratio(1, 5), Ratio(1, 2), Ratio(1)};
  const auto p = make_prescribed_density_set(want[0], want[1], want[2], want[3]);
  DensityOptions o;
  o.burn_in = p.burn_in;
  const DensityReport r = estimate_densities(p.set, p.horizon, p.window_grid, o);
  const Ratio got[4] = {r.lower_banach, r.lower_density, r.upper_density, r.upper_banach};
  double worst = 0;
  std::string values;
  for (int i = 0; i < 4; ++i) {
    worst = std::max(worst, std::abs(as_double(got[i]) - as_double(want[i])));
    values += (i ? ", " : "") + fmt(as_double(got[i]));
  }
  return {worst <= 0.05, "(" + values + ") at horizon " + std::to_string(p.horizon) + ", max error " + fmt(worst)};
}

// Interval definition of S scanned directly.
bool s_oracle(std::int64_t m) {
  std::int64_t p = 10;
  for (std::int64_t j = 1; j <= 17 && p - j < m; ++j, p *= 10)
    for (std::int64_t l = std::max<std::int64_t>(1, m / p - 1); l <= m / p + 1; ++l)
      if (m > l * p - j && m < l * p + j) return true;
  return false;
}

Outcome counterexample_weights_check() {
  const std::int64_t n_max = 100000;
  const auto w = counterexample_weights();
  // Multiply the weights one at a time; every partial product is a power of
  // two of small magnitude, so doubles are exact.
  double product = 1.0;
  std::int64_t mismatches = 0, iff_mismatches = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    product *= w->weight(n);
    if (product != std::ldexp(1.0, static_cast<int>(product_exponent(n)))) ++mismatches;
    if ((product == 1.0) != !s_oracle(n)) ++iff_mismatches;
  }
  return {mismatches == 0 && iff_mismatches == 0,
          std::to_string(mismatches) + " product mismatches, " + std::to_string(iff_mismatches) +
              " iff mismatches for n <= 10^5"};
}

Outcome fact1() {
  const auto t0 = Clock::now();
  const auto r = verify_fact1(6, 100);
  const double secs = seconds_since(t0);
  return {r.ok && r.violations.empty() && secs < 60.0, std::to_string(r.cases) + " cases, " +
                                                            std::to_string(r.violations.size()) + " violations, " +
                                                            fmt(secs) + " s"};
}

Outcome block_family() {
  const auto f = build_block_family(3, 3);
  int failed = 0;
  for (const auto& c : verify_block_conditions(f)) failed += c.ok ? 0 : 1;
  const auto sym = check_gap_family_symbolic(f);
  bool banach = true;
  std::string ratios;
  for (int k = 1; k <= 2; ++k) {
    const auto b = banach_lower_bound_check(f, k);
    const Ratio floor = (Ratio(1) - Ratio(1, b.l0)) / Ratio(k == 1 ? 100 : 10000);
    banach = banach && b.ok && b.ratio >= floor && b.shifted_ratio >= floor;
    ratios += " k=" + std::to_string(k) + ": " + std::to_string(b.count) + "/" + std::to_string(b.s);
  }
  return {failed == 0 && sym.ok && banach, std::to_string(f.blocks.size()) + " blocks, " + std::to_string(failed) +
                                               " failed conditions, symbolic gaps " + (sym.ok ? "ok" : sym.violation) +
                                               ";" + ratios};
}

Outcome dj_scan() {
  const std::int64_t horizon = 1000000;
  const std::vector<int> js{1, 2, 3, 4, 5};
  const auto scans = dj_density_scan(js, horizon);
  // Pointwise nesting from the product exponents directly.
  const auto c = product_exponents(1, horizon);
  std::int64_t nest = 0;
  for (std::size_t j = 1; j < js.size(); ++j) {
    const auto bigger = d_set(js[j - 1]).bitmap(1, horizon);
    const auto smaller = d_set(js[j]).bitmap(1, horizon);
    for (std::size_t i = 0; i < smaller.size(); ++i) {
      if (smaller[i] && !bigger[i]) ++nest;
      if (static_cast<bool>(smaller[i]) != (c[i] >= static_cast<std::uint32_t>(js[j]))) ++nest;
    }
  }
  bool monotone = true, bounds = true;
  std::int64_t e_bad = 0, e_checked = 0;
  for (std::size_t j = 0; j < scans.size(); ++j) {
    bounds = bounds && scans[j].bound_respected;
    for (const auto& row : scans[j].rows)
      if (row.decay_bound < 1.0) bounds = bounds && as_double(row.ratio) <= row.decay_bound;
    e_bad += static_cast<std::int64_t>(scans[j].e_violations.size());
    e_checked += scans[j].e_checked;
    if (j > 0)
      for (std::size_t r = 0; r < scans[j].rows.size(); ++r)
        monotone = monotone && scans[j].rows[r].ratio <= scans[j - 1].rows[r].ratio;
  }
  return {nest == 0 && monotone && bounds && e_bad == 0,
          "j=1..5 to 10^6: " + std::to_string(nest) + " nesting mismatches, densities " +
              (monotone ? "non-increasing" : "NOT monotone") + ", " + std::to_string(e_checked) +
              " E_j samples with " + std::to_string(e_bad) + " outside, decay bound " + (bounds ? "respected" : "VIOLATED")};
}

Outcome constructor_certificate() {
  const auto& c = constructed();
  const auto r = verify_orbit_bounds(c.v, c.T, c.horizon);
  std::int64_t checked = 0;
  bool complete = true;
  for (const auto& lv : r.levels) {
    checked += lv.checked;
    complete = complete && lv.checked == static_cast<std::int64_t>(c.level_set(lv.l).members(0, c.horizon).size());
  }
  const bool ok = r.ok && complete && r.levels.size() == 4u && r.truncation_verified && r.truncation_term < 1e-6;
  return {ok, std::to_string(checked) + " orbit points over 4 levels, truncation term " + fmt(r.truncation_term) +
                  (r.ok ? ", all within bound" : ", VIOLATIONS")};
}

Outcome hitting_densities() {
  const auto& c = constructed();
  bool ok = true;
  std::string detail;
  for (int l = 1; l <= c.depth; ++l) {
    const auto& rep = c.hits[static_cast<std::size_t>(l - 1)];
    std::int64_t missing = 0;
    for (auto n : c.level_set(l).members(0, c.horizon))
      if (!std::binary_search(rep.times.begin(), rep.times.end(), n)) ++missing;
    const int k = c.plan.selected[static_cast<std::size_t>(l - 1)];
    const std::int64_t g = c.plan.family.at(k).members(0, 1 << 22)[1] - c.plan.family.at(k).members(0, 1 << 22)[0];
    const bool dense = rep.densities.lower_density > Ratio(1, 2 * g);
    ok = ok && missing == 0 && dense && !rep.truncated;
    detail += (l > 1 ? "; " : "") + std::string("l=") + std::to_string(l) + " k=" + std::to_string(k) + " missing " +
              std::to_string(missing) + ", lower density " + fmt(as_double(rep.densities.lower_density)) +
              " vs 0.5/" + std::to_string(g);
  }
  return {ok, detail};
}

Outcome correlation() {
  const IndexSet A = IndexSet::periodic(3, {0});
  // Same windows as the command line default: the densest window of length 1000.
  const auto dens = estimate_densities(A, 3000, {1000});
  const auto r = correlation_scan(A, Ratio(1, 2), 30, banach_windows(dens));
  const double delta = as_double(r.delta);
  bool eta_ok = true;
  for (std::int64_t m = 1; 3 * m <= 30; ++m)
    eta_ok = eta_ok && std::abs(as_double(r.eta[static_cast<std::size_t>(3 * m - 1)]) - 1.0 / 3) <= 1e-3;
  const double bound = (1 - delta * 0.5) / (delta * 0.5);
  const bool ok = std::abs(delta - 1.0 / 3) <= 1e-3 && eta_ok && r.F_evidence.syndetic && r.F_evidence.gap_bound == 3 &&
                  r.antichain.size() <= 5 && static_cast<double>(r.antichain.size()) <= bound + 1e-9;
  return {ok, "delta " + fmt(delta) + ", F gap " + std::to_string(r.F_evidence.gap_bound) + ", antichain " +
                  std::to_string(r.antichain.size()) + " <= " + fmt(bound)};
}

Outcome eqbeta() {
  const auto& c = constructed();
  const auto& times = c.hits[0].times;
  const IndexSet A = IndexSet::explicit_list(std::span<const std::int64_t>(times));
  const auto w = bilateral_constant_weights(2.0);
  double worst = 0;
  for (auto n : times) {
    const auto s = eqbeta_sums(*w, 2.0, A, n, c.horizon);
    worst = std::max({worst, s.left, s.right});
  }
  return {worst <= 1.0 && !times.empty(),
          std::to_string(times.size()) + " sampled n, largest sum " + fmt(worst)};
}

Outcome series_mixing() {
  const auto a = frequent_hc_series_test(*constant_weights(2.0), 2.0, 10000);
  const auto rp = ratio_power_weights(2.0);
  const auto b = frequent_hc_series_test(*rp, 2.0, 10000);
  const auto m = mixing_test(*rp, 10000);
  const bool ok = std::abs(a.partial_sum - 1.0 / 3) <= 1e-6 && a.converging && !b.converging && m.tends_to_infinity;
  return {ok, "w=2: " + fmt(a.partial_sum) + " (" + a.label() + "); ratio-power: " + b.label() + ", " + m.label()};
}

Outcome return_sets() {
  const auto& c = constructed();
  int found = 0, pairs = 0;
  std::int64_t worst_gap = 0;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j) {
      ++pairs;
      const Ball U{c.Y.item(i), 0.5}, V{c.Y.item(j), 0.5};
      const auto r = return_set(c.T, U, V, c.horizon, 8, 64);
      if (r.evidence.syndetic && r.evidence.gap_bound <= 64) ++found;
      worst_gap = std::max(worst_gap, r.evidence.gap_bound);
    }
  return {found == pairs, std::to_string(found) + "/" + std::to_string(pairs) +
                              " ball pairs with a syndetic subset, largest gap " + std::to_string(worst_gap)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& binary) {
  const fs::path root = fs::temp_directory_path() / "hyperorbit-acceptance";
  fs::remove_all(root);
  int differing = 0, failed_runs = 0;
  std::size_t files = 0;
  std::string first;
  for (const auto& sub : cli::subcommands()) {
    std::vector<fs::path> dirs;
    for (const char* tag : {"w1a", "w1b", "w8a", "w8b"}) {
      const fs::path dir = root / sub / tag;
      const std::string workers = tag[1] == '1' ? "1" : "8";
      const std::string cmd =
          "'" + binary + "' --workers " + workers + " --out-dir '" + dir.string() + "' " + sub + " > /dev/null 2>&1";
      const int rc = std::system(cmd.c_str());
      // Verification failures still write outputs; only usage errors count.
      if (rc == -1 || !WIFEXITED(rc) || WEXITSTATUS(rc) == 2) ++failed_runs;
      dirs.push_back(dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const auto name = entry.path().filename();
      if (name == "manifest.txt") continue;
      ++files;
      const std::string want = slurp(entry.path());
      for (std::size_t d = 1; d < dirs.size(); ++d)
        if (!fs::exists(dirs[d] / name) || slurp(dirs[d] / name) != want) {
          if (differing++ == 0) first = sub + "/" + name.string();
        }
    }
    for (std::size_t d = 1; d < dirs.size(); ++d) {
      std::size_t n = 0;
      for ([[maybe_unused]] const auto& e : fs::directory_iterator(dirs[d])) ++n;
      std::size_t n0 = 0;
      for ([[maybe_unused]] const auto& e : fs::directory_iterator(dirs[0])) ++n0;
      if (n != n0 && differing++ == 0) first = sub + " file list";
    }
  }
  fs::remove_all(root);
  return {differing == 0 && failed_runs == 0 && files > 0,
          std::to_string(cli::subcommands().size()) + " subcommands x 4 runs, " + std::to_string(files) +
              " files compared, " + std::to_string(differing) + " differ" + (first.empty() ? "" : " (" + first + ")") +
              ", " + std::to_string(failed_runs) + " failed runs"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to hyperorbit>\n";
    return 2;
  }
  const std::string binary = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"density chain", density_chain},
      {"prescribed densities", prescribed_densities},
      {"counterexample weights", counterexample_weights_check},
      {"fact 1 exhaustive", fact1},
      {"block family", block_family},
      {"D_j scan", dj_scan},
      {"constructor certificate", constructor_certificate},
      {"hitting densities", hitting_densities},
      {"correlation oracle", correlation},
      {"eqbeta sums", eqbeta},
      {"series and mixing tests", series_mixing},
      {"return sets", return_sets},
      {"determinism", [&] { return determinism(binary); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << " ["
              << fmt(seconds_since(t0)) << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
