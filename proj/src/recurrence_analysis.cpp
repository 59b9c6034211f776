#include "hyperorbit/recurrence_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/kernels.hpp"
#include "hyperorbit/parallel.hpp"

namespace hyperorbit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_ball(const Ball& b, const SpaceSpec& space) {
  if (!(b.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "ball radius must be positive");
  if (!(b.center.space() == space))
    throw Error(ErrorKind::SpaceMismatch, b.center.space().to_text() + " vs " + space.to_text());
}

bool log_ball_contains(const Ball& b, const LogSparseVec& v) {
  LogSparseVec d = v;
  d.add(LogSparseVec::from(b.center.scaled(-1.0)));
  return d.log2_norm() < std::log2(b.radius);
}

double max_log2(const LogSparseVec& v) {
  double m = kNegInf;
  for (const auto& e : v.entries()) m = std::max(m, e.log2_abs);
  return m;
}

std::vector<std::int64_t> fitting_grid(std::vector<std::int64_t> grid, std::int64_t horizon) {
  std::erase_if(grid, [horizon](std::int64_t s) { return s < 1 || s > horizon + 1; });
  if (grid.empty()) grid.push_back(std::max<std::int64_t>(1, (horizon + 1) / 2));
  return grid;
}

int rank(const TargetEvidence& e) { return e.frequent ? 3 : e.u_frequent ? 2 : e.reiterative ? 1 : 0; }

const char* rank_label(int r) {
  static const char* names[] = {"no hypercyclicity evidence", "reiteratively hypercyclic", "U-frequently hypercyclic",
                                "frequently hypercyclic"};
  return names[r];
}

}  // namespace

std::vector<HittingReport> hitting_times(const ShiftOperator& T, const LogSparseVec& x, const std::vector<Ball>& targets,
                                         std::int64_t horizon, const HittingOptions& options) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  if (!(x.space() == T.space)) throw Error(ErrorKind::SpaceMismatch, x.space().to_text() + " vs " + T.space.to_text());
  for (const auto& b : targets) check_ball(b, T.space);

  const auto count = static_cast<std::int64_t>(targets.size());
  std::vector<std::vector<std::int64_t>> hits(targets.size());
  const double cap = std::log2(options.overflow_bound);
  std::int64_t last = horizon;
  bool truncated = false;
  LogSparseVec v = x;
  for (std::int64_t n = 0; n <= horizon; ++n) {
    if (max_log2(v) > cap) {
      truncated = true;
      last = n - 1;
      break;
    }
    std::vector<std::uint8_t> in(targets.size(), 0);
#pragma omp parallel for schedule(static) num_threads(workers()) if (count > 1)
    for (std::int64_t t = 0; t < count; ++t) in[static_cast<std::size_t>(t)] = log_ball_contains(targets[static_cast<std::size_t>(t)], v);
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (in[t]) hits[t].push_back(n);
    if (n < horizon) v = v.backward(T, 1);
  }

  std::vector<HittingReport> reports;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    HittingReport r;
    r.target = targets[t];
    r.times = std::move(hits[t]);
    r.horizon = last;
    r.truncated = truncated;
    if (truncated) {
      std::ostringstream msg;
      msg << "orbit entry exceeded " << format_double(options.overflow_bound) << " at n = " << last + 1
          << "; analysis truncated";
      r.warning = msg.str();
    }
    if (last >= 1)
      r.densities = estimate_densities(IndexSet::explicit_list(std::span<const std::int64_t>(r.times)), last,
                                       fitting_grid(options.window_grid, last), options.density);
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<HittingReport> hitting_times(const ShiftOperator& T, const SparseVec& x, const std::vector<Ball>& targets,
                                         std::int64_t horizon, const HittingOptions& options) {
  return hitting_times(T, LogSparseVec::from(x), targets, horizon, options);
}

std::string hitting_times_csv(const std::vector<HittingReport>& reports) {
  std::ostringstream out;
  out << "target_id,n\n";
  for (std::size_t t = 0; t < reports.size(); ++t)
    for (auto n : reports[t].times) out << t + 1 << ',' << n << '\n';
  return out.str();
}

std::string density_table_csv(const std::vector<HittingReport>& reports) {
  std::ostringstream out;
  out << "target_id,lower_density,upper_density,lower_banach,upper_banach\n";
  for (std::size_t t = 0; t < reports.size(); ++t) {
    const auto& d = reports[t].densities;
    out << t + 1 << ',' << to_string(d.lower_density) << ',' << to_string(d.upper_density) << ','
        << to_string(d.lower_banach) << ',' << to_string(d.upper_banach) << '\n';
  }
  return out.str();
}

std::string Classification::label() const {
  std::ostringstream out;
  out << overall << " (evidence at horizon " << horizon << ", theta " << to_string(theta) << ")";
  return out.str();
}

Classification classify(const std::vector<DensityReport>& reports, const Ratio& theta) {
  if (reports.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to classify");
  Classification c;
  c.theta = theta;
  int weakest = 3;
  for (const auto& d : reports) {
    TargetEvidence e;
    e.frequent = d.lower_density > theta;
    e.u_frequent = d.upper_density > theta;
    e.reiterative = d.upper_banach > theta;
    e.label = rank_label(rank(e));
    weakest = std::min(weakest, rank(e));
    c.horizon = std::max(c.horizon, d.horizon);
    c.targets.push_back(e);
  }
  c.overall = rank_label(weakest);
  return c;
}

Classification classify(const std::vector<HittingReport>& reports, const Ratio& theta) {
  std::vector<DensityReport> d;
  for (const auto& r : reports) d.push_back(r.densities);
  return classify(d, theta);
}

std::string ReturnSetReport::label() const {
  std::ostringstream out;
  out << (evidence.syndetic ? "syndetic subset found" : "no syndetic subset found") << " (verified subset of N(U,V), "
      << times.size() << " times, largest gap " << evidence.gap_bound << ", horizon " << evidence.horizon << ")";
  return out.str();
}

ReturnSetReport return_set(const ShiftOperator& T, const Ball& U, const Ball& V, std::int64_t horizon,
                           std::int64_t probe_grid, std::optional<std::int64_t> max_gap) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  if (probe_grid < 1) throw Error(ErrorKind::InvalidArgument, "probe grid must be at least 1");
  check_ball(U, T.space);
  check_ball(V, T.space);

  // Fixed probes: the center and perturbations of size radius/2 along e_i.
  std::vector<SparseVec> probes{U.center};
  const std::int64_t lo = T.space.bilateral() && !U.center.empty() ? std::min<std::int64_t>(U.center.min_index(), 0) : 0;
  const std::int64_t span = (U.center.empty() ? 1 : U.center.max_index() + 1) - lo + 1;
  for (std::int64_t g = 1; g < probe_grid; ++g) {
    SparseVec u = U.center;
    const std::int64_t i = lo + (g - 1) % span;
    const double step = U.radius * 0.5 * (((g - 1) / span) % 2 == 0 ? 1.0 : -1.0);
    u.set(i, u[i] + step);
    if (ball_contains(U.center, U.radius, u)) probes.push_back(std::move(u));
  }
  std::vector<LogSparseVec> fixed;
  for (const auto& u : probes) fixed.push_back(LogSparseVec::from(u));
  const bool invertible = !T.weights->zero_in(1, horizon + span + 1);
  const LogSparseVec cU = LogSparseVec::from(U.center);
  const LogSparseVec cV = LogSparseVec::from(V.center);
  const double log_rU = std::log2(U.radius);

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(horizon + 1), 0), steered(hit.size(), 0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers())
  for (std::int64_t n = 0; n <= horizon; ++n) {
    bool found = false;
    for (const auto& u : fixed)
      if (log_ball_contains(V, u.backward(T, n))) {
        found = true;
        break;
      }
    if (!found && invertible) {
      // u = c_U + S^n (c_V - T^n c_U) satisfies T^n u = c_V exactly.
      LogSparseVec gap = cU.backward(T, n);
      std::vector<LogSparseVec::Entry> flipped = gap.entries();
      for (auto& e : flipped) e.sign = -e.sign;
      gap.set_entries(std::move(flipped));
      gap.add(cV);
      const LogSparseVec push = gap.right_inverse(T, n);
      if (push.log2_norm() < log_rU) {
        LogSparseVec u = cU;
        u.add(push);
        if (log_ball_contains(V, u.backward(T, n))) {
          found = true;
          steered[static_cast<std::size_t>(n)] = 1;
        }
      }
    }
    hit[static_cast<std::size_t>(n)] = found;
  }

  ReturnSetReport r;
  r.probes = static_cast<std::int64_t>(probes.size());
  for (std::int64_t n = 0; n <= horizon; ++n) {
    if (hit[static_cast<std::size_t>(n)]) r.times.push_back(n);
    r.steered += steered[static_cast<std::size_t>(n)];
  }
  if (r.times.empty()) {
    r.evidence.horizon = horizon;
  } else {
    r.evidence = is_syndetic(std::span<const std::int64_t>(r.times), horizon, max_gap);
  }
  return r;
}

WmInclusionReport wm_inclusion_check(const ShiftOperator& T, const LogSparseVec& x, const Ball& U, const Ball& V,
                                     std::int64_t n, std::int64_t horizon, std::int64_t max_pairs) {
  if (n < 0 || horizon < 0) throw Error(ErrorKind::InvalidArgument, "n and horizon must be non-negative");
  check_ball(U, T.space);
  check_ball(V, T.space);
  WmInclusionReport r;
  r.n = n;
  // s is a visit when T^s x ∈ U and T^{s+n} x ∈ V.
  std::vector<LogSparseVec> orbit;
  LogSparseVec v = x;
  for (std::int64_t s = 0; s <= horizon + n; ++s) {
    orbit.push_back(v);
    v = v.backward(T, 1);
  }
  for (std::int64_t s = 0; s <= horizon; ++s)
    if (log_ball_contains(U, orbit[static_cast<std::size_t>(s)]) &&
        log_ball_contains(V, orbit[static_cast<std::size_t>(s + n)]))
      r.visits.push_back(s);

  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  for (auto s1 : r.visits)
    for (auto s2 : r.visits)
      if (s1 - s2 + n >= 0 && static_cast<std::int64_t>(pairs.size()) < max_pairs) pairs.emplace_back(s1, s2);
  std::vector<std::uint8_t> ok(pairs.size(), 0);
  const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers())
  for (std::int64_t i = 0; i < count; ++i) {
    const auto [s1, s2] = pairs[static_cast<std::size_t>(i)];
    const LogSparseVec& u = orbit[static_cast<std::size_t>(s2)];
    ok[static_cast<std::size_t>(i)] = log_ball_contains(U, u) && log_ball_contains(V, u.backward(T, s1 - s2 + n));
  }
  r.pairs_checked = count;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (ok[i])
      ++r.pairs_verified;
    else
      r.failures.push_back(pairs[i]);
  }
  return r;
}

bool CorrelationReport::in_F(std::int64_t k) const { return std::binary_search(F.begin(), F.end(), k); }

std::string CorrelationReport::to_csv() const {
  std::ostringstream out;
  out << "k,eta,in_F\n";
  for (std::size_t k = 1; k <= eta.size(); ++k)
    out << k << ',' << to_string(eta[k - 1]) << ',' << (in_F(static_cast<std::int64_t>(k)) ? 1 : 0) << '\n';
  return out.str();
}

std::vector<std::pair<std::int64_t, std::int64_t>> banach_windows(const DensityReport& report) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const auto& w : report.per_window) out.emplace_back(w.upper_position, w.s);
  return out;
}

CorrelationReport correlation_scan(const IndexSet& A, const Ratio& epsilon, std::int64_t k_max,
                                   const std::vector<std::pair<std::int64_t, std::int64_t>>& windows) {
  if (!(epsilon > Ratio(0) && epsilon < Ratio(1))) throw Error(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
  if (windows.empty()) throw Error(ErrorKind::InvalidArgument, "no windows");
  if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be at least 1");
  std::int64_t lo = std::numeric_limits<std::int64_t>::max(), hi = 0;
  for (auto [m, s] : windows) {
    if (m < 0 || s < 1) throw Error(ErrorKind::InvalidArgument, "windows need m >= 0 and s >= 1");
    lo = std::min(lo, m);
    hi = std::max(hi, m + s - 1 + k_max);
  }
  const auto bits = A.bitmap(lo, hi);
  const auto prefix = kernels::omp::prefix_counts(bits);
  auto in = [&](std::int64_t i) { return bits[static_cast<std::size_t>(i - lo)] != 0; };

  CorrelationReport r;
  r.epsilon = epsilon;
  r.windows = windows;
  for (auto [m, s] : windows) {
    const Ratio d(prefix[static_cast<std::size_t>(m + s - lo)] - prefix[static_cast<std::size_t>(m - lo)], s);
    r.delta = std::max(r.delta, d);
  }
  if (r.delta == Ratio(0)) throw Error(ErrorKind::NoDensity, "A has no members in the supplied windows");

  r.eta.assign(static_cast<std::size_t>(k_max), Ratio(0));
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers())
  for (std::int64_t k = 1; k <= k_max; ++k) {
    Ratio best(0);
    for (auto [m, s] : windows) {
      std::int64_t c = 0;
      for (std::int64_t i = m; i < m + s; ++i) c += in(i) && in(i + k);
      best = std::max(best, Ratio(c, s));
    }
    r.eta[static_cast<std::size_t>(k - 1)] = best;
  }

  const Ratio threshold = (Ratio(1) - epsilon) * r.delta * r.delta;
  for (std::int64_t k = 1; k <= k_max; ++k)
    if (r.eta[static_cast<std::size_t>(k - 1)] > threshold) r.F.push_back(k);
  if (!r.F.empty()) {
    r.F_evidence = is_syndetic(std::span<const std::int64_t>(r.F), k_max);
  } else {
    r.F_evidence.horizon = k_max;
  }

  // Greedy R ⊆ [0, k_max] whose pairwise differences avoid F.
  for (std::int64_t c = 0; c <= k_max; ++c)
    if (std::none_of(r.antichain.begin(), r.antichain.end(), [&](std::int64_t a) { return r.in_F(c - a); }))
      r.antichain.push_back(c);
  r.antichain_bound = (Ratio(1) - r.delta * (Ratio(1) - epsilon)) / (r.delta * epsilon);
  return r;
}

AlphaProfile AlphaProfile::ones() {
  return {[](std::int64_t n) { return n >= 1 ? 1.0 : 0.0; }, 1.0, std::nullopt, "ones"};
}

AlphaProfile AlphaProfile::harmonic() {
  return {[](std::int64_t n) { return n >= 1 ? 1.0 / static_cast<double>(n) : 0.0; }, 0.5, std::nullopt, "harmonic"};
}

AlphaProfile AlphaProfile::inverse_weight_products(WeightPtr w, double p) {
  const double C = std::pow(w->sup_bound(), -p);
  return {[w, p](std::int64_t n) { return n >= 1 ? std::exp2(-p * w->log_product(n)) : 0.0; }, C, std::nullopt,
          "inverse-weight-products " + w->to_text() + " p " + format_double(p)};
}

std::string BetaReport::to_csv() const {
  std::ostringstream out;
  out << "n,beta\n";
  for (std::size_t i = 0; i < n.size(); ++i) out << n[i] << ',' << format_double(beta[i]) << '\n';
  return out.str();
}

BetaReport beta_sequence(const IndexSet& A, const AlphaProfile& alpha, std::int64_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  if (!(alpha.C > 0.0)) throw Error(ErrorKind::InvalidArgument, "ratio constant C must be positive");
  // Sampled indices: a dense stretch around 0 and a geometric sweep to the horizon.
  std::vector<std::int64_t> sample;
  for (std::int64_t n = -64; n <= 64; ++n) sample.push_back(n);
  for (std::int64_t n = 128; n <= horizon; n *= 2) sample.push_back(n);
  for (auto n : sample) {
    const double a = alpha.alpha(n), prev = alpha.alpha(n - 1);
    if (!(a >= 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha_" + std::to_string(n) + " is negative");
    if (alpha.N && n >= *alpha.N) {
      if (a != 0.0) throw Error(ErrorKind::InvalidArgument, "alpha_" + std::to_string(n) + " must vanish at or past N");
    } else if (a < alpha.C * prev * (1.0 - 1e-12)) {
      throw Error(ErrorKind::InvalidArgument, "alpha_" + std::to_string(n) + " < C alpha_" + std::to_string(n - 1));
    }
  }

  BetaReport r;
  for (std::int64_t n = 1; n <= horizon; ++n) r.alpha_partial_sum += alpha.alpha(n);
  const auto members = A.members(0, horizon);
  r.n = members;
  r.beta = kernels::omp::beta_values(members, members, horizon, alpha.alpha);

  std::vector<std::int64_t> prefixes;
  for (std::int64_t h = horizon; h >= 1 && prefixes.size() < 8; h /= 2) prefixes.push_back(h);
  std::reverse(prefixes.begin(), prefixes.end());
  for (auto h : prefixes) {
    BetaGrowth g;
    g.prefix = h;
    const auto upto = std::vector<std::int64_t>(members.begin(), std::upper_bound(members.begin(), members.end(), h));
    const auto b = h == horizon ? r.beta : kernels::omp::beta_values(upto, upto, h, alpha.alpha);
    for (std::size_t i = 0; i < upto.size(); ++i)
      if (b[i] > g.max_beta) {
        g.max_beta = b[i];
        g.argmax = upto[i];
      }
    r.growth.push_back(g);
  }
  r.growth_detected = r.growth.size() >= 2;
  for (std::size_t i = 1; i < r.growth.size(); ++i)
    r.growth_detected = r.growth_detected && r.growth[i].max_beta > r.growth[i - 1].max_beta;
  return r;
}

EqbetaSums eqbeta_sums(const WeightSequence& w, double p, const IndexSet& A, std::int64_t n, std::int64_t horizon) {
  if (!(p >= 1.0)) throw Error(ErrorKind::InvalidArgument, "p must be at least 1");
  if (!A.contains(n)) throw Error(ErrorKind::InvalidArgument, std::to_string(n) + " is not in A");
  if (!w.bilateral()) throw Error(ErrorKind::InvalidArgument, "the left sum needs a bilateral weight sequence");
  if (auto z = w.zero_in(1 - n, std::max<std::int64_t>(horizon - n, 0)))
    throw Error(ErrorKind::ZeroWeight, "w_" + std::to_string(*z) + " = 0");
  EqbetaSums s;
  for (auto m : A.members(0, horizon)) {
    if (m < n) {
      s.left += std::exp2(p * w.log2_product(m - n + 1, 0));
      ++s.left_terms;
    } else if (m > n) {
      s.right += std::exp2(-p * w.log2_product(1, m - n));
      ++s.right_terms;
    }
  }
  return s;
}

}  // namespace hyperorbit
