#include "hyperorbit/hc_constructor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/kernels.hpp"
#include "hyperorbit/parallel.hpp"

namespace hyperorbit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Coordinate values m / 2^{L-1}, |value| <= L, in enumeration order.
std::vector<double> level_values(int level) {
  struct Key {
    int denominator_exp;
    std::int64_t numerator_abs;
    bool negative;
    double value;
  };
  const std::int64_t scale = std::int64_t{1} << (level - 1);
  std::vector<Key> keys;
  for (std::int64_t m = -level * scale; m <= level * scale; ++m) {
    if (m == 0) continue;
    const int tz = std::min(std::countr_zero(static_cast<std::uint64_t>(m < 0 ? -m : m)), level - 1);
    keys.push_back({level - 1 - tz, m < 0 ? -m : m, m < 0, std::ldexp(static_cast<double>(m), -(level - 1))});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.denominator_exp != b.denominator_exp) return a.denominator_exp < b.denominator_exp;
    if (std::abs(a.value) != std::abs(b.value)) return std::abs(a.value) < std::abs(b.value);
    return !a.negative && b.negative;
  });
  std::vector<double> out;
  for (const auto& k : keys) out.push_back(k.value);
  out.push_back(0.0);
  return out;
}

// v is representable at level L - 1: denominator 2^{L-2}, |v| <= L - 1.
bool in_previous_level(double v, int level) {
  if (level == 1) return false;
  if (v == 0.0) return true;
  const double scaled = std::ldexp(v, level - 2);
  return scaled == std::floor(scaled) && std::abs(v) <= level - 1;
}

}  // namespace

DenseSequence::DenseSequence(SpaceSpec space) : space_(space) {}

void DenseSequence::extend_to(std::int64_t l) const {
  while (static_cast<std::int64_t>(cache_.size()) < l) {
    if (digits_.empty()) {
      ++level_;
      if (level_ > 6) throw Error(ErrorKind::OutOfRange, "dense sequence limited to level 6");
      digits_.assign(static_cast<std::size_t>(level_), 0);
      values_ = level_values(level_);
    }
    const int level = level_;
    bool fresh = level == 1;
    std::vector<SparseVec::Entry> entries;
    for (int c = 0; c < level; ++c) {
      const double v = values_[digits_[static_cast<std::size_t>(c)]];
      if (v != 0.0) entries.emplace_back(c, v);
      if (!in_previous_level(v, level) || (c == level - 1 && v != 0.0)) fresh = true;
    }
    if (fresh) {
      cache_.emplace_back(space_, std::move(entries));
      levels_.push_back(level);
    }
    // Mixed-radix increment, coordinate 0 fastest.
    std::size_t c = 0;
    while (c < digits_.size() && ++digits_[c] == values_.size()) digits_[c++] = 0;
    if (c == digits_.size()) digits_.clear();
  }
}

SparseVec DenseSequence::item(std::int64_t l) const {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "dense sequence index starts at 1");
  std::lock_guard lock(mutex_);
  extend_to(l);
  return cache_[static_cast<std::size_t>(l - 1)];
}

int DenseSequence::level_of(std::int64_t l) const {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "dense sequence index starts at 1");
  std::lock_guard lock(mutex_);
  extend_to(l);
  return levels_[static_cast<std::size_t>(l - 1)];
}

SetFamily dyadic_block_family(int levels, std::int64_t base) {
  if (levels < 1 || levels > 40) throw Error(ErrorKind::InvalidArgument, "dyadic-block levels must lie in [1, 40]");
  if (base < levels) throw Error(ErrorKind::InvalidArgument, "dyadic-block base must be at least the number of levels");
  SetFamily family;
  family.label = "dyadic-block base " + std::to_string(base) + " levels " + std::to_string(levels);
  for (int k = 1; k <= levels; ++k) {
    const std::int64_t g = base << k, o = base << (k - 1);
    family.sets.push_back(IndexSet::periodic(g, {o}, g));
  }
  return family;
}

SetFamily prime_power_family(int levels, std::int64_t base) {
  if (levels < 1 || levels > 1000) throw Error(ErrorKind::InvalidArgument, "prime-power levels must lie in [1, 1000]");
  if (base < levels) throw Error(ErrorKind::InvalidArgument, "prime-power base must be at least the number of levels");
  SetFamily family;
  family.label = "prime-power base " + std::to_string(base) + " levels " + std::to_string(levels);
  std::vector<std::int64_t> primes;
  for (std::int64_t c = 2; static_cast<int>(primes.size()) < levels; ++c)
    if (std::none_of(primes.begin(), primes.end(), [c](std::int64_t p) { return c % p == 0; })) primes.push_back(c);
  for (auto p : primes) family.sets.push_back(IndexSet::powers(p, base, 1));
  return family;
}

std::int64_t default_family_base(int levels, std::int64_t support_width) {
  std::int64_t need = std::max<std::int64_t>({8, levels, support_width});
  std::int64_t b = 1;
  while (b < need) b <<= 1;
  return b;
}

namespace {

const char* roman(int condition) {
  static const char* names[] = {"?", "i", "ii", "iii", "iv"};
  return condition >= 1 && condition <= 4 ? names[condition] : "?";
}

std::int64_t support_width(const SparseVec& y) { return y.empty() ? 1 : y.max_index() + 1; }

// log2 ‖S^d y‖ for d in [0, max_d] and log2 ‖B^d y‖ for d in [0, width).
struct OffsetNorms {
  std::vector<double> forward;
  std::vector<double> backward;
  double log2_norm = kNegInf;
  std::int64_t width = 1;
};

OffsetNorms offset_norms(const ShiftOperator& T, const SparseVec& y, std::int64_t max_d) {
  OffsetNorms t;
  t.width = support_width(y);
  LogSparseVec v = LogSparseVec::from(y);
  t.log2_norm = v.log2_norm();
  t.forward.resize(static_cast<std::size_t>(max_d + 1));
  for (std::int64_t d = 0; d <= max_d; ++d) {
    t.forward[static_cast<std::size_t>(d)] = v.log2_norm();
    v = v.right_inverse(T, 1);
  }
  LogSparseVec u = LogSparseVec::from(y);
  t.backward.resize(static_cast<std::size_t>(t.width));
  for (std::int64_t d = 0; d < t.width; ++d) {
    t.backward[static_cast<std::size_t>(d)] = u.log2_norm();
    u = u.backward(T, 1);
  }
  return t;
}

std::vector<double> powered(const std::vector<double>& logs, double q) {
  std::vector<double> out(logs.size());
  for (std::size_t i = 0; i < logs.size(); ++i) out[i] = logs[i] == kNegInf ? 0.0 : std::exp2(q * logs[i]);
  return out;
}

struct Context {
  const ShiftOperator& T;
  const SetFamily& family;
  std::int64_t horizon;
  std::int64_t reach;  // horizon + tail margin
  std::optional<double> rate;
  bool lp;
  double p;
  std::vector<std::vector<std::int64_t>> members;  // A_k ∩ [0, reach], index k-1
  std::vector<std::int64_t> min_gap;               // smallest gap inside A_k
  std::vector<std::int64_t> centers;               // ∪_k A_k ∩ [0, horizon]
};

struct Target {
  SparseVec y;
  OffsetNorms norms;
};

double exponent_for(const Context& ctx, const Target& t, int k) {
  return ctx.lp && ctx.min_gap[static_cast<std::size_t>(k - 1)] >= t.norms.width ? ctx.p : 1.0;
}

// Σ over members i > reach of ‖S^{i-n} y‖^q, bounded by a geometric series.
double tail_beyond(const Context& ctx, const Target& t, std::int64_t center, double q) {
  if (!ctx.rate || t.norms.log2_norm == kNegInf) return 0.0;
  const double lr = std::log2(*ctx.rate);
  const double first = q * (t.norms.log2_norm - static_cast<double>(ctx.reach - center + 1) * lr);
  return std::exp2(first) / (1.0 - std::exp2(-q * lr));
}

std::vector<std::int64_t> upto(const std::vector<std::int64_t>& sorted, std::int64_t hi) {
  return {sorted.begin(), std::upper_bound(sorted.begin(), sorted.end(), hi)};
}

// Condition i: ‖Σ_{n ∈ A_k, n >= threshold} S^n y‖.
double condition_i(const Context& ctx, const Target& t, int k, std::int64_t threshold) {
  const double q = exponent_for(ctx, t, k);
  double sum = 0.0;
  for (auto n : ctx.members[static_cast<std::size_t>(k - 1)]) {
    if (n < threshold) continue;
    const double l = t.norms.forward[static_cast<std::size_t>(n)];
    if (l != kNegInf) sum += std::exp2(q * l);
  }
  sum += tail_beyond(ctx, t, 0, q);
  return std::pow(sum, 1.0 / q);
}

// Conditions ii and iii: max over centers n of ‖Σ_{i ∈ A_k, i != n} B^n S^i y‖.
double offset_condition(const Context& ctx, const Target& t, int k, const std::vector<std::int64_t>& centers) {
  if (centers.empty() || t.norms.log2_norm == kNegInf) return 0.0;
  const double q = exponent_for(ctx, t, k);
  const auto fwd = powered(t.norms.forward, q);
  const auto bwd = powered(t.norms.backward, q);
  const auto sums = kernels::omp::offset_sums(centers, ctx.members[static_cast<std::size_t>(k - 1)], fwd, bwd);
  double worst = 0.0;
  for (std::size_t c = 0; c < centers.size(); ++c)
    worst = std::max(worst, std::pow(sums[c] + tail_beyond(ctx, t, centers[c], q), 1.0 / q));
  return worst;
}

// Condition iv: max over n ∈ A_k ∩ [0, horizon] of ‖B^n S^n y − y‖.
double condition_iv(const Context& ctx, const Target& t, int k) {
  const auto ns = upto(ctx.members[static_cast<std::size_t>(k - 1)], ctx.horizon);
  if (t.y.empty() || ns.empty()) return 0.0;
  std::vector<double> err(ns.size(), 0.0);
  const LogSparseVec base = LogSparseVec::from(t.y);
  const LogSparseVec minus_y = LogSparseVec::from(t.y.scaled(-1.0));
  const auto count = static_cast<std::int64_t>(ns.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(workers())
  for (std::int64_t i = 0; i < count; ++i) {
    const std::int64_t n = ns[static_cast<std::size_t>(i)];
    LogSparseVec r = base.right_inverse(ctx.T, n).backward(ctx.T, n);
    r.add(minus_y);
    const double l = r.log2_norm();
    err[static_cast<std::size_t>(i)] = l == kNegInf ? 0.0 : std::exp2(l);
  }
  return *std::max_element(err.begin(), err.end());
}

}  // namespace

std::string Certificate::to_line() const {
  std::ostringstream out;
  out << roman(condition) << ',' << l << ',' << k << ',' << j << ',' << format_double(bound) << ','
      << format_double(achieved) << ',' << (tail_verified ? "verified" : "unverified");
  return out.str();
}

std::string ConstructionPlan::to_text() const {
  std::ostringstream out;
  out << "family " << family.label << "\nselected";
  for (int k : selected) out << ' ' << k;
  out << "\nhorizon " << horizon << "\ntail-margin " << tail_margin << '\n';
  for (const auto& n : notes) out << "note " << n << '\n';
  out << "condition,l,k,j,bound,achieved,tail\n";
  for (const auto& c : certificates) out << c.to_line() << '\n';
  return out.str();
}

ConstructionPlan select_subsequence(const ShiftOperator& T, const SetFamily& family, const DenseSequence& Y, int depth,
                                    std::int64_t horizon, const PlanOptions& options) {
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "depth must be at least 1");
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "horizon must be at least 1");
  if (T.space.bilateral()) throw Error(ErrorKind::InvalidArgument, "the constructor handles unilateral shifts only");
  if (!(Y.space() == T.space)) throw Error(ErrorKind::SpaceMismatch, "dense sequence and operator use different spaces");
  if (family.size() < 1) throw Error(ErrorKind::InvalidArgument, "empty family");
  if (options.check_gaps) {
    const GapCheck gaps = check_gap_family(family, family.size(), horizon + options.tail_margin);
    if (!gaps.ok) {
      const auto& v = *gaps.violation;
      throw Error(ErrorKind::InvalidArgument, "family '" + family.label + "' violates the gap property at " +
                                                  v.first.str() + " (A_" + std::to_string(v.first_level) + ") and " +
                                                  v.second.str() + " (A_" + std::to_string(v.second_level) + ")");
    }
  }

  Context ctx{T, family, horizon, horizon + options.tail_margin, T.weights->expansion_rate(),
              T.space.norm == NormKind::Lp, T.space.p, {}, {}, {}};
  std::int64_t widest = 1;
  std::vector<Target> targets;
  for (int l = 1; l <= depth; ++l) {
    SparseVec y = Y.item(l);
    widest = std::max(widest, support_width(y));
    targets.push_back({y, {}});
  }
  if (auto k = T.weights->zero_in(1, ctx.reach + widest))
    throw Error(ErrorKind::ZeroWeight, "w_" + std::to_string(*k) + " = 0");
  for (auto& t : targets) t.norms = offset_norms(T, t.y, ctx.reach);

  for (int k = 1; k <= family.size(); ++k) {
    ctx.members.push_back(family.at(k).members(0, ctx.reach));
    const auto& m = ctx.members.back();
    std::int64_t gap = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = 1; i < m.size(); ++i) gap = std::min(gap, m[i] - m[i - 1]);
    ctx.min_gap.push_back(gap);
    for (auto n : m)
      if (n <= horizon) ctx.centers.push_back(n);
  }
  std::sort(ctx.centers.begin(), ctx.centers.end());
  ctx.centers.erase(std::unique(ctx.centers.begin(), ctx.centers.end()), ctx.centers.end());

  ConstructionPlan plan;
  plan.family = family;
  plan.horizon = horizon;
  plan.tail_margin = options.tail_margin;
  plan.notes.push_back("condition ii checked for n in the family up to the horizon");
  const bool tails = ctx.rate.has_value();
  if (!tails) plan.notes.push_back("tails beyond horizon + margin unverified: weights are not uniformly expanding");

  for (int l = 1; l <= depth; ++l) {
    const Target& target = targets[static_cast<std::size_t>(l - 1)];
    const double tol_small = 1.0 / (l * std::ldexp(1.0, l));
    const double tol = std::ldexp(1.0, -l);
    const int previous = plan.selected.empty() ? 0 : plan.selected.back();
    std::optional<Certificate> failure;
    bool accepted = false;
    for (int k = previous + 1; k <= family.size() && !accepted; ++k) {
      std::vector<Certificate> certs;
      auto record = [&](int condition, int j, double bound, double achieved) {
        certs.push_back({condition, l, k, j, bound, achieved, tails});
        return achieved <= bound;
      };
      bool ok = true;
      for (int j = 1; j <= l && ok; ++j) {
        const int kj = j == l ? k : plan.selected[static_cast<std::size_t>(j - 1)];
        ok = record(1, j, tol_small, condition_i(ctx, targets[static_cast<std::size_t>(j - 1)], kj, k));
      }
      if (ok) ok = record(2, l, tol, offset_condition(ctx, target, k, ctx.centers));
      const auto own = upto(ctx.members[static_cast<std::size_t>(k - 1)], horizon);
      for (int j = 1; j < l && ok; ++j)
        ok = record(3, j, tol_small,
                    offset_condition(ctx, targets[static_cast<std::size_t>(j - 1)], plan.selected[static_cast<std::size_t>(j - 1)], own));
      if (ok) ok = record(4, l, tol, condition_iv(ctx, target, k));
      if (ok) {
        plan.selected.push_back(k);
        plan.targets.push_back(target.y);
        plan.certificates.insert(plan.certificates.end(), certs.begin(), certs.end());
        accepted = true;
      } else {
        failure = certs.back();
      }
    }
    if (!accepted) {
      std::ostringstream msg;
      msg << "no admissible k for level " << l << " among A_" << previous + 1 << "..A_" << family.size();
      if (failure)
        msg << "; condition " << roman(failure->condition) << " fails at k = " << failure->k << " (achieved "
            << format_double(failure->achieved) << " > bound " << format_double(failure->bound) << ")";
      throw Error(ErrorKind::FamilyExhausted, msg.str());
    }
  }
  return plan;
}

HCVector assemble_vector(const ConstructionPlan& plan, const ShiftOperator& T, std::int64_t truncation) {
  if (truncation < 0) throw Error(ErrorKind::InvalidArgument, "negative truncation");
  HCVector v;
  v.plan = plan;
  v.truncation = truncation;
  v.x = LogSparseVec(T.space);
  std::vector<LogSparseVec::Entry> entries;
  for (int l = 1; l <= plan.depth(); ++l) {
    const LogSparseVec y = LogSparseVec::from(plan.targets[static_cast<std::size_t>(l - 1)]);
    for (auto n : plan.family.at(plan.selected[static_cast<std::size_t>(l - 1)]).members(0, truncation)) {
      const LogSparseVec s = y.right_inverse(T, n);
      entries.insert(entries.end(), s.entries().begin(), s.entries().end());
    }
  }
  v.x.set_entries(std::move(entries));
  return v;
}

LogSparseVec orbit_point(const HCVector& v, const ShiftOperator& T, std::int64_t n) {
  const auto& e = v.x.entries();
  const std::int64_t top = e.empty() ? n : std::max(n, e.back().index);
  return v.x.restricted(n, top).backward(T, n);
}

std::string OrbitBoundReport::to_csv() const {
  std::ostringstream out;
  out << "l,k,checked,bound,truncation_term,worst,worst_n,worst_slack,violations\n";
  for (const auto& r : levels)
    out << r.l << ',' << r.k << ',' << r.checked << ',' << format_double(r.bound) << ',' << format_double(truncation_term)
        << ',' << format_double(r.worst) << ',' << r.worst_n << ',' << format_double(r.worst_slack) << ','
        << r.violations.size() << '\n';
  return out.str();
}

OrbitBoundReport verify_orbit_bounds(const HCVector& v, const ShiftOperator& T, std::int64_t horizon) {
  if (v.truncation < horizon) throw Error(ErrorKind::InvalidArgument, "vector truncated below the horizon");
  const ConstructionPlan& plan = v.plan;
  OrbitBoundReport report;

  // Members beyond the truncation contribute Σ_j Σ_{i > truncation} ‖S^{i-n} y_j‖.
  if (auto rate = T.weights->expansion_rate()) {
    const double lr = std::log2(*rate);
    for (const auto& y : plan.targets)
      if (!y.empty())
        report.truncation_term += std::exp2(std::log2(norm(y)) - static_cast<double>(v.truncation - horizon + 1) * lr) /
                                  (1.0 - 1.0 / *rate);
  } else {
    report.truncation_verified = false;
  }

  struct Job {
    int l;
    std::int64_t n;
  };
  std::vector<Job> jobs;
  for (int l = 1; l <= plan.depth(); ++l)
    for (auto n : plan.family.at(plan.selected[static_cast<std::size_t>(l - 1)]).members(0, horizon)) jobs.push_back({l, n});
  std::vector<double> dist(jobs.size(), 0.0);
  const auto count = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers())
  for (std::int64_t i = 0; i < count; ++i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    LogSparseVec d = orbit_point(v, T, job.n);
    d.add(LogSparseVec::from(plan.targets[static_cast<std::size_t>(job.l - 1)].scaled(-1.0)));
    const double l = d.log2_norm();
    dist[static_cast<std::size_t>(i)] = l == kNegInf ? 0.0 : std::exp2(l);
  }

  for (int l = 1; l <= plan.depth(); ++l) {
    LevelBoundReport r;
    r.l = l;
    r.k = plan.selected[static_cast<std::size_t>(l - 1)];
    r.bound = 2.0 * std::ldexp(1.0, 2 - l) + std::ldexp(1.0, -l);
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      if (jobs[i].l != l) continue;
      ++r.checked;
      if (dist[i] > r.worst || r.worst_n < 0) {
        r.worst = dist[i];
        r.worst_n = jobs[i].n;
      }
      if (dist[i] > r.bound + report.truncation_term) r.violations.emplace_back(jobs[i].n, dist[i]);
    }
    r.worst_slack = r.bound + report.truncation_term - r.worst;
    report.ok = report.ok && r.violations.empty();
    report.levels.push_back(std::move(r));
  }
  return report;
}

}  // namespace hyperorbit
