#include "hyperorbit/counterexample_c0.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperorbit/errors.hpp"
#include "hyperorbit/kernels.hpp"
#include "hyperorbit/parallel.hpp"

namespace hyperorbit {

namespace {

constexpr std::int64_t kPow10[19] = {1,
                                     10,
                                     100,
                                     1000,
                                     10000,
                                     100000,
                                     1000000,
                                     10000000,
                                     100000000,
                                     1000000000,
                                     10000000000,
                                     100000000000,
                                     1000000000000,
                                     10000000000000,
                                     100000000000000,
                                     1000000000000000,
                                     10000000000000000,
                                     100000000000000000,
                                     1000000000000000000};

// n within distance < radius of some l·10^k with l >= 1.
bool near_multiple(std::int64_t n, std::int64_t p, std::int64_t radius) {
  const std::int64_t q = n / p, r = n % p;
  return (q >= 1 && r < radius) || p - r < radius;
}

}  // namespace

bool s_contains(std::int64_t m) {
  if (m < 1) return false;
  for (int j = 1; j <= 18; ++j) {
    const std::int64_t p = kPow10[j];
    if (p - j >= m) return false;
    if (near_multiple(m, p, j)) return true;
  }
  return s_contains(BigInt(m));
}

std::vector<SWitness> s_witnesses(const BigInt& m) {
  std::vector<SWitness> out;
  if (m < 1) return out;
  for (unsigned j = 1;; ++j) {
    const BigInt& p = pow10(j);
    if (p - j >= m) break;
    BigInt q = m / p, r = m % p;
    if (q >= 1 && r < j) out.push_back({j, q});
    if (p - r < j) out.push_back({j, q + 1});
  }
  return out;
}

bool s_contains(const BigInt& m) {
  if (m < 1) return false;
  if (fits_int64(m) && m < kPow10[18]) return s_contains(to_int64(m));
  for (unsigned j = 1;; ++j) {
    const BigInt& p = pow10(j);
    if (p - j >= m) return false;
    BigInt r = m % p;
    if ((r < j && m >= p) || p - r < j) return true;
  }
}

IndexSet s_set() {
  return IndexSet::derived("kind derived\nname s-set\n", [](const BigInt& n) { return s_contains(n); },
                           [](std::int64_t n) { return s_contains(n); });
}

std::int64_t product_exponent(std::int64_t n) {
  std::int64_t c = 0;
  while (n - c >= 1 && s_contains(n - c)) ++c;
  return c;
}

BigInt product_exponent(const BigInt& n) {
  if (fits_int64(n)) return product_exponent(to_int64(n));
  BigInt c = 0;
  while (s_contains(BigInt(n - c))) ++c;
  return c;
}

std::vector<std::uint32_t> product_exponents(std::int64_t lo, std::int64_t hi) {
  return kernels::omp::run_lengths(lo, hi, [](std::int64_t n) { return s_contains(n); });
}

namespace {

class CounterexampleWeights final : public WeightSequence {
 public:
  double weight(std::int64_t k) const override { return std::ldexp(1.0, static_cast<int>(std::max<double>(log2_weight(k), -4000))); }
  double sup_bound() const override { return 2.0; }
  std::string to_text() const override { return "counterexample-c0"; }

  double log2_weight(std::int64_t k) const override {
    check_index(k);
    if (s_contains(k)) return 1.0;
    if (s_contains(k - 1)) return -static_cast<double>(product_exponent(k - 1));
    return 0.0;
  }

  double log2_product(std::int64_t a, std::int64_t b) const override {
    return static_cast<double>(*exact_log2_product(a, b));
  }

  std::optional<std::int64_t> exact_log2_product(std::int64_t a, std::int64_t b) const override {
    if (a > b) return 0;
    check_index(a);
    return product_exponent(b) - product_exponent(a - 1);
  }
};

}  // namespace

WeightPtr counterexample_weights() { return std::make_shared<CounterexampleWeights>(); }

// ---------------------------------------------------------------------------

BigInt Block::step() const { return pow10(static_cast<unsigned>(2 * k)); }

TowerIndex Block::min() const { return j == 0 ? TowerIndex(0) : TowerIndex::pow10_plus(j0); }

TowerIndex Block::max() const {
  return j == 0 ? TowerIndex(0) : TowerIndex::pow10_plus(j0, step() * BigInt(l0 - 1));
}

SetFamily BlockFamily::as_set_family() const {
  // Tower exponents are at least 10^102, so tower blocks hold no
  // materializable members and the explicit lists below are exact.
  SetFamily family;
  family.label = label;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<BigInt> members;
    for (const auto& b : blocks) {
      if (b.j == 0 || b.k != k || !b.min().finite()) continue;
      for (std::int64_t l = 0; l < b.l0; ++l) members.push_back(b.min().value() + b.step() * BigInt(l));
    }
    family.sets.push_back(IndexSet::explicit_list(std::move(members)));
  }
  return family;
}

namespace {

struct Prior {
  TowerIndex max_f;      // max of F_0 ∪ ... ∪ F_j
  std::int64_t max_phi;  // max of phi(1..j), 0 when j = 0
};

Prior prior_of(const BlockFamily& family, std::size_t upto) {
  Prior p{TowerIndex(0), 0};
  for (std::size_t i = 0; i <= upto && i < family.blocks.size(); ++i) {
    const Block& b = family.blocks[i];
    if (b.max() > p.max_f) p.max_f = b.max();
    p.max_phi = std::max<std::int64_t>(p.max_phi, b.k);
  }
  return p;
}

bool cond2(const TowerIndex& j0, int k, const Prior& p) {
  return TowerIndex::pow10_plus(j0) >= p.max_f + BigInt(k + p.max_phi);
}
bool cond3(const TowerIndex& j0, int j, int k, std::int64_t l0) {
  return j0 >= TowerIndex(j + 1) && j0 > TowerIndex(pow10(static_cast<unsigned>(2 * k)) * BigInt(l0) + k);
}
bool cond4(const TowerIndex& j0, int k, const Prior& p) { return j0 > p.max_f + BigInt(p.max_phi + 2 * k); }

}  // namespace

BlockFamily build_block_family(int k_max, int reps) {
  if (k_max < 1 || reps < 1) throw Error(ErrorKind::InvalidArgument, "k_max and reps must be at least 1");
  if (k_max > 1000) throw Error(ErrorKind::InvalidArgument, "k_max above 1000 is not supported");
  BlockFamily family;
  family.k_max = k_max;
  family.reps = reps;
  std::ostringstream label;
  label << "counterexample blocks: phi cycles 1.." << k_max << ", " << reps << " repetitions (truncated)";
  family.label = label.str();
  family.blocks.push_back(Block{0, 0, TowerIndex(0), 1});

  Prior prior{TowerIndex(0), 0};
  for (int j = 0; j < k_max * reps; ++j) {
    const int k = j % k_max + 1;
    const std::int64_t l0 = j + 1;
    TowerIndex j0 = prior.max_f + BigInt(prior.max_phi + 2 * k + 1);
    j0 = std::max(j0, TowerIndex(pow10(static_cast<unsigned>(2 * k)) * BigInt(l0) + k + 1));
    j0 = std::max(j0, TowerIndex(j + 1));
    while (!cond2(j0, k, prior)) j0 = j0 + 1;
    Block b{j + 1, k, j0, l0};
    if (b.max() > prior.max_f) prior.max_f = b.max();
    prior.max_phi = std::max<std::int64_t>(prior.max_phi, k);
    family.blocks.push_back(std::move(b));
  }
  return family;
}

std::vector<ConditionCheck> verify_block_conditions(const BlockFamily& family) {
  std::vector<ConditionCheck> out;
  for (std::size_t i = 1; i < family.blocks.size(); ++i) {
    const Block& b = family.blocks[i];
    const int j = static_cast<int>(i) - 1;  // b is F_{j+1}
    const Prior p = prior_of(family, i - 1);
    auto add = [&](int condition, bool ok, std::string detail) {
      out.push_back({b.j, condition, ok, std::move(detail)});
    };
    add(1, b.l0 >= j + 1, "l0 = " + std::to_string(b.l0) + ", need >= " + std::to_string(j + 1));
    add(2, cond2(b.j0, b.k, p), "10^j0 >= " + (p.max_f + BigInt(b.k + p.max_phi)).to_string());
    add(3, cond3(b.j0, j, b.k, b.l0), "j0 = " + b.j0.to_string());
    add(4, cond4(b.j0, b.k, p), "j0 > " + (p.max_f + BigInt(p.max_phi + 2 * b.k)).to_string());
    const TowerIndex below = b.j0 - 1;
    const bool l0_minimal = b.l0 == j + 1;
    const bool j0_minimal = below < TowerIndex(1) || !cond2(below, b.k, p) || !cond3(below, j, b.k, b.l0) ||
                            !cond4(below, b.k, p);
    add(5, l0_minimal && j0_minimal, "(j0, l0) minimal");
  }
  return out;
}

SymbolicGapCheck check_gap_family_symbolic(const BlockFamily& family) {
  SymbolicGapCheck result;
  std::vector<const Block*> blocks;
  for (const auto& b : family.blocks)
    if (b.j > 0 && b.k <= family.k_max) blocks.push_back(&b);
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    const Block& fa = *blocks[a];
    ++result.pairs_checked;
    if (fa.l0 > 1 && fa.step() < fa.k) {
      result.ok = false;
      result.violation = "block F_" + std::to_string(fa.j) + " spacing below " + std::to_string(fa.k);
      return result;
    }
    for (std::size_t c = a + 1; c < blocks.size(); ++c) {
      const Block& fc = *blocks[c];
      ++result.pairs_checked;
      const Block& lo = fa.min() < fc.min() ? fa : fc;
      const Block& hi = fa.min() < fc.min() ? fc : fa;
      const int need = std::max(fa.k, fc.k);
      if (!(hi.min() >= lo.max() + BigInt(need))) {
        result.ok = false;
        result.violation = "F_" + std::to_string(lo.j) + " and F_" + std::to_string(hi.j) + " closer than " +
                           std::to_string(need);
        return result;
      }
    }
  }
  return result;
}

BanachBoundCheck banach_lower_bound_check(int k, std::int64_t l0) {
  if (k < 1 || k > 8) throw Error(ErrorKind::InvalidArgument, "k must lie in [1, 8] for an int64 window");
  if (l0 < 2) {
    throw Error(ErrorKind::InsufficientBlock,
                "block of A_" + std::to_string(k) + " has l0 = " + std::to_string(l0) + " < 2 members");
  }
  const std::int64_t step = kPow10[2 * k];
  BigInt s_big = BigInt(step) * l0;
  if (!fits_int64(s_big)) throw Error(ErrorKind::OutOfRange, "window length overflows int64");
  BanachBoundCheck c;
  c.k = k;
  c.l0 = l0;
  c.s = to_int64(s_big);
  // Members sit at offsets step·l, 0 <= l < l0, from min F.
  c.count = std::min((c.s - 1) / step + 1, l0);
  c.shifted_count = std::min(c.s / step, l0 - 1);
  c.ratio = Ratio(c.count, c.s);
  c.shifted_ratio = Ratio(c.shifted_count, c.s);
  c.bound = Ratio(l0 - 1, l0) / Ratio(step);
  c.ok = c.ratio >= c.bound && c.shifted_ratio >= c.bound;
  return c;
}

BanachBoundCheck banach_lower_bound_check(const BlockFamily& family, int k) {
  const Block* best = nullptr;
  for (const auto& b : family.blocks)
    if (b.j > 0 && b.k == k && (!best || b.l0 > best->l0)) best = &b;
  if (!best) throw Error(ErrorKind::InsufficientBlock, "family has no block for A_" + std::to_string(k));
  BanachBoundCheck c = banach_lower_bound_check(k, best->l0);
  c.block = best->j;
  return c;
}

// ---------------------------------------------------------------------------

Fact1Report verify_fact1(int k_max, std::int64_t l_max) {
  if (k_max < 1 || k_max > 16 || l_max < 1) throw Error(ErrorKind::InvalidArgument, "need 1 <= k_max <= 16, l_max >= 1");
  if (l_max > (kPow10[18] - 1) / kPow10[k_max]) throw Error(ErrorKind::OutOfRange, "l_max * 10^k_max exceeds 10^18");
  std::vector<Fact1Case> cases;
  for (int k = 1; k <= k_max; ++k) {
    int n = 0;
    while (kPow10[n] < k) ++n;
    std::int64_t tail = 0;
    for (int i = 0; i <= n; ++i) tail += kPow10[i];
    for (std::int64_t l = 1; l <= l_max; ++l)
      for (bool plus : {false, true}) {
        Fact1Case c;
        c.k = k;
        c.l = l;
        c.plus = plus;
        c.m = l * kPow10[k] + (plus ? tail : -tail);
        cases.push_back(c);
      }
  }
  const auto total = static_cast<std::int64_t>(cases.size());
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers())
  for (std::int64_t i = 0; i < total; ++i) {
    Fact1Case& c = cases[static_cast<std::size_t>(i)];
    for (const auto& w : s_witnesses(BigInt(c.m))) c.max_witness_j = std::max(c.max_witness_j, w.j);
    c.in_s = c.max_witness_j > 0;
  }
  Fact1Report report;
  report.cases = total;
  for (const auto& c : cases) {
    if (!c.in_s) continue;
    ++report.in_s;
    if (c.max_witness_j <= static_cast<unsigned>(c.k)) report.violations.push_back(c);
  }
  report.ok = report.violations.empty();
  return report;
}

namespace {

int ceil_div30(int j) { return std::max(1, (j + 29) / 30); }

}  // namespace

bool e_contains(int j, std::int64_t n) {
  for (int k = ceil_div30(j); k <= 18; ++k) {
    const std::int64_t p = kPow10[k];
    if (p - 31 * k >= n) return false;
    if (near_multiple(n, p, 31 * k)) return true;
  }
  throw Error(ErrorKind::OutOfRange, "E_j membership above 10^18 is not supported");
}

IndexSet e_set(int j) {
  return IndexSet::derived(
      "kind derived\nname e-set\nj " + std::to_string(j) + "\n",
      [j](const BigInt& n) { return e_contains(j, to_int64(n)); }, [j](std::int64_t n) { return e_contains(j, n); });
}

IndexSet d_set(int j) {
  return IndexSet::derived(
      "kind derived\nname d-set\nj " + std::to_string(j) + "\n",
      [j](const BigInt& n) { return n >= 1 && product_exponent(n) >= j; },
      [j](std::int64_t n) { return n >= 1 && product_exponent(n) >= j; });
}

double dj_decay_bound(int j) {
  const int c = ceil_div30(j);
  return 8.0 * (9.0 * c + 1.0) * std::pow(10.0, 1.0 - c);
}

std::string DjScan::to_csv() const {
  std::ostringstream out;
  out << "N,count,ratio,decay_bound\n";
  for (const auto& r : rows)
    out << r.n << ',' << r.count << ',' << format_double(to_double(r.ratio)) << ',' << format_double(r.decay_bound)
        << '\n';
  return out.str();
}

std::vector<DjScan> dj_density_scan(std::span<const int> js, std::int64_t horizon) {
  if (horizon < 100) throw Error(ErrorKind::InvalidArgument, "D_j scan needs horizon >= 100");
  const auto c = product_exponents(1, horizon);  // c[i] = c(i + 1)
  std::vector<std::int64_t> checkpoints;
  for (std::int64_t n = 100; n <= horizon; n *= 10) {
    checkpoints.push_back(n);
    if (n > horizon / 10) break;
  }
  if (checkpoints.back() != horizon) checkpoints.push_back(horizon);

  std::vector<DjScan> scans;
  for (int j : js) {
    if (j < 1) throw Error(ErrorKind::InvalidArgument, "D_j needs j >= 1");
    DjScan scan;
    scan.j = j;
    scan.horizon = horizon;
    std::vector<std::int64_t> members;
    std::size_t next = 0;
    std::int64_t count = 0;
    for (std::int64_t n = 1; n <= horizon; ++n) {
      if (c[static_cast<std::size_t>(n - 1)] >= static_cast<std::uint32_t>(j)) {
        ++count;
        members.push_back(n);
      }
      if (next < checkpoints.size() && n == checkpoints[next]) {
        DjRow row{n, count, Ratio(count, n), dj_decay_bound(j)};
        if (row.decay_bound < 1.0 && to_double(row.ratio) > row.decay_bound) scan.bound_respected = false;
        scan.rows.push_back(row);
        ++next;
      }
    }
    std::vector<std::uint8_t> in_e(members.size());
    const auto m = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(static) num_threads(workers())
    for (std::int64_t i = 0; i < m; ++i)
      in_e[static_cast<std::size_t>(i)] = e_contains(j, members[static_cast<std::size_t>(i)]) ? 1 : 0;
    scan.e_checked = m;
    for (std::int64_t i = 0; i < m; ++i)
      if (!in_e[static_cast<std::size_t>(i)]) scan.e_violations.push_back(members[static_cast<std::size_t>(i)]);
    scans.push_back(std::move(scan));
  }
  return scans;
}

DjScan dj_density_scan(int j, std::int64_t horizon) {
  const int js[] = {j};
  return dj_density_scan(js, horizon).front();
}

}  // namespace hyperorbit
