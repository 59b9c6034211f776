#pragma once
// Orbit hitting times N(x, V), recurrence labels from their densities,
// return sets N(U, V), and the correlation / beta-sum machinery for sets of
// positive upper Banach density.
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperorbit/bigint.hpp"
#include "hyperorbit/index_sets.hpp"
#include "hyperorbit/sequence_spaces.hpp"
#include "hyperorbit/weighted_shifts.hpp"

namespace hyperorbit {

/// Open ball {v : ‖v - center‖ < radius}.
struct Ball {
  SparseVec center;
  double radius = 1.0;
};

struct HittingOptions {
  std::vector<std::int64_t> window_grid{10, 100, 1000};
  DensityOptions density;
  /// Stop the orbit once an entry exceeds this magnitude.
  double overflow_bound = 1e300;
};

struct HittingReport {
  Ball target;
  std::vector<std::int64_t> times;  // N(x, V) ∩ [0, horizon]
  DensityReport densities;
  std::int64_t horizon = 0;         // last orbit index examined
  bool truncated = false;
  std::string warning;
};

/// One report per target. The orbit is stepped once per n and kept in log
/// domain, so x may be a constructed vector whose entries underflow a double.
std::vector<HittingReport> hitting_times(const ShiftOperator& T, const LogSparseVec& x, const std::vector<Ball>& targets,
                                         std::int64_t horizon, const HittingOptions& options = {});
std::vector<HittingReport> hitting_times(const ShiftOperator& T, const SparseVec& x, const std::vector<Ball>& targets,
                                         std::int64_t horizon, const HittingOptions& options = {});

/// "target_id,n" rows.
std::string hitting_times_csv(const std::vector<HittingReport>& reports);
/// "target_id,lower_density,upper_density,lower_banach,upper_banach" rows.
std::string density_table_csv(const std::vector<HittingReport>& reports);

struct TargetEvidence {
  bool frequent = false;
  bool u_frequent = false;
  bool reiterative = false;
  std::string label;
};

struct Classification {
  Ratio theta;
  std::int64_t horizon = 0;
  std::vector<TargetEvidence> targets;
  std::string overall;  // weakest label over all targets
  std::string label() const;
};

/// Lower density > theta: frequent; upper density > theta: U-frequent;
/// upper Banach density > theta: reiterative. Evidence at the horizon only.
Classification classify(const std::vector<HittingReport>& reports, const Ratio& theta = Ratio(1, 100));
Classification classify(const std::vector<DensityReport>& reports, const Ratio& theta = Ratio(1, 100));

struct ReturnSetReport {
  std::vector<std::int64_t> times;  // verified subset of N(U, V) ∩ [0, horizon]
  SyndeticityEvidence evidence;
  std::int64_t probes = 0;          // fixed probes besides the steering probe
  std::int64_t steered = 0;         // times verified by the steering probe
  std::string label() const;
};

/// Verified subset of N(U, V): n is kept when some probe u in U has T^n u in V.
/// Probes are the center of U, probe_grid - 1 lattice perturbations of it, and
/// for each n the steering point c_U + S^n (c_V - T^n c_U).
ReturnSetReport return_set(const ShiftOperator& T, const Ball& U, const Ball& V, std::int64_t horizon,
                           std::int64_t probe_grid = 8, std::optional<std::int64_t> max_gap = std::nullopt);

struct WmInclusionReport {
  std::int64_t n = 0;
  std::vector<std::int64_t> visits;  // N(x, U ∩ T^{-n} V) ∩ [0, horizon]
  std::int64_t pairs_checked = 0;
  std::int64_t pairs_verified = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> failures;  // (s1, s2)
  bool ok() const { return pairs_checked == pairs_verified; }
};

/// Audits N(x, U_n) - N(x, U_n) + n ⊆ N(U, V) with U_n = U ∩ T^{-n} V: for up
/// to max_pairs pairs s1, s2 of visits, T^{s2} x is re-stepped s1 - s2 + n
/// times and tested against V.
WmInclusionReport wm_inclusion_check(const ShiftOperator& T, const LogSparseVec& x, const Ball& U, const Ball& V,
                                     std::int64_t n, std::int64_t horizon, std::int64_t max_pairs = 256);

struct CorrelationReport {
  Ratio epsilon;
  Ratio delta;
  std::vector<Ratio> eta;                   // eta[k - 1] = η_k, k = 1..k_max
  std::vector<std::int64_t> F;              // {k <= k_max : η_k > (1 - ε) δ²}
  SyndeticityEvidence F_evidence;
  std::vector<std::pair<std::int64_t, std::int64_t>> windows;  // (m, s): [m, m + s)
  std::vector<std::int64_t> antichain;      // R ⊆ [0, k_max], pairwise differences outside F
  Ratio antichain_bound;                    // (1 - δ(1 - ε)) / (δ ε)
  bool in_F(std::int64_t k) const;
  /// "k,eta,in_F" rows.
  std::string to_csv() const;
};

CorrelationReport correlation_scan(const IndexSet& A, const Ratio& epsilon, std::int64_t k_max,
                                   const std::vector<std::pair<std::int64_t, std::int64_t>>& windows);
/// Windows of maximal density per window length, from estimate_densities.
std::vector<std::pair<std::int64_t, std::int64_t>> banach_windows(const DensityReport& report);

/// Non-negative α with α_n >= C α_{n-1} for n < N and α_n = 0 for n >= N.
struct AlphaProfile {
  std::function<double(std::int64_t)> alpha;
  double C = 1.0;
  std::optional<std::int64_t> N;  // nullopt: +inf
  std::string label;

  /// α_n = 1 for n >= 1.
  static AlphaProfile ones();
  /// α_n = 1/n for n >= 1.
  static AlphaProfile harmonic();
  /// α_n = 1 / |w_1 ... w_n|^p for n >= 1.
  static AlphaProfile inverse_weight_products(WeightPtr w, double p);
};

struct BetaGrowth {
  std::int64_t prefix = 0;  // sums and n truncated to [0, prefix]
  double max_beta = 0.0;
  std::int64_t argmax = -1;
};

struct BetaReport {
  std::vector<std::int64_t> n;
  std::vector<double> beta;         // β_n = Σ_{m ∈ A, m <= horizon} α_{m-n}
  std::vector<BetaGrowth> growth;   // dyadic prefixes ending at the horizon
  double alpha_partial_sum = 0.0;   // Σ_{n <= horizon} α_n
  bool growth_detected = false;     // max β strictly increases along the prefixes
  std::string to_csv() const;
};

/// Throws InvalidArgument when the profile fails the ratio or cutoff
/// condition on the sampled indices.
BetaReport beta_sequence(const IndexSet& A, const AlphaProfile& alpha, std::int64_t horizon);

struct EqbetaSums {
  double left = 0.0;   // Σ_{m<n, m∈A} |w_{m-n+1} ... w_0|^p
  double right = 0.0;  // Σ_{m>n, m∈A, m<=horizon} 1 / |w_1 ... w_{m-n}|^p
  std::int64_t left_terms = 0;
  std::int64_t right_terms = 0;
};

EqbetaSums eqbeta_sums(const WeightSequence& w, double p, const IndexSet& A, std::int64_t n, std::int64_t horizon);

}  // namespace hyperorbit
