#pragma once

// Weighted backward shifts B_w (x_n) -> (w_{n+1} x_{n+1}) and their right
// inverses S (x_n) -> (0, x_0/w_1, x_1/w_2, ...), with partial products
// W_n = w_1 ... w_n kept in log2 domain.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperorbit/sequence_spaces.hpp"

namespace hyperorbit {

class WeightSequence {
 public:
  virtual ~WeightSequence() = default;

  /// w_k for k >= 1; bilateral sequences also answer k <= 0.
  virtual double weight(std::int64_t k) const = 0;
  virtual double sup_bound() const = 0;
  virtual bool bilateral() const { return false; }
  virtual std::string to_text() const = 0;

  virtual double log2_weight(std::int64_t k) const;

  /// log2 |w_a ... w_b|; 0 for an empty range (a > b).
  virtual double log2_product(std::int64_t a, std::int64_t b) const;

  /// Exact integer log2 of w_a ... w_b when every product is a power of two.
  virtual std::optional<std::int64_t> exact_log2_product(std::int64_t a, std::int64_t b) const;

  /// Sign of w_a ... w_b.
  virtual int sign_product(std::int64_t a, std::int64_t b) const;

  /// Smallest k in [a, b] with w_k = 0.
  virtual std::optional<std::int64_t> zero_in(std::int64_t a, std::int64_t b) const;

  /// r > 1 with |w_k| >= r for every k >= 1, when known; bounds
  /// ‖S^d y‖ <= r^{-d} ‖y‖ and so makes series tails computable.
  virtual std::optional<double> expansion_rate() const { return std::nullopt; }

  /// w_a ... w_b as a double (may over- or underflow for long ranges).
  double product(std::int64_t a, std::int64_t b) const;

  /// log2 W_n = log2 |w_1 ... w_n|.
  double log_product(std::int64_t n) const { return log2_product(1, n); }

 protected:
  void check_index(std::int64_t k) const;
};

using WeightPtr = std::shared_ptr<const WeightSequence>;

WeightPtr constant_weights(double c);
/// w_k = ((k+1)/k)^{1/p}; W_n = (n+1)^{1/p}.
WeightPtr ratio_power_weights(double p);
/// w_k = values[k-1] for k <= size, the last value afterwards.
WeightPtr table_weights(std::vector<double> values);
/// w_k = c for k >= 1 and 1/c for k <= 0.
WeightPtr bilateral_constant_weights(double c);

struct ShiftOperator {
  WeightPtr weights;
  SpaceSpec space;

  ShiftOperator(WeightPtr w, SpaceSpec s);
};

/// (B^n v)_m = (w_{m+1} ... w_{m+n}) v_{m+n}.
SparseVec apply_backward(const ShiftOperator& T, const SparseVec& v, std::int64_t n);

/// (S^n v)_{m+n} = v_m / (w_{m+1} ... w_{m+n}). Throws ZeroWeight.
SparseVec apply_right_inverse(const ShiftOperator& T, const SparseVec& v, std::int64_t n);

/// Sparse vector stored as (index, sign, log2 |value|), for vectors such as
/// S^n y whose entries underflow a double.
class LogSparseVec {
 public:
  struct Entry {
    std::int64_t index;
    int sign;
    double log2_abs;
  };

  explicit LogSparseVec(SpaceSpec space = {});
  static LogSparseVec from(const SparseVec& v);

  const SpaceSpec& space() const { return space_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// Adds another vector; coinciding indices combine exactly in log domain.
  void add(const LogSparseVec& o);

  LogSparseVec backward(const ShiftOperator& T, std::int64_t n) const;
  LogSparseVec right_inverse(const ShiftOperator& T, std::int64_t n) const;

  double log2_norm() const;

  /// Entries with log2 |value| >= min_log2 as a SparseVec, plus log2 of the
  /// norm of everything dropped (-inf when nothing is dropped).
  std::pair<SparseVec, double> to_sparse(double min_log2 = -1000.0) const;

  /// Entries with index in [lo, hi].
  LogSparseVec restricted(std::int64_t lo, std::int64_t hi) const;

  void set_entries(std::vector<Entry> entries);

 private:
  SpaceSpec space_;
  std::vector<Entry> entries_;
};

struct SeriesEvidence {
  double partial_sum = 0.0;
  double quarter_increment = 0.0;  // sum over n in (H/4, H/2]
  double half_increment = 0.0;     // sum over n in (H/2, H]
  bool converging = false;
  std::int64_t horizon = 0;

  std::string label() const;
};

/// Partial sum of 1 / |W_n|^p for n = 1..horizon and a tail-ratio verdict:
/// converging when the last half adds at most 3/4 of the previous quarter,
/// or when both increments are negligible against the partial sum.
SeriesEvidence frequent_hc_series_test(const WeightSequence& w, double p, std::int64_t horizon);

struct MixingEvidence {
  std::vector<double> segment_minima;  // min log2 W_n over n in [2^i, 2^{i+1})
  bool tends_to_infinity = false;
  double threshold = 0.0;
  std::int64_t horizon = 0;

  std::string label() const;
};

/// Evidence that |W_n| -> inf: minima of log2 W_n over dyadic segments of
/// [1, horizon] are strictly increasing and the last exceeds threshold.
MixingEvidence mixing_test(const WeightSequence& w, std::int64_t horizon, double threshold = 0.0);

}  // namespace hyperorbit
