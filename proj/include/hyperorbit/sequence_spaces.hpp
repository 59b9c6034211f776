#pragma once

// Finitely supported real sequences over ℓ^p or c₀, unilateral (indices >= 0)
// or bilateral (all integer indices).

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hyperorbit {

enum class NormKind { Lp, Sup };
enum class Laterality { Unilateral, Bilateral };

struct SpaceSpec {
  NormKind norm = NormKind::Lp;
  double p = 2.0;
  Laterality laterality = Laterality::Unilateral;

  static SpaceSpec lp(double p, Laterality lat = Laterality::Unilateral);
  static SpaceSpec c0(Laterality lat = Laterality::Unilateral);

  bool bilateral() const { return laterality == Laterality::Bilateral; }
  bool operator==(const SpaceSpec&) const = default;

  /// "lp 2 unilateral", "c0 bilateral".
  std::string to_text() const;
  static SpaceSpec parse(const std::string& text);
};

/// Sparse vector with entries sorted by index and no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::int64_t, double>;

  explicit SparseVec(SpaceSpec space = {});
  SparseVec(SpaceSpec space, std::vector<Entry> entries);

  static SparseVec basis(SpaceSpec space, std::int64_t index);

  const SpaceSpec& space() const { return space_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  double operator[](std::int64_t index) const;
  void set(std::int64_t index, double value);

  std::int64_t min_index() const;
  std::int64_t max_index() const;

  SparseVec operator+(const SparseVec& o) const;
  SparseVec operator-(const SparseVec& o) const;
  SparseVec scaled(double c) const;

  bool operator==(const SparseVec& o) const { return space_ == o.space_ && entries_ == o.entries_; }

  /// Header line "space <spec>" then "index value" lines.
  std::string to_text() const;
  static SparseVec parse(const std::string& text);

 private:
  void check_index(std::int64_t index) const;

  SpaceSpec space_;
  std::vector<Entry> entries_;
};

double norm(const SparseVec& v);

/// Norm from log2 |v_n| of the nonzero entries; finite even when every
/// entry underflows a double. Returns log2 of the norm (-inf for no entries).
double log2_norm(const SpaceSpec& space, std::span<const double> log2_magnitudes);

/// norm(v - center) < radius, strictly. Throws SpaceMismatch.
bool ball_contains(const SparseVec& center, double radius, const SparseVec& v);

}  // namespace hyperorbit
