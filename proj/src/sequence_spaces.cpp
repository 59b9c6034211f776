#include "hyperorbit/sequence_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hyperorbit/bigint.hpp"
#include "hyperorbit/errors.hpp"

namespace hyperorbit {

SpaceSpec SpaceSpec::lp(double p, Laterality lat) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidArgument, "ℓ^p exponent must satisfy 1 <= p < inf");
  return {NormKind::Lp, p, lat};
}

SpaceSpec SpaceSpec::c0(Laterality lat) { return {NormKind::Sup, 0.0, lat}; }

std::string SpaceSpec::to_text() const {
  std::string out = norm == NormKind::Lp ? "lp " + format_double(p) : "c0";
  return out + (bilateral() ? " bilateral" : " unilateral");
}

SpaceSpec SpaceSpec::parse(const std::string& text) {
  std::istringstream in(text);
  std::string kind, word;
  in >> kind;
  SpaceSpec spec;
  if (kind == "lp") {
    double p = 0;
    if (!(in >> p)) throw Error(ErrorKind::Parse, "missing exponent in space spec '" + text + "'");
    spec = lp(p);
  } else if (kind == "c0") {
    spec = c0();
  } else {
    throw Error(ErrorKind::Parse, "unknown space '" + text + "'");
  }
  if (in >> word) {
    if (word == "bilateral") spec.laterality = Laterality::Bilateral;
    else if (word != "unilateral") throw Error(ErrorKind::Parse, "unknown laterality '" + word + "'");
  }
  return spec;
}

SparseVec::SparseVec(SpaceSpec space) : space_(space) {}

SparseVec::SparseVec(SpaceSpec space, std::vector<Entry> entries) : space_(space) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (auto& [i, v] : entries) {
    check_index(i);
    if (!entries_.empty() && entries_.back().first == i) {
      entries_.back().second += v;
    } else {
      entries_.emplace_back(i, v);
    }
  }
  std::erase_if(entries_, [](const Entry& e) { return e.second == 0.0; });
}

SparseVec SparseVec::basis(SpaceSpec space, std::int64_t index) { return SparseVec(space, {{index, 1.0}}); }

void SparseVec::check_index(std::int64_t index) const {
  if (index < 0 && !space_.bilateral())
    throw Error(ErrorKind::OutOfRange, "negative index " + std::to_string(index) + " in a unilateral space");
}

double SparseVec::operator[](std::int64_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::int64_t i) { return e.first < i; });
  return it != entries_.end() && it->first == index ? it->second : 0.0;
}

void SparseVec::set(std::int64_t index, double value) {
  check_index(index);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::int64_t i) { return e.first < i; });
  if (it != entries_.end() && it->first == index) {
    if (value == 0.0) entries_.erase(it);
    else it->second = value;
  } else if (value != 0.0) {
    entries_.insert(it, {index, value});
  }
}

std::int64_t SparseVec::min_index() const {
  if (entries_.empty()) throw Error(ErrorKind::NoData, "empty vector has no support");
  return entries_.front().first;
}

std::int64_t SparseVec::max_index() const {
  if (entries_.empty()) throw Error(ErrorKind::NoData, "empty vector has no support");
  return entries_.back().first;
}

namespace {

void require_same_space(const SpaceSpec& a, const SpaceSpec& b) {
  if (!(a == b)) throw Error(ErrorKind::SpaceMismatch, a.to_text() + " vs " + b.to_text());
}

SparseVec combine(const SparseVec& a, const SparseVec& b, double sign) {
  require_same_space(a.space(), b.space());
  std::vector<SparseVec::Entry> out;
  out.reserve(a.size() + b.size());
  auto i = a.entries().begin(), j = b.entries().begin();
  while (i != a.entries().end() || j != b.entries().end()) {
    if (j == b.entries().end() || (i != a.entries().end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.entries().end() || j->first < i->first) {
      out.emplace_back(j->first, sign * j->second);
      ++j;
    } else {
      out.emplace_back(i->first, i->second + sign * j->second);
      ++i;
      ++j;
    }
  }
  return SparseVec(a.space(), std::move(out));
}

}  // namespace

SparseVec SparseVec::operator+(const SparseVec& o) const { return combine(*this, o, 1.0); }

SparseVec SparseVec::operator-(const SparseVec& o) const { return combine(*this, o, -1.0); }

SparseVec SparseVec::scaled(double c) const {
  std::vector<Entry> out = entries_;
  for (auto& e : out) e.second *= c;
  return SparseVec(space_, std::move(out));
}

std::string SparseVec::to_text() const {
  std::ostringstream out;
  out << "space " << space_.to_text() << '\n';
  for (const auto& [i, v] : entries_) out << i << ' ' << format_double(v) << '\n';
  return out.str();
}

SparseVec SparseVec::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  SpaceSpec space;
  bool have_space = false;
  std::vector<Entry> entries;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("space ", 0) == 0) {
      space = SpaceSpec::parse(line.substr(6));
      have_space = true;
      continue;
    }
    std::istringstream fields(line);
    std::int64_t i = 0;
    double v = 0;
    if (!(fields >> i >> v)) throw Error(ErrorKind::Parse, "bad vector line '" + line + "'");
    entries.emplace_back(i, v);
  }
  if (!have_space) throw Error(ErrorKind::Parse, "vector text lacks a 'space' header");
  return SparseVec(space, std::move(entries));
}

double norm(const SparseVec& v) {
  // Scale by the largest magnitude so large or tiny entries do not overflow.
  double top = 0.0;
  for (const auto& e : v.entries()) top = std::max(top, std::abs(e.second));
  if (top == 0.0 || v.space().norm == NormKind::Sup) return top;
  const double p = v.space().p;
  double sum = 0.0;
  for (const auto& e : v.entries()) sum += std::pow(std::abs(e.second) / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double log2_norm(const SpaceSpec& space, std::span<const double> logs) {
  double top = -std::numeric_limits<double>::infinity();
  for (double l : logs) top = std::max(top, l);
  if (logs.empty() || space.norm == NormKind::Sup || !std::isfinite(top)) return top;
  double sum = 0.0;
  for (double l : logs) sum += std::exp2(space.p * (l - top));
  return top + std::log2(sum) / space.p;
}

bool ball_contains(const SparseVec& center, double radius, const SparseVec& v) {
  require_same_space(center.space(), v.space());
  return norm(v - center) < radius;
}

}  // namespace hyperorbit
