#pragma once
// Textual names for sets, weights, operators and families, shared by the
// command line and config files.
//
// Sets:      evens odds all empty squares factorial-blocks s-set
//            multiples:q  periodic:p:r1,r2[:start]  powers:b
//            explicit:1,5,9  intervals:0-4,10-12  e-set:j  d-set:j
//            prescribed:r1,r2,r3,r4  file:path (a serialized set)
// Weights:   constant:c  ratio-power:p  bilateral-constant:c
//            counterexample-c0  table:v1,v2,...  table-file:path
// Operators: rolewicz<c> (c B on lp 2), or a weight spec on a given space
// Families:  dyadic:levels[:base]  prime-power:levels[:base]  c0-blocks:kmax:reps
#include <optional>
#include <string>

#include "hyperorbit/index_sets.hpp"
#include "hyperorbit/sequence_spaces.hpp"
#include "hyperorbit/weighted_shifts.hpp"

namespace hyperorbit {

struct NamedSet {
  std::string name;
  IndexSet set;
  /// Present for prescribed-density sets: the generator's advertised horizon,
  /// burn-in and window grid.
  std::optional<PrescribedDensitySet> prescribed;
};

NamedSet parse_set(const std::string& name);
/// Inverse of IndexSet::to_text for every kind the library produces.
IndexSet parse_set_text(const std::string& text);

WeightPtr parse_weights(const std::string& spec);
ShiftOperator parse_operator(const std::string& spec, const SpaceSpec& space = {});
SetFamily parse_family(const std::string& spec);

}  // namespace hyperorbit
