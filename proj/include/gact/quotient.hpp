#pragma once

#include <map>
#include <string>
#include <vector>

#include "gact/group.hpp"
#include "gact/subgroup_spec.hpp"

namespace gact {

// The coset space G/H for an oracle-tagged subgroup spec, with the left
// multiplication action of every labeled generator recorded as a coset
// permutation. Representative 0 is always the identity coset.
struct FiniteQuotient {
  SubgroupSpec source;
  std::vector<GroupElement> reps;  // BFS discovery order, reps[0] = identity coset
  // Lookup by canonical representative; empty when the spec has no
  // canonical form (oracle scan is used instead).
  std::map<GroupElement, int> rep_index;
  // generator_images[k] is the coset permutation of family.generators()[k].
  std::vector<Permutation> generator_images;

  std::size_t index() const { return reps.size(); }

  // Coset index of an arbitrary element's coset g*H (exact, via the oracle).
  int coset_of(const GroupFamily& family, const GroupElement& g) const;

  // Left action of an arbitrary element on a coset index.
  int act(const GroupFamily& family, const GroupElement& g, int coset) const;

  // Coset permutation of an arbitrary element.
  Permutation action_of(const GroupFamily& family, const GroupElement& g) const;
};

// Enumerates the cosets of spec in the family by BFS over generators.
// Requires an exact membership oracle; throws Error if the index exceeds
// index_cap or the oracle is missing.
FiniteQuotient quotient_by_subgroup(const GroupFamily& family, const SubgroupSpec& spec,
                                    std::size_t index_cap = 100000);

}  // namespace gact
