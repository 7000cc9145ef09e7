#pragma once

#include <optional>
#include <vector>

#include "gact/odometer.hpp"
#include "gact/perm_group.hpp"
#include "gact/rational.hpp"

namespace gact {

// A finite G-set: points 0..degree-1 with the images of a fixed generator
// list acting as permutations, plus an optional invariant point measure.
// All stabilizer analysis happens inside the "context group": the
// permutation group the generator images generate.
struct FiniteGSet {
  int degree = 0;
  std::vector<Permutation> generators;
  std::optional<std::vector<Rational>> measure;

  PermGroup context_group(std::size_t cap = 1000000) const {
    return PermGroup(degree, generators, cap);
  }

  bool transitive() const { return generators_act_transitively(degree, generators); }

  // Uniform measure 1/degree on every point.
  void attach_uniform_measure();

  // Throws unless the measure sums to 1 and every generator preserves it.
  void validate_measure() const;
};

// The stabilizer {q in Q : q(x) = x} of a point within an enumerated
// context group.
SubgroupHandle point_stabilizer(const PermGroup& context, int point);

// The coset system G/K as a FiniteGSet together with the coset
// representatives (shortlex discovery order, identity coset first).
struct CosetSystem {
  FiniteGSet gset;
  std::vector<Permutation> reps;
};

CosetSystem coset_action(const PermGroup& group, const SubgroupHandle& sub);

// A surjective equivariant map between finite G-sets over the same
// generator list.
struct EquivariantMap {
  FiniteGSet source;
  FiniteGSet target;
  std::vector<int> point_map;  // size = source.degree

  // Verifies surjectivity and commutation with every generator.
  void validate() const;

  std::vector<std::vector<int>> fibers() const;  // indexed by target point
};

// The permutation of the target induced by a source permutation q (q must
// descend through the map; audited point by point).
Permutation induced_on_target(const EquivariantMap& map, const Permutation& q);

// Stabilizer of a target point taken inside the source context group,
// i.e. {q in Q_source : induced(q) fixes y}.
SubgroupHandle target_point_stabilizer(const EquivariantMap& map,
                                       const PermGroup& source_context, int y);

// Pushforward of the source measure through the map.
std::vector<Rational> pushforward_measure(const EquivariantMap& map);

// The level-i quotient of a LevelSystem as a FiniteGSet (generator images
// at that level, uniform = counting measure).
FiniteGSet level_gset(const LevelSystem& ls, int level, bool with_measure = true);

}  // namespace gact
