#pragma once

#include <string>
#include <vector>

#include "gact/quotient.hpp"
#include "gact/rational.hpp"

namespace gact {

// A descending chain G = G_0 > G_1 > ... of finite-index subgroups given by
// oracle-tagged specs. chain[0] is implicitly the whole group; specs holds
// G_1, G_2, ... in order.
struct GroupChain {
  GroupFamily family;
  std::vector<SubgroupSpec> specs;

  // Verifies nesting on generating elements: every generator of G_{i+1}
  // must pass G_i's membership oracle. Throws Error naming the level.
  void check_nested() const;
};

// A point of the truncated inverse limit: compatible coset indices
// (x_0, ..., x_n), level 0 always 0.
struct PointPrefix {
  std::vector<int> coords;

  int depth() const { return static_cast<int>(coords.size()) - 1; }
  bool operator==(const PointPrefix&) const = default;
};

struct Cylinder {
  int level = 0;
  int coset = 0;
};

// The truncated odometer: one finite quotient per level plus the
// projection maps between consecutive levels. Level 0 is the one-point
// quotient by the whole group.
class LevelSystem {
 public:
  LevelSystem(GroupChain chain, int depth, std::size_t index_cap = 100000);

  const GroupChain& chain() const { return chain_; }
  const GroupFamily& family() const { return chain_.family; }
  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const FiniteQuotient& level(int i) const;
  std::size_t level_size(int i) const { return level(i).index(); }

  // projection(i) maps level-(i+1) coset indices to level-i coset indices.
  const std::vector<int>& projection(int i) const;

  // The basepoint prefix (identity coset at every level).
  PointPrefix basepoint() const;

  // Validates projection-compatibility of a prefix; throws on failure.
  void validate_prefix(const PointPrefix& x) const;

  // Point-wise action of eq. of the group on a prefix; the result is again
  // projection-compatible.
  PointPrefix act(const GroupElement& g, const PointPrefix& x) const;

  // Exact cylinder measure 1/[G : G_i].
  Rational cylinder_measure(const Cylinder& c) const;

  // The odometer metric 2^-n with n the deepest level on which the
  // prefixes agree (they always agree on level 0; equal prefixes at full
  // depth get distance 2^-depth, the finest resolution available).
  Rational metric(const PointPrefix& x, const PointPrefix& y) const;

  // Orbit check of the generator action at each level.
  std::vector<bool> transitivity_per_level() const;

  // Points of level i+1 projecting onto the given level-i coset.
  std::vector<int> cylinder_children(const Cylinder& c) const;

  // Runs the structural invariants: generator images satisfy family
  // relations, projections are equivariant and have constant fiber size,
  // every level action is transitive, level 0 is a single point.
  // Throws Error on any violation.
  void validate() const;

 private:
  GroupChain chain_;
  std::vector<FiniteQuotient> levels_;
  std::vector<std::vector<int>> projections_;
};

// Orbit transitivity for a plain generator-image action (shared with
// FiniteGSet checks).
bool generators_act_transitively(int degree, const std::vector<Permutation>& generators);

}  // namespace gact
