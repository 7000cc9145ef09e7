#pragma once

#include <cstddef>
#include <mutex>
#include <optional>
#include <vector>

#include "gact/perm.hpp"

namespace gact {

// A subgroup held as its full sorted element list. At desk scale this makes
// equality, containment and hashing exact and trivial; there is no
// generator-based representation here on purpose.
struct SubgroupHandle {
  std::vector<Permutation> elements;  // sorted, duplicate-free, closed

  std::size_t order() const { return elements.size(); }
  bool contains(const Permutation& p) const;
  bool contains_all(const SubgroupHandle& other) const;
  bool operator==(const SubgroupHandle& rhs) const { return elements == rhs.elements; }
  bool operator<(const SubgroupHandle& rhs) const { return elements < rhs.elements; }
};

// Builds a canonical handle from an arbitrary element list (sorts, dedupes,
// verifies closure under composition and inverse and that the identity is
// present).
SubgroupHandle make_subgroup(int degree, std::vector<Permutation> elements);

// Closes a generating set into a subgroup handle.
SubgroupHandle close_subgroup(int degree, const std::vector<Permutation>& generators,
                              std::size_t cap = 1000000);

// A finitely generated permutation group with exhaustive element
// enumeration by shortlex BFS over generator words.
//
// Enumeration is a fill-once cache: the first call to elements() (or any
// query that needs it) fills it under a lock; afterwards all queries are
// read-only and safe to run concurrently.
class PermGroup {
 public:
  PermGroup() : degree_(0), cap_(1000000) {}  // trivial group on zero points
  PermGroup(int degree, std::vector<Permutation> generators,
            std::size_t enumeration_cap = 1000000);

  PermGroup(const PermGroup& other);
  PermGroup& operator=(const PermGroup& other);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  std::size_t enumeration_cap() const { return cap_; }

  // Canonical sorted element list (identity first, lexicographic on image
  // arrays). Throws Error with the partial count if the cap is exceeded.
  const std::vector<Permutation>& elements() const;

  // Elements in shortlex BFS discovery order. Used wherever a fixed
  // "identity first, shortlex thereafter" ordering is required (coset
  // representatives, block labels).
  const std::vector<Permutation>& elements_shortlex() const;

  std::size_t order() const { return elements().size(); }
  bool contains(const Permutation& p) const;
  SubgroupHandle as_subgroup() const;

 private:
  void ensure_enumerated() const;

  int degree_;
  std::vector<Permutation> generators_;
  std::size_t cap_;

  mutable std::mutex enum_mutex_;
  mutable bool enumerated_ = false;
  mutable std::vector<Permutation> sorted_;
  mutable std::vector<Permutation> shortlex_;
  mutable std::optional<std::string> enum_error_;
};

// ---- perm_core operations ------------------------------------------------

struct OrbitStabilizer {
  std::vector<int> orbit;      // sorted point set
  SubgroupHandle stabilizer;   // elements fixing the point
};

// Orbit of `point` under G and the point stabilizer; |orbit| * |stab| = |G|.
OrbitStabilizer orbit_and_stabilizer(const PermGroup& group, int point);

// Largest subgroup of `group` normalizing `sub`. `sub` must be a subgroup
// of `group`.
SubgroupHandle normalizer(const PermGroup& group, const SubgroupHandle& sub);

struct CentralizerCenter {
  SubgroupHandle centralizer;  // Z_H = {g in G : gh = hg for all h in H}
  SubgroupHandle center;       // C_H = Z_H intersect H
};

CentralizerCenter centralizer_center(const PermGroup& group, const SubgroupHandle& sub);

struct ConjugateOrbit {
  // Conjugates in discovery order: sub itself first, then BFS over
  // generator conjugation.
  std::vector<SubgroupHandle> conjugates;
  SubgroupHandle core;  // intersection of all conjugates; normal in G
};

ConjugateOrbit conjugate_orbit(const PermGroup& group, const SubgroupHandle& sub);

// True iff every non-identity element of `sub` moves every point of
// {0,...,m-1}; the trivial subgroup is regular vacuously.
bool is_regular_subgroup(const SubgroupHandle& sub);

struct ConjugationActionHom {
  std::vector<SubgroupHandle> conjugates;  // the p points of the action
  PermGroup image;                          // image of G in S_p
  SubgroupHandle kernel;                    // intersection of the normalizers
  bool hypothesis_holds;  // union of conjugates not contained in the kernel
};

// The permutation action of G on the conjugates of `sub`, together with its
// kernel and the criterion of the normalizer-intersection test.
ConjugationActionHom conjugation_action_hom(const PermGroup& group,
                                            const SubgroupHandle& sub);

// Every subgroup of `group`, canonical-sorted. Fixpoint closure: starts
// from the trivial subgroup and repeatedly extends each known subgroup by
// one group element, so it is exhaustive for any finite group.
std::vector<SubgroupHandle> subgroup_lattice(const PermGroup& group);

// Index [G : H]; throws if H is not a subgroup of G.
std::size_t subgroup_index(const PermGroup& group, const SubgroupHandle& sub);

// Throws Error unless sub is a subgroup of group.
void require_subgroup(const PermGroup& group, const SubgroupHandle& sub);

}  // namespace gact
