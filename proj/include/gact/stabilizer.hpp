#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gact/gset.hpp"
#include "gact/odometer.hpp"

namespace gact {

// ---- level stabilizers and stabilizer balls --------------------------------

// Stabilizer of a level coset inside the level quotient image of the group.
SubgroupHandle level_stabilizer(const LevelSystem& ls, const Cylinder& c,
                                std::size_t cap = 1000000);

// Ball elements (words of length <= radius over the family generators)
// fixing the whole prefix. This is the finite shadow of the point
// stabilizer: monotone nonincreasing in the prefix depth at fixed radius.
std::vector<GroupElement> stabilizer_ball(const LevelSystem& ls, const PointPrefix& x,
                                          int radius);

// ---- almost normality -------------------------------------------------------

struct AlmostNormalityReport {
  enum class Verdict { Yes, EvidenceNo, Unknown } verdict = Verdict::Unknown;

  // Yes: a verified certificate.
  std::size_t conjugate_count = 0;
  std::size_t normalizer_index = 0;
  int certificate_level = -1;  // 0 = the family generators normalize H
  std::vector<std::vector<GroupElement>> conjugates;  // sorted element lists

  // EvidenceNo / Unknown: conjugate counts of the subgroup image in each
  // level quotient group, levels 1..depth.
  std::vector<std::size_t> level_conjugate_counts;
  int evidence_threshold = 3;

  std::vector<GroupElement> subgroup_elements;  // closed element list of H
};

// Decides almost normality of the finite subgroup H against a chain
// context. "Yes" needs a chain level whose generators all normalize H plus
// a closed conjugate orbit over that level's coset representatives;
// "EvidenceNo" needs strictly increasing conjugate counts across at least
// `evidence_levels` successive level quotients; anything else is Unknown.
AlmostNormalityReport almost_normality_report(const LevelSystem& ls,
                                              const SubgroupSpec& subgroup,
                                              int evidence_levels = 3,
                                              std::size_t closure_cap = 100000);

// Image of a finite subgroup (element list) in a level quotient.
SubgroupHandle subgroup_image_at_level(const LevelSystem& ls, int level,
                                       const std::vector<GroupElement>& elements);

// ---- X_H partition ----------------------------------------------------------

struct XhPartition {
  bool xh_empty = true;

  // Block i corresponds to the conjugate conjugates[i]; conjugates[0] = H.
  std::vector<SubgroupHandle> conjugates;
  std::vector<Permutation> coset_reps;  // g_i with g_i H g_i^-1 = conjugates[i]

  std::vector<int> block_of;            // per point; -1 for points outside X_H
  std::vector<std::vector<int>> blocks; // per block: sorted point lists
  std::vector<int> containing_counts;   // #conjugates contained in each stabilizer
  std::vector<int> exceptional;         // points whose stabilizer contains >= 2 conjugates

  bool partitions_space = false;   // every point lies in exactly one block
  bool factor_map_equivariant = false;
  std::size_t expected_block_count = 0;  // [Q : N_Q(H)]

  std::optional<int> lqa_separation_level;  // least level separating the blocks
};

// Classifies every point of the system by its stabilizer against the
// conjugates of H inside the context group, and builds the factor map to
// the block space when the blocks partition the system.
// When `ls` is given the system must be its `level`-th quotient, and the
// partition additionally reports the least level at which distinct blocks
// share no cylinder.
XhPartition xh_partition(const FiniteGSet& system, const SubgroupHandle& h,
                         const LevelSystem* ls = nullptr, int level = -1);

// ---- holonomy ---------------------------------------------------------------

struct OdometerHolonomyVerdict {
  enum class Kind { Fixed, Witness, Inconclusive } kind = Kind::Inconclusive;
  int horizon = 0;
  int deepest_checked = 0;
  // Witness: a refinement of the probed cylinder that g moves.
  int witness_level = -1;
  int witness_point = -1;
  int witness_image = -1;
};

// Fixed iff g fixes every refinement of the cylinder through the full
// available depth (and the horizon reaches it); a verdict of Witness
// carries a concrete moved refinement replayable through the coset tables.
OdometerHolonomyVerdict odometer_holonomy_check(const LevelSystem& ls,
                                                const GroupElement& g,
                                                const Cylinder& c, int horizon);

// On a finite G-set the atoms are their own neighborhoods, so any element
// of the point stabilizer is Fixed and anything else is a witness.
bool finite_gset_holonomy_fixed(const Permutation& q, int point);

// ---- URS / IRS --------------------------------------------------------------

struct AtomicSubgroupMeasure {
  // Sorted by subgroup; weights positive, summing to 1 over the support.
  std::vector<std::pair<SubgroupHandle, Rational>> atoms;

  Rational weight_of(const SubgroupHandle& sub) const;
};

struct FiniteSummarizeFlags {
  bool xh_full_measure = false;         // (1) mu(X_H) = 1
  bool irs_atom_and_support = false;    // (2) nu({H}) > 0 and nu(Conj H) = 1
  bool exists_trivial_holonomy = false; // (3) some x in X_H has trivial holonomy
  bool xh_is_trivial_holonomy_set = false;  // (4)
  bool almost_normal = false;           // (5)
  bool conj_is_urs = false;             // (6) distinct stabilizers = Conj(H)
};

struct UrsIrsReport {
  std::vector<SubgroupHandle> urs_atoms;  // distinct point stabilizers, sorted
  AtomicSubgroupMeasure irs;
  FiniteSummarizeFlags flags;
  std::size_t conjugate_count = 0;   // |Conj(H)| in the context group
  Rational xh_measure;
  bool irs_conjugation_invariant = false;
};

// Stabilizer statistics of a measured finite system against a reference
// subgroup H of its context group.
UrsIrsReport urs_irs_report(const FiniteGSet& system, const SubgroupHandle& h);

// Topological-freeness shadow: true iff G_x meets every conjugate of H
// trivially at every point (exact on the finite system).
bool stabilizers_meet_conjugates_trivially(const FiniteGSet& system,
                                           const SubgroupHandle& h);

}  // namespace gact
