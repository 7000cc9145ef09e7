#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gact/gset.hpp"
#include "gact/stabilizer.hpp"

namespace gact {

// ---- quotient factor by a finite almost normal subgroup --------------------

struct FactorResult {
  FiniteGSet quotient;    // Y, with the pushforward measure when X has one
  EquivariantMap pi;      // X -> Y
  std::vector<int> block_of_y;  // phi-tilde: Y point -> block index

  std::vector<SubgroupHandle> conjugates;  // block i <-> conjugates[i]
  std::vector<Permutation> coset_reps;     // g_i, identity first, shortlex

  // Per-fiber audit of the construction's stabilizer laws.
  std::vector<std::size_t> fiber_sizes;
  bool phi_factored = false;            // phi-tilde o pi = phi
  bool stabilizer_product_law = false;  // G_y = K_i G_x at every point
  bool fiber_formula = false;           // |fiber| = |H| / |K_i cap G_x|
  bool relation_invariant = false;      // the glue relation is G-invariant
};

// Builds Y = X/~ where x1 ~ x2 iff phi(x1) = phi(x2) = i and x1 = k x2 for
// some k in the conjugate K_i. `phi` must be equivariant for the
// conjugation action on the conjugates of `h` in BFS order (conjugates[0]
// = h); this is audited, as are the stabilizer product law and the fiber
// size formula.
FactorResult build_factor(const FiniteGSet& x, const std::vector<int>& phi,
                          const SubgroupHandle& h);

// The conjugation action of the context group on Conj(H), i.e. the coset
// system G/N_G(H) with blocks in the same order build_factor uses.
FiniteGSet conjugation_block_system(const PermGroup& context, const SubgroupHandle& h,
                                    std::vector<SubgroupHandle>* conjugates_out = nullptr);

// ---- universal property audit ----------------------------------------------

struct UniversalPropertyResult {
  bool precondition_phi = false;       // (i)  phi-tilde' o pi' = phi
  bool precondition_stabilizer = false;  // (ii) K_i fixes every point of block i
  bool has_mediating_map = false;
  std::vector<int> mediating;          // psi: Y -> Y' with psi o pi = pi'

  // Failure evidence: a ~-related pair separated by pi', or the block point
  // and subgroup element violating (ii).
  std::optional<std::pair<int, int>> separated_pair;
  std::optional<std::pair<int, int>> stabilizer_violation;  // (y', element idx)
};

// Checks the factor's universal property against a candidate (Y', pi',
// phi-tilde'): when (i) and (ii) hold a mediating equivariant map Y -> Y'
// is produced and audited; otherwise a failure witness is reported.
UniversalPropertyResult verify_universal_property(const FactorResult& factor,
                                                  const FiniteGSet& x,
                                                  const std::vector<int>& phi,
                                                  const EquivariantMap& pi_prime,
                                                  const std::vector<int>& phi_prime);

// ---- free complement search -------------------------------------------------

struct FreeComplementCertificate {
  SubgroupSpec gamma;
  std::string route;   // "whole-group" | "conjugation-kernel" | "chain-core level N"
  std::size_t index = 0;  // [G : Gamma] by coset enumeration
  bool normality_window_verified = false;  // g x g^-1 stays in Gamma on a ball window
  bool h_intersection_trivial = false;
};

struct FreeComplementSearch {
  std::optional<FreeComplementCertificate> certificate;
  std::vector<std::string> candidates_tried;
};

// Searches for a normal finite-index Gamma with H cap Gamma = {1}:
// the kernel of the conjugation action on Conj(H) first (when the
// almost-normality certificate provides the conjugates), then the cores of
// the chain levels in order.
FreeComplementSearch find_free_complement(const LevelSystem& ls,
                                          const AlmostNormalityReport& h_report,
                                          std::size_t index_cap = 100000,
                                          int normality_window = 4);

// ---- free finite-to-one extension --------------------------------------------

struct ExtensionResult {
  FiniteGSet extension;   // X: one orbit inside Y x G/Gamma
  EquivariantMap pi;      // X -> Y
  std::vector<std::pair<int, int>> point_labels;  // X point -> (y, coset)
  std::size_t gamma_index = 0;

  std::vector<std::size_t> fiber_sizes;
  bool fibers_bounded = false;   // every fiber <= [G : Gamma]
  bool free_over_yh = false;     // trivial stabilizers over Y_H
  bool measure_invariant = false;
};

// Builds the orbit of (y0, identity coset) inside Y x G/Gamma, with the
// product measure restricted and renormalized to the orbit. `yh_points`
// flags which points of Y lie in Y_H; y0 must be one of them.
ExtensionResult build_extension(const FiniteGSet& y, const std::vector<bool>& yh_points,
                                int y0, const FiniteGSet& gamma_cosets);

// ---- fiber lemma --------------------------------------------------------------

struct FiberLemmaResult {
  std::size_t fiber_size = 0;  // m
  std::size_t gy_order = 0;
  bool index_bound_holds = false;  // [G_y : G_x] <= m! for every fiber point
  bool has_free_fiber_point = false;
  bool hom_injective = false;   // G_y -> S_m injective (when a free point exists)
  bool image_regular = false;   // image of G_y in S_m is regular
};

// Checks the fiber stabilizer bound and, when the fiber holds a point with
// trivial stabilizer, the regular embedding of G_y into S_m.
FiberLemmaResult fiber_lemma_check(const EquivariantMap& map,
                                   const PermGroup& source_context, int y);

}  // namespace gact
