#pragma once

#include <optional>

#include "gact/constructions.hpp"

namespace gact {

// Factor pipeline over an odometer truncation: realizes the block map
// G/G_level -> G/N_G(H) supplied by the almost-normality certificate and
// feeds it to build_factor inside the level quotient group.
struct FactorPipeline {
  int level = 0;
  FiniteGSet level_system_gset;     // X: the level quotient with counting measure
  SubgroupHandle h_image;           // H's image in the level group
  SubgroupHandle h_image_on_y;      // H's image in Y's own image group
  std::vector<int> phi;             // X -> block indices (build_factor order)
  std::vector<int> block_of_certificate;  // certificate conjugate -> block index
  FactorResult factor;              // Y and audits
  XhPartition partition_of_y;       // stabilizer classification of Y
  UrsIrsReport urs_of_y;            // atoms and weights of Y
  std::vector<bool> yh_mask;        // Y_H inside Y
};

// Requires a Yes almost-normality report with certificate level <= level.
FactorPipeline run_factor_pipeline(const LevelSystem& ls,
                                   const AlmostNormalityReport& h_report, int level);

// Extension pipeline: free complement, coset system of Gamma, orbit
// extension of the factor's Y, and the audits of the freeness statement.
struct ExtensionPipeline {
  FreeComplementSearch gamma_search;
  FiniteQuotient gamma_quotient;
  FiniteGSet gamma_cosets;
  int y0 = 0;
  ExtensionResult extension;
  // No nonidentity element of H fixes y0 while acting trivially on the
  // coset coordinate (the finite form of H cap R(G_y) = 1).
  bool residual_certificate_trivial = false;
};

ExtensionPipeline run_extension_pipeline(const LevelSystem& ls,
                                         const AlmostNormalityReport& h_report,
                                         const FactorPipeline& fp,
                                         std::size_t index_cap = 100000);

// Action of an arbitrary group element on the extension's points: the
// product of its induced action on Y and its coset action on G/Gamma,
// restricted to the orbit.
Permutation extension_action(const LevelSystem& ls, const FactorPipeline& fp,
                             const ExtensionPipeline& ep, const GroupElement& g);

// Round trip: re-factor the extension by H and compare with Y.
struct RoundTrip {
  FactorResult refactor;            // extension / ~
  std::vector<int> mediating;       // refactor quotient -> Y
  bool reproduces_y = false;        // equivariant bijection onto Y
};

RoundTrip refactor_extension(const LevelSystem& ls,
                             const AlmostNormalityReport& h_report,
                             const FactorPipeline& fp, const ExtensionPipeline& ep);

}  // namespace gact
