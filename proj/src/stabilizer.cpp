#include "gact/stabilizer.hpp"

#include <algorithm>
#include <set>

#include "gact/error.hpp"

namespace gact {

SubgroupHandle level_stabilizer(const LevelSystem& ls, const Cylinder& c,
                                std::size_t cap) {
  const FiniteQuotient& lvl = ls.level(c.level);
  if (c.coset < 0 || c.coset >= static_cast<int>(lvl.index()))
    throw Error("cylinder coset out of range");
  PermGroup q(static_cast<int>(lvl.index()), lvl.generator_images, cap);
  return point_stabilizer(q, c.coset);
}

std::vector<GroupElement> stabilizer_ball(const LevelSystem& ls, const PointPrefix& x,
                                          int radius) {
  ls.validate_prefix(x);
  std::vector<GroupElement> out;
  for (const auto& g : ball(ls.family(), radius))
    if (ls.act(g, x) == x) out.push_back(g);
  return out;
}

namespace {

bool normalizes(const GroupFamily& family, const GroupElement& g,
                const std::vector<GroupElement>& sorted_elements) {
  GroupElement ginv = family.inverse(g);
  for (const auto& h : sorted_elements) {
    GroupElement conj = family.multiply(family.multiply(g, h), ginv);
    if (!std::binary_search(sorted_elements.begin(), sorted_elements.end(), conj))
      return false;
  }
  return true;
}

std::vector<GroupElement> conjugate_list(const GroupFamily& family,
                                         const GroupElement& g,
                                         const std::vector<GroupElement>& elements) {
  GroupElement ginv = family.inverse(g);
  std::vector<GroupElement> out;
  out.reserve(elements.size());
  for (const auto& h : elements)
    out.push_back(family.multiply(family.multiply(g, h), ginv));
  std::sort(out.begin(), out.end());
  return out;
}

bool has_strict_growth_run(const std::vector<std::size_t>& counts, int run_levels) {
  int run = 1;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    run = counts[i] > counts[i - 1] ? run + 1 : 1;
    if (run >= run_levels) return true;
  }
  return false;
}

}  // namespace

SubgroupHandle subgroup_image_at_level(const LevelSystem& ls, int level,
                                       const std::vector<GroupElement>& elements) {
  const FiniteQuotient& lvl = ls.level(level);
  std::vector<Permutation> perms;
  perms.reserve(elements.size());
  for (const auto& e : elements) perms.push_back(lvl.action_of(ls.family(), e));
  std::sort(perms.begin(), perms.end());
  perms.erase(std::unique(perms.begin(), perms.end()), perms.end());
  return SubgroupHandle{std::move(perms)};
}

AlmostNormalityReport almost_normality_report(const LevelSystem& ls,
                                              const SubgroupSpec& subgroup,
                                              int evidence_levels,
                                              std::size_t closure_cap) {
  const GroupFamily& family = ls.family();
  AlmostNormalityReport out;
  out.evidence_threshold = evidence_levels;
  out.subgroup_elements = subgroup.closed_elements(family, closure_cap);
  const auto& h_elements = out.subgroup_elements;

  // Certificate search: the whole group first (H normal), then each chain
  // level whose generators all normalize H.
  for (int level = 0; level <= ls.depth(); ++level) {
    const SubgroupSpec& level_spec =
        level == 0 ? ls.level(0).source : ls.chain().specs[level - 1];
    bool all_normalize = true;
    for (const auto& g : level_spec.generating_elements(family))
      if (!normalizes(family, g, h_elements)) {
        all_normalize = false;
        break;
      }
    if (!all_normalize) continue;

    // Close the conjugate orbit over the level's coset representatives;
    // every g in G factors as (representative) * (element normalizing H),
    // so this is the complete orbit.
    std::set<std::vector<GroupElement>> distinct;
    std::vector<std::vector<GroupElement>> order;
    for (const auto& r : ls.level(level).reps) {
      std::vector<GroupElement> conj = conjugate_list(family, r, h_elements);
      if (distinct.insert(conj).second) order.push_back(std::move(conj));
    }
    // Orbit closure audit: conjugating any listed subgroup by any family
    // generator must land back in the list.
    for (const auto& c : order)
      for (const auto& g : family.generators()) {
        std::vector<GroupElement> moved = conjugate_list(family, g.element, c);
        if (!distinct.count(moved)) throw Error("conjugate orbit failed to close");
      }
    out.verdict = AlmostNormalityReport::Verdict::Yes;
    out.certificate_level = level;
    out.conjugates = std::move(order);
    out.conjugate_count = out.conjugates.size();
    out.normalizer_index = out.conjugate_count;
    return out;
  }

  // No certificate: collect conjugate counts of the image subgroup in each
  // level quotient group.
  for (int level = 1; level <= ls.depth(); ++level) {
    SubgroupHandle image = subgroup_image_at_level(ls, level, h_elements);
    PermGroup q(static_cast<int>(ls.level_size(level)),
                ls.level(level).generator_images);
    out.level_conjugate_counts.push_back(conjugate_orbit(q, image).conjugates.size());
  }
  if (has_strict_growth_run(out.level_conjugate_counts, evidence_levels))
    out.verdict = AlmostNormalityReport::Verdict::EvidenceNo;
  else
    out.verdict = AlmostNormalityReport::Verdict::Unknown;
  return out;
}

XhPartition xh_partition(const FiniteGSet& system, const SubgroupHandle& h,
                         const LevelSystem* ls, int level) {
  XhPartition out;
  PermGroup context = system.context_group();
  require_subgroup(context, h);

  ConjugateOrbit orbit = conjugate_orbit(context, h);
  out.conjugates = orbit.conjugates;
  const int m = static_cast<int>(out.conjugates.size());

  // Representatives g_i with g_i H g_i^-1 = conjugates[i]: identity first,
  // shortlex thereafter.
  for (int i = 0; i < m; ++i) {
    bool found = false;
    for (const auto& g : context.elements_shortlex()) {
      std::vector<Permutation> conj;
      Permutation ginv = g.inverse();
      for (const auto& e : h.elements) conj.push_back(g * e * ginv);
      std::sort(conj.begin(), conj.end());
      if (SubgroupHandle{conj} == out.conjugates[i]) {
        out.coset_reps.push_back(g);
        found = true;
        break;
      }
    }
    if (!found) throw Error("conjugate without representative");
  }

  out.expected_block_count = subgroup_index(context, normalizer(context, h));

  out.block_of.assign(system.degree, -1);
  out.containing_counts.assign(system.degree, 0);
  out.blocks.assign(m, {});
  for (int x = 0; x < system.degree; ++x) {
    SubgroupHandle stab = point_stabilizer(context, x);
    for (int i = 0; i < m; ++i) {
      if (stab == out.conjugates[i]) {
        out.block_of[x] = i;
        out.blocks[i].push_back(x);
      }
      if (stab.contains_all(out.conjugates[i])) ++out.containing_counts[x];
    }
    if (out.containing_counts[x] >= 2) out.exceptional.push_back(x);
  }
  out.xh_empty = true;
  for (const auto& b : out.blocks)
    if (!b.empty()) out.xh_empty = false;

  out.partitions_space =
      std::all_of(out.block_of.begin(), out.block_of.end(), [](int b) { return b >= 0; });

  // Factor map equivariance: a generator sends block i onto the block of
  // the conjugated subgroup.
  out.factor_map_equivariant = !out.xh_empty;
  for (std::size_t k = 0; k < system.generators.size() && out.factor_map_equivariant;
       ++k) {
    const Permutation& gamma = system.generators[k];
    Permutation ginv = gamma.inverse();
    std::vector<int> conj_image(m);
    for (int i = 0; i < m; ++i) {
      std::vector<Permutation> conj;
      for (const auto& e : out.conjugates[i].elements) conj.push_back(gamma * e * ginv);
      std::sort(conj.begin(), conj.end());
      auto it = std::find(out.conjugates.begin(), out.conjugates.end(),
                          SubgroupHandle{conj});
      if (it == out.conjugates.end()) {
        out.factor_map_equivariant = false;
        break;
      }
      conj_image[i] = static_cast<int>(it - out.conjugates.begin());
    }
    if (!out.factor_map_equivariant) break;
    for (int x = 0; x < system.degree; ++x) {
      if (out.block_of[x] < 0) continue;
      if (out.block_of[gamma.apply(x)] != conj_image[out.block_of[x]]) {
        out.factor_map_equivariant = false;
        break;
      }
    }
  }

  // Least level at which distinct blocks share no cylinder.
  if (ls != nullptr) {
    if (level < 0 || level > ls->depth() ||
        system.degree != static_cast<int>(ls->level_size(level)))
      throw Error("system does not match the level quotient");
    for (int j = 0; j <= level && !out.lqa_separation_level; ++j) {
      // Ancestor of each deepest-level point at level j.
      std::vector<int> ancestor(system.degree);
      for (int x = 0; x < system.degree; ++x) {
        int a = x;
        for (int i = level - 1; i >= j; --i) a = ls->projection(i)[a];
        ancestor[x] = a;
      }
      std::map<int, int> cylinder_block;
      bool separated = true;
      for (int x = 0; x < system.degree && separated; ++x) {
        if (out.block_of[x] < 0) continue;
        auto [it, inserted] = cylinder_block.emplace(ancestor[x], out.block_of[x]);
        if (!inserted && it->second != out.block_of[x]) separated = false;
      }
      if (separated) out.lqa_separation_level = j;
    }
  }
  return out;
}

OdometerHolonomyVerdict odometer_holonomy_check(const LevelSystem& ls,
                                                const GroupElement& g,
                                                const Cylinder& c, int horizon) {
  OdometerHolonomyVerdict v;
  v.horizon = horizon;
  const GroupFamily& family = ls.family();

  // The cylinder itself must be fixed, otherwise it is its own witness.
  if (ls.level(c.level).act(family, g, c.coset) != c.coset) {
    v.kind = OdometerHolonomyVerdict::Kind::Witness;
    v.witness_level = c.level;
    v.witness_point = c.coset;
    v.witness_image = ls.level(c.level).act(family, g, c.coset);
    return v;
  }

  int deepest = std::min(horizon, ls.depth());
  v.deepest_checked = deepest;

  // Descendants of the cylinder, level by level.
  std::vector<int> current{c.coset};
  for (int j = c.level + 1; j <= deepest; ++j) {
    std::vector<int> next;
    const auto& proj = ls.projection(j - 1);
    std::vector<char> wanted(ls.level_size(j - 1), 0);
    for (int p : current) wanted[p] = 1;
    for (std::size_t x = 0; x < proj.size(); ++x)
      if (wanted[proj[x]]) next.push_back(static_cast<int>(x));
    Permutation action = ls.level(j).action_of(family, g);
    for (int x : next) {
      if (action.apply(x) != x) {
        v.kind = OdometerHolonomyVerdict::Kind::Witness;
        v.witness_level = j;
        v.witness_point = x;
        v.witness_image = action.apply(x);
        return v;
      }
    }
    current = std::move(next);
  }

  // Everything fixed down to `deepest`: Fixed only if the horizon covered
  // the full available depth.
  if (horizon >= ls.depth())
    v.kind = OdometerHolonomyVerdict::Kind::Fixed;
  else
    v.kind = OdometerHolonomyVerdict::Kind::Inconclusive;
  return v;
}

bool finite_gset_holonomy_fixed(const Permutation& q, int point) {
  // Atoms of a finite system are clopen neighborhoods of themselves.
  return q.apply(point) == point;
}

Rational AtomicSubgroupMeasure::weight_of(const SubgroupHandle& sub) const {
  for (const auto& [k, w] : atoms)
    if (k == sub) return w;
  return Rational(0);
}

UrsIrsReport urs_irs_report(const FiniteGSet& system, const SubgroupHandle& h) {
  if (!system.measure) throw Error("measure missing");
  system.validate_measure();
  UrsIrsReport out;

  PermGroup context = system.context_group();
  require_subgroup(context, h);

  std::vector<SubgroupHandle> stabs;
  stabs.reserve(system.degree);
  for (int x = 0; x < system.degree; ++x)
    stabs.push_back(point_stabilizer(context, x));

  std::map<SubgroupHandle, Rational> weights;
  for (int x = 0; x < system.degree; ++x) {
    auto [it, inserted] = weights.emplace(stabs[x], (*system.measure)[x]);
    if (!inserted) it->second += (*system.measure)[x];
  }
  for (const auto& [k, w] : weights) {
    out.urs_atoms.push_back(k);
    out.irs.atoms.emplace_back(k, w);
  }

  ConjugateOrbit orbit = conjugate_orbit(context, h);
  out.conjugate_count = orbit.conjugates.size();
  std::set<SubgroupHandle> conj_set(orbit.conjugates.begin(), orbit.conjugates.end());

  out.xh_measure = Rational(0);
  bool xh_nonempty = false;
  bool all_points_trivial_holonomy = true;
  bool xh_point_with_trivial_holonomy = false;
  std::set<SubgroupHandle> xh_stabs;
  for (int x = 0; x < system.degree; ++x) {
    bool in_xh = conj_set.count(stabs[x]) > 0;
    bool trivial_holonomy = true;
    for (const auto& q : stabs[x].elements)
      if (!finite_gset_holonomy_fixed(q, x)) trivial_holonomy = false;
    if (!trivial_holonomy) all_points_trivial_holonomy = false;
    if (in_xh) {
      out.xh_measure += (*system.measure)[x];
      xh_nonempty = true;
      if (trivial_holonomy) xh_point_with_trivial_holonomy = true;
    }
  }

  // IRS conjugation invariance: every generator permutes the atoms and
  // preserves their weights.
  out.irs_conjugation_invariant = true;
  for (const auto& gamma : system.generators) {
    Permutation ginv = gamma.inverse();
    for (const auto& [k, w] : out.irs.atoms) {
      std::vector<Permutation> conj;
      for (const auto& e : k.elements) conj.push_back(gamma * e * ginv);
      std::sort(conj.begin(), conj.end());
      if (out.irs.weight_of(SubgroupHandle{std::move(conj)}) != w) {
        out.irs_conjugation_invariant = false;
        break;
      }
    }
    if (!out.irs_conjugation_invariant) break;
  }

  // Theorem-flags, each computed directly.
  out.flags.xh_full_measure = (out.xh_measure == 1);
  Rational h_weight = out.irs.weight_of(h);
  Rational conj_weight(0);
  for (const auto& c : orbit.conjugates) conj_weight += out.irs.weight_of(c);
  out.flags.irs_atom_and_support = (h_weight > 0) && (conj_weight == 1);
  out.flags.exists_trivial_holonomy = xh_nonempty && xh_point_with_trivial_holonomy;
  // The trivial-holonomy set of a finite system is the whole system; (4)
  // asks that X_H coincide with it.
  std::size_t xh_count = 0;
  for (int x = 0; x < system.degree; ++x)
    if (conj_set.count(stabs[x])) ++xh_count;
  out.flags.xh_is_trivial_holonomy_set =
      all_points_trivial_holonomy && xh_count == static_cast<std::size_t>(system.degree);
  // (5): finitely many conjugates, checked against the normalizer index.
  out.flags.almost_normal =
      orbit.conjugates.size() == subgroup_index(context, normalizer(context, h));
  // (6): the distinct stabilizers form exactly the conjugation orbit of H.
  std::set<SubgroupHandle> stab_set(out.urs_atoms.begin(), out.urs_atoms.end());
  out.flags.conj_is_urs = (stab_set == conj_set);
  return out;
}

bool stabilizers_meet_conjugates_trivially(const FiniteGSet& system,
                                           const SubgroupHandle& h) {
  PermGroup context = system.context_group();
  require_subgroup(context, h);
  ConjugateOrbit orbit = conjugate_orbit(context, h);
  for (int x = 0; x < system.degree; ++x) {
    SubgroupHandle stab = point_stabilizer(context, x);
    for (const auto& c : orbit.conjugates)
      for (const auto& e : c.elements)
        if (!e.is_identity() && stab.contains(e)) return false;
  }
  return true;
}

}  // namespace gact
