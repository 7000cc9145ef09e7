// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria. Invocation:
//   acceptance_tests <path-to-gact-binary> <path-to-configs-dir>

#include <cstdio>
#include <sys/wait.h>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gact/error.hpp"
#include "gact/pipeline.hpp"
#include "gact/shift.hpp"
#include "gact/verify.hpp"

using namespace gact;

namespace {

int failures = 0;

struct Criterion {
  int number;
  std::string title;
  bool ok = true;
  std::vector<std::string> notes;

  Criterion(int n, std::string t) : number(n), title(std::move(t)) {}

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      notes.push_back(what);
    }
  }

  void finish() const {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", number, title.c_str());
    for (const auto& n : notes) std::printf("       - %s\n", n.c_str());
    if (!ok) ++failures;
  }
};

GroupChain dihedral_chain(int levels) {
  GroupChain chain{GroupFamily::dihedral_infinite(), {}};
  for (int i = 1; i <= levels; ++i)
    chain.specs.push_back(SubgroupSpec::dihedral_power(i));
  return chain;
}

GroupChain z_cross_a5_chain(int levels) {
  PermGroup a5(5, {Permutation::from_cycles(5, {{0, 1, 2}}),
                   Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  GroupFamily family = GroupFamily::direct_product(GroupFamily::free_abelian(1),
                                                   GroupFamily::finite_perm(a5));
  GroupChain chain{family, {}};
  for (int i = 1; i <= levels; ++i)
    chain.specs.push_back(SubgroupSpec::product(
        SubgroupSpec::lattice(1, {{std::int64_t(1) << i}}),
        SubgroupSpec::finite_elements({Permutation(5)})));
  return chain;
}

SubgroupSpec h_zero_cross_3cycle() {
  return SubgroupSpec::product(
      SubgroupSpec::lattice(1, {}),
      SubgroupSpec::finite_elements({Permutation(5),
                                     Permutation::from_cycles(5, {{0, 1, 2}}),
                                     Permutation::from_cycles(5, {{0, 2, 1}})}));
}

PermGroup symmetric(int n) {
  std::vector<Permutation> gens;
  gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i;
  gens.push_back(Permutation::from_cycles(n, {cyc}));
  return PermGroup(n, gens);
}

PermGroup alternating5() {
  return PermGroup(5, {Permutation::from_cycles(5, {{0, 1, 2}}),
                       Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
}

SubgroupHandle conjugate_handle(const SubgroupHandle& sub, const Permutation& g) {
  std::vector<Permutation> out;
  Permutation ginv = g.inverse();
  for (const auto& e : sub.elements) out.push_back(g * e * ginv);
  std::sort(out.begin(), out.end());
  return SubgroupHandle{std::move(out)};
}

// ---- criterion 1 -----------------------------------------------------------

void criterion_1() {
  Criterion c{1,
              "dihedral odometer: sizes 2^i, measures 2^-i, stabilizer ball "
              "settles at {1, b}, <b> conjugate growth 2^(i-1)"};
  LevelSystem ls(dihedral_chain(8), 8);

  for (int i = 0; i <= 8; ++i) {
    c.require(ls.level_size(i) == static_cast<std::size_t>(1) << i,
              "level size at " + std::to_string(i));
    c.require(ls.cylinder_measure(Cylinder{i, 0}) ==
                  Rational(BigInt(1), BigInt(1) << i),
              "cylinder measure at " + std::to_string(i));
  }

  // Basepoint stabilizer ball at radius 4: monotone nonincreasing over the
  // depths and equal to {1, b} (the ball inside the chain intersection <b>)
  // from depth 3 = ceil(log2(radius)) + 1 on.
  const GroupElement one = ls.family().identity();
  const GroupElement flip(DihedralElt{0, true});
  std::set<GroupElement> limit{one, flip};
  std::set<GroupElement> previous;
  for (int depth = 1; depth <= 8; ++depth) {
    PointPrefix base{std::vector<int>(depth + 1, 0)};
    auto elems = stabilizer_ball(ls, base, 4);
    std::set<GroupElement> current(elems.begin(), elems.end());
    if (depth > 1)
      for (const auto& e : current)
        c.require(previous.count(e) == 1, "ball not monotone at depth " +
                                              std::to_string(depth));
    if (depth >= 3)
      c.require(current == limit, "ball at depth " + std::to_string(depth) +
                                      " is not {1, b}");
    previous = std::move(current);
  }
  c.require(previous == limit, "deepest ball is not {1, b}");

  // Conjugate counts of the <b> image at levels 1..4 against a full-element
  // conjugation oracle, and the growth verdict.
  AlmostNormalityReport rep =
      almost_normality_report(ls, SubgroupSpec::words({{"b"}}));
  c.require(rep.verdict == AlmostNormalityReport::Verdict::EvidenceNo,
            "<b> not flagged as evidence_no");
  for (int lvl = 1; lvl <= 4; ++lvl) {
    std::size_t expected = static_cast<std::size_t>(1) << (lvl - 1);
    c.require(rep.level_conjugate_counts[lvl - 1] == expected,
              "conjugate count at level " + std::to_string(lvl));
    // Oracle: conjugate the image subgroup by every level-group element.
    SubgroupHandle image = subgroup_image_at_level(ls, lvl, rep.subgroup_elements);
    PermGroup q(static_cast<int>(ls.level_size(lvl)), ls.level(lvl).generator_images);
    std::set<SubgroupHandle> orbit;
    for (const auto& g : q.elements()) orbit.insert(conjugate_handle(image, g));
    c.require(orbit.size() == expected,
              "oracle conjugate count at level " + std::to_string(lvl));
  }
  c.finish();
}

// ---- criterion 2 -----------------------------------------------------------

void criterion_2() {
  Criterion c{2,
              "Z x A_5 pipeline, levels 1-5: certificate with 10 conjugates, "
              "10 blocks, fibers of 3, stabilizer law, atoms of 1/10"};
  LevelSystem ls(z_cross_a5_chain(5), 5);
  AlmostNormalityReport rep = almost_normality_report(ls, h_zero_cross_3cycle());
  c.require(rep.verdict == AlmostNormalityReport::Verdict::Yes, "no certificate");
  c.require(rep.conjugate_count == 10, "conjugate count is not 10");
  c.require(rep.normalizer_index == 10, "normalizer index is not 10");
  c.require(rep.certificate_level == 1, "certificate level is not 1");

  if (rep.verdict == AlmostNormalityReport::Verdict::Yes) {
    for (int level = 1; level <= 5; ++level) {
      FactorPipeline fp = run_factor_pipeline(ls, rep, level);
      std::string at = " at level " + std::to_string(level);
      c.require(fp.partition_of_y.conjugates.size() == 10, "blocks != 10" + at);
      c.require(fp.partition_of_y.exceptional.empty(), "E nonempty" + at);
      c.require(fp.partition_of_y.partitions_space, "blocks do not partition" + at);
      c.require(fp.partition_of_y.factor_map_equivariant, "phi not equivariant" + at);
      for (std::size_t s : fp.factor.fiber_sizes)
        c.require(s == 3, "fiber size != 3" + at);
      c.require(fp.factor.fiber_formula, "fiber formula fails" + at);
      c.require(fp.factor.stabilizer_product_law, "G_y != gHg^-1 G_x" + at);
      c.require(fp.urs_of_y.urs_atoms.size() == 10, "atoms != 10" + at);
      for (const auto& [sub, w] : fp.urs_of_y.irs.atoms)
        c.require(w == rational_of(1, 10), "atom weight != 1/10" + at);
      c.require(fp.urs_of_y.flags.xh_full_measure, "mu(Y_H) != 1" + at);
    }
  }
  c.finish();
}

// ---- criterion 3 -----------------------------------------------------------

void criterion_3() {
  Criterion c{3,
              "round trip: extension over Gamma = Z x {1} free over Y_H with "
              "fibers <= 60; refactoring reproduces Y"};
  LevelSystem ls(z_cross_a5_chain(3), 3);
  AlmostNormalityReport rep = almost_normality_report(ls, h_zero_cross_3cycle());
  c.require(rep.verdict == AlmostNormalityReport::Verdict::Yes, "no certificate");

  for (int level = 1; level <= 3; ++level) {
    std::string at = " at level " + std::to_string(level);
    FactorPipeline fp = run_factor_pipeline(ls, rep, level);
    ExtensionPipeline ep = run_extension_pipeline(ls, rep, fp);
    const auto& cert = *ep.gamma_search.certificate;
    c.require(cert.route == "conjugation-kernel", "Gamma route" + at);
    c.require(cert.index == 60, "Gamma index != 60" + at);
    const GroupFamily& g = ls.family();
    c.require(cert.gamma.member(g, g.generator("l.t0")) == Membership::Yes,
              "shift generator not in Gamma" + at);
    c.require(cert.gamma.member(g, g.generator("r.g0")) == Membership::No,
              "finite generator inside Gamma" + at);
    c.require(ep.extension.free_over_yh, "extension not free over Y_H" + at);
    c.require(ep.extension.fibers_bounded, "fibers exceed [G:Gamma]" + at);
    for (std::size_t s : ep.extension.fiber_sizes)
      c.require(s <= 60, "fiber > 60" + at);
    c.require(ep.extension.measure_invariant, "lifted measure not invariant" + at);
    c.require(ep.residual_certificate_trivial, "H meets the residual certificate" + at);

    RoundTrip rt = refactor_extension(ls, rep, fp, ep);
    c.require(rt.reproduces_y, "refactor does not reproduce Y" + at);
  }
  c.finish();
}

// ---- criterion 4 -----------------------------------------------------------

void criterion_4() {
  Criterion c{4,
              "fiber bound [G_y : G_x] <= m! over all K <= L <= S_4, with "
              "regular embeddings when K = 1"};
  PermGroup s4 = symmetric(4);
  std::vector<SubgroupHandle> lattice = subgroup_lattice(s4);
  c.require(lattice.size() == 30, "S_4 must have 30 subgroups");

  int pairs = 0;
  for (const auto& k : lattice) {
    for (const auto& l : lattice) {
      if (!l.contains_all(k)) continue;
      ++pairs;
      CosetSystem source = coset_action(s4, k);
      CosetSystem target = coset_action(s4, l);
      EquivariantMap pi;
      pi.source = source.gset;
      pi.target = target.gset;
      pi.point_map.resize(source.gset.degree);
      for (int i = 0; i < source.gset.degree; ++i) {
        int t = -1;
        for (std::size_t j = 0; j < target.reps.size(); ++j)
          if (l.contains(target.reps[j].inverse() * source.reps[i]))
            t = static_cast<int>(j);
        if (t < 0) {
          c.require(false, "coset map undefined");
          return;
        }
        pi.point_map[i] = t;
      }
      pi.validate();
      PermGroup context = source.gset.context_group();
      for (int y = 0; y < target.gset.degree; ++y) {
        FiberLemmaResult r = fiber_lemma_check(pi, context, y);
        c.require(r.index_bound_holds, "index bound fails");
        if (k.order() == 1) {
          c.require(r.has_free_fiber_point, "free fiber point missing");
          c.require(r.hom_injective, "fiber homomorphism not injective");
          c.require(r.image_regular, "fiber image not regular");
        }
      }
    }
  }
  c.require(pairs >= 30, "pair enumeration too small");
  c.finish();
}

// ---- criterion 5 -----------------------------------------------------------

void criterion_5() {
  Criterion c{5,
              "no stabilizer holds two distinct conjugates; g X_H(h) = "
              "X_H(gh); E empty, over S_3, D_4, A_4, S_4 coset systems"};
  std::vector<PermGroup> groups;
  groups.push_back(symmetric(3));
  groups.push_back(PermGroup(4, {Permutation::from_cycles(4, {{0, 1, 2, 3}}),
                                 Permutation::from_cycles(4, {{0, 2}})}));  // D_4
  groups.push_back(PermGroup(4, {Permutation::from_cycles(4, {{0, 1, 2}}),
                                 Permutation::from_cycles(4, {{0, 1}, {2, 3}})}));  // A_4
  groups.push_back(symmetric(4));

  for (const auto& g : groups) {
    for (const auto& k : subgroup_lattice(g)) {
      CosetSystem sys = coset_action(g, k);
      PermGroup context = sys.gset.context_group();
      // Every H with X_H nonempty is a conjugate of the point stabilizer.
      ConjugateOrbit stab_orbit =
          conjugate_orbit(context, point_stabilizer(context, 0));
      for (const auto& h : stab_orbit.conjugates) {
        XhPartition part = xh_partition(sys.gset, h);
        c.require(!part.xh_empty, "X_H unexpectedly empty");
        c.require(part.exceptional.empty(), "exceptional set not empty");
        for (int x = 0; x < sys.gset.degree; ++x)
          c.require(part.containing_counts[x] <= 1,
                    "a stabilizer contains two distinct conjugates");
        c.require(part.factor_map_equivariant, "block map not equivariant");
        // g X_H(h') = X_H(g h') for every group element, as index sets.
        std::map<SubgroupHandle, int> block_index;
        for (std::size_t i = 0; i < part.conjugates.size(); ++i)
          block_index[part.conjugates[i]] = static_cast<int>(i);
        for (const auto& q : context.elements()) {
          for (std::size_t i = 0; i < part.conjugates.size(); ++i) {
            int j = block_index.at(conjugate_handle(part.conjugates[i], q));
            std::set<int> moved;
            for (int x : part.blocks[i]) moved.insert(q.apply(x));
            c.require(moved == std::set<int>(part.blocks[j].begin(),
                                             part.blocks[j].end()),
                      "g X_H(h) != X_H(gh)");
          }
        }
      }
    }
  }
  c.finish();
}

// ---- criterion 6 -----------------------------------------------------------

void criterion_6() {
  Criterion c{6,
              "finite-summarize flags over transitive S_4 and A_5 systems: "
              "all six hold together whenever X_H is nonempty"};
  for (PermGroup g : {symmetric(4), alternating5()}) {
    for (const auto& k : subgroup_lattice(g)) {
      CosetSystem sys = coset_action(g, k);
      sys.gset.attach_uniform_measure();
      PermGroup context = sys.gset.context_group();
      SubgroupHandle realized = point_stabilizer(context, 0);

      UrsIrsReport rep = urs_irs_report(sys.gset, realized);
      c.require(rep.flags.xh_full_measure, "(1) fails on a realized H");
      c.require(rep.flags.irs_atom_and_support, "(2) fails on a realized H");
      c.require(rep.flags.exists_trivial_holonomy, "(3) fails on a realized H");
      c.require(rep.flags.xh_is_trivial_holonomy_set, "(4) fails on a realized H");
      c.require(rep.flags.almost_normal, "(5) fails on a realized H");
      c.require(rep.flags.conj_is_urs, "(6) fails on a realized H");
      c.require(rep.irs_conjugation_invariant, "IRS not conjugation-invariant");

      // For an H with X_H empty, (1) <=> (2) and (3) <=> (4) <=> (6) still
      // hold as computed (all false); almost normality (5) is a property of
      // the group alone and stays true in a finite context. A cyclic
      // subgroup of a different order is never a stabilizer here.
      SubgroupHandle unrealized;
      bool found = false;
      for (const auto& q : context.elements()) {
        SubgroupHandle candidate = close_subgroup(context.degree(), {q});
        if (candidate.order() != realized.order()) {
          unrealized = candidate;
          found = true;
          break;
        }
      }
      if (found) {
        UrsIrsReport other = urs_irs_report(sys.gset, unrealized);
        c.require(other.flags.xh_full_measure == other.flags.irs_atom_and_support,
                  "(1) <=> (2) fails on an unrealized H");
        c.require(other.flags.exists_trivial_holonomy ==
                      other.flags.xh_is_trivial_holonomy_set,
                  "(3) <=> (4) fails on an unrealized H");
        c.require(other.flags.exists_trivial_holonomy == other.flags.conj_is_urs,
                  "(3) <=> (6) fails on an unrealized H");
        bool one_implies_three = !other.flags.xh_full_measure ||
                                 other.flags.exists_trivial_holonomy;
        c.require(one_implies_three, "(1) => (3) fails on an unrealized H");
      }
    }
  }
  c.finish();
}

// ---- criterion 7 -----------------------------------------------------------

void criterion_7() {
  Criterion c{7,
              "full shift: |Fix(sigma^n)| = 2^n for n <= 10, exact counts by "
              "divisor exclusion, sigma^2 witness, constant cylinder cover"};
  std::vector<std::size_t> memo(11, 0);
  std::function<std::size_t(int)> oracle = [&](int n) -> std::size_t {
    if (memo[n] != 0) return memo[n];
    std::size_t count = static_cast<std::size_t>(1) << n;
    for (int d = 1; d < n; ++d)
      if (n % d == 0) count -= oracle(d);
    return memo[n] = count;
  };
  for (int n = 1; n <= 10; ++n) {
    ShiftPeriodicReport r = shift_periodic_points(n);
    c.require(r.fixed.size() == static_cast<std::size_t>(1) << n,
              "fixed count at n = " + std::to_string(n));
    c.require(r.exact.size() == oracle(n),
              "exact-stabilizer count at n = " + std::to_string(n));
  }

  ShiftPeriodicReport two = shift_periodic_points(2);
  // The point with coordinates ...0101... (0 at the origin).
  PeriodicPoint alternating = two.exact.front();
  for (const auto& p : two.exact)
    if (p.coordinate(0) == 0) alternating = p;
  ShiftHolonomyVerdict v = shift_holonomy_check(2, cylinder_of(alternating, 1), 5);
  c.require(v.kind == ShiftHolonomyVerdict::Kind::Witness,
            "sigma^2 holonomy probe is not a witness");
  c.require(shift_moves_cylinder(2, v.moved_refinement, nullptr),
            "witness refinement fails replay");

  std::size_t first = 0;
  BigInt last_total(0);
  for (int w = 1; w <= 7; ++w) {
    ShiftCoverReport cover = shift_cover_report(2, w);
    if (w == 1)
      first = cover.cover_count;
    else {
      c.require(cover.cover_count == first, "cover count varies with the window");
      c.require(cover.total_cylinders > last_total, "cylinder count not growing");
    }
    last_total = cover.total_cylinders;
  }
  c.require(first == 2, "X_{2Z} needs exactly two covering cylinders");
  c.finish();
}

// ---- criterion 8 -----------------------------------------------------------

void criterion_8() {
  Criterion c{8,
              "universal property: mediating map onto G/N_G(H), failure "
              "witness against X itself"};
  LevelSystem ls(z_cross_a5_chain(2), 2);
  AlmostNormalityReport rep = almost_normality_report(ls, h_zero_cross_3cycle());
  c.require(rep.verdict == AlmostNormalityReport::Verdict::Yes, "no certificate");
  FactorPipeline fp = run_factor_pipeline(ls, rep, 1);
  const FiniteGSet& x = fp.level_system_gset;

  PermGroup context = x.context_group();
  FiniteGSet blocks = conjugation_block_system(context, fp.h_image);
  EquivariantMap pi_prime;
  pi_prime.source = x;
  pi_prime.target = blocks;
  pi_prime.point_map = fp.phi;
  std::vector<int> identity_blocks(blocks.degree);
  for (int i = 0; i < blocks.degree; ++i) identity_blocks[i] = i;
  UniversalPropertyResult mediated =
      verify_universal_property(fp.factor, x, fp.phi, pi_prime, identity_blocks);
  c.require(mediated.has_mediating_map, "no mediating map onto G/N_G(H)");
  c.require(mediated.mediating == fp.factor.block_of_y,
            "mediating map differs from phi-tilde");

  EquivariantMap identity_map;
  identity_map.source = x;
  identity_map.target = x;
  identity_map.point_map.resize(x.degree);
  for (int i = 0; i < x.degree; ++i) identity_map.point_map[i] = i;
  UniversalPropertyResult refused =
      verify_universal_property(fp.factor, x, fp.phi, identity_map, fp.phi);
  c.require(!refused.has_mediating_map, "X itself must not admit a mediating map");
  c.require(!refused.precondition_stabilizer, "stabilizer precondition must fail");
  c.require(refused.separated_pair.has_value(), "no separated glued pair");
  if (refused.separated_pair) {
    auto [x1, x2] = *refused.separated_pair;
    c.require(fp.factor.pi.point_map[x1] == fp.factor.pi.point_map[x2],
              "witness pair is not glued by the factor");
    c.require(x1 != x2, "witness pair is degenerate");
  }
  c.finish();
}

// ---- criterion 9 -----------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_9(const std::string& binary, const std::string& configs_dir) {
  Criterion c{9, "verify all runs twice byte-identically with exit code 0 on "
                 "every bundled config"};
  for (const std::string name : {"dihedral", "z_x_a5", "full_shift"}) {
    std::string config = configs_dir + "/" + name + ".json";
    for (int run : {1, 2}) {
      std::string out = "acceptance_" + name + "_" + std::to_string(run) + ".json";
      std::string stdout_file =
          "acceptance_" + name + "_" + std::to_string(run) + ".txt";
      std::string cmd = binary + " verify all --config " + config + " --output " +
                        out + " > " + stdout_file + " 2>&1";
      int status = std::system(cmd.c_str());
      c.require(status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0,
                name + " run " + std::to_string(run) + " exit code");
    }
    std::string a = slurp("acceptance_" + name + "_1.json");
    std::string b = slurp("acceptance_" + name + "_2.json");
    c.require(!a.empty(), name + " report is empty");
    c.require(a == b, name + " reports differ between runs");
    c.require(slurp("acceptance_" + name + "_1.txt") ==
                  slurp("acceptance_" + name + "_2.txt"),
              name + " stdout differs between runs");
  }
  c.finish();
}

}  // namespace

int main(int argc, char** argv) {
  std::string binary = argc > 1 ? argv[1] : "";
  std::string configs = argc > 2 ? argv[2] : "configs";

  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    if (!binary.empty()) {
      criterion_9(binary, configs);
    } else {
      std::printf("[FAIL] criterion 9: gact binary path not supplied\n");
      ++failures;
    }
  } catch (const Error& e) {
    std::printf("[FAIL] uncaught error: %s\n", e.what());
    ++failures;
  }

  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
