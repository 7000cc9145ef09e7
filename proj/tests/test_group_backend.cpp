#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "gact/error.hpp"
#include "gact/quotient.hpp"

using namespace gact;

namespace {

GroupFamily z_cross_a5() {
  PermGroup a5(5, {Permutation::from_cycles(5, {{0, 1, 2}}),
                   Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})});
  return GroupFamily::direct_product(GroupFamily::free_abelian(1),
                                     GroupFamily::finite_perm(a5));
}

SubgroupSpec even_shifts_cross_trivial(const GroupFamily& family, std::int64_t step) {
  return SubgroupSpec::product(
      SubgroupSpec::lattice(1, {{step}}),
      SubgroupSpec::finite_elements({Permutation(family.right_factor().base().degree())}));
}

}  // namespace

TEST_CASE("dihedral normal forms satisfy the presentation") {
  GroupFamily d = GroupFamily::dihedral_infinite();
  GroupElement a = d.generator("a");
  GroupElement b = d.generator("b");

  CHECK(d.multiply(d.identity(), a) == a);
  CHECK(d.multiply(d.multiply(b, a), b) == d.inverse(a));  // b a b = a^-1
  CHECK(d.multiply(b, b) == d.identity());                 // b^2 = 1

  // Group axioms, exhaustively on a ball.
  auto b2 = ball(d, 2);
  for (const auto& x : b2) {
    CHECK(d.multiply(x, d.inverse(x)) == d.identity());
    for (const auto& y : b2)
      for (const auto& z : b2)
        CHECK(d.multiply(d.multiply(x, y), z) == d.multiply(x, d.multiply(y, z)));
  }
}

TEST_CASE("free abelian arithmetic") {
  GroupFamily z2 = GroupFamily::free_abelian(2);
  GroupElement x(AbelianElt{1, 2});
  GroupElement y(AbelianElt{3, -1});
  CHECK(z2.multiply(x, y) == GroupElement(AbelianElt{4, 1}));
  CHECK(z2.inverse(x) == GroupElement(AbelianElt{-1, -2}));
}

TEST_CASE("balls are shortlex, duplicate-free, monotone") {
  GroupFamily d = GroupFamily::dihedral_infinite();

  CHECK(ball(d, 0) == std::vector<GroupElement>{d.identity()});

  auto b2 = ball(d, 2);
  CHECK(b2.size() == 8);
  std::set<GroupElement> expect = {
      d.identity(),
      GroupElement(DihedralElt{1, false}),  GroupElement(DihedralElt{-1, false}),
      GroupElement(DihedralElt{2, false}),  GroupElement(DihedralElt{-2, false}),
      GroupElement(DihedralElt{0, true}),   GroupElement(DihedralElt{1, true}),
      GroupElement(DihedralElt{-1, true})};
  CHECK(std::set<GroupElement>(b2.begin(), b2.end()) == expect);
  // Identity first, layers respect word length.
  CHECK(b2[0] == d.identity());

  GroupFamily z = GroupFamily::free_abelian(1);
  CHECK(ball(z, 3).size() == 7);

  std::size_t last = 0;
  for (int r = 0; r <= 6; ++r) {
    auto b = ball(d, r);
    std::set<GroupElement> dedup(b.begin(), b.end());
    CHECK(dedup.size() == b.size());
    CHECK(b.size() >= last);
    last = b.size();
  }
}

TEST_CASE("membership oracles") {
  GroupFamily d = GroupFamily::dihedral_infinite();

  SUBCASE("dihedral powers") {
    for (int i = 1; i <= 4; ++i) {
      SubgroupSpec spec = SubgroupSpec::dihedral_power(i);
      CHECK(spec.member(d, GroupElement(DihedralElt{1 << i, false})) == Membership::Yes);
      CHECK(spec.member(d, GroupElement(DihedralElt{0, true})) == Membership::Yes);
      CHECK(spec.member(d, d.generator("a")) == Membership::No);
    }
  }

  SUBCASE("integer lattices") {
    GroupFamily z2 = GroupFamily::free_abelian(2);
    SubgroupSpec lat = SubgroupSpec::lattice(2, {{2, 0}, {0, 2}});
    CHECK(lat.member(z2, GroupElement(AbelianElt{3, 1})) == Membership::No);
    CHECK(lat.member(z2, GroupElement(AbelianElt{4, -2})) == Membership::Yes);
    CHECK(lat.member(z2, GroupElement(AbelianElt{0, 0})) == Membership::Yes);

    SubgroupSpec skew = SubgroupSpec::lattice(2, {{2, 1}, {0, 3}});
    CHECK(skew.member(z2, GroupElement(AbelianElt{2, 1})) == Membership::Yes);
    CHECK(skew.member(z2, GroupElement(AbelianElt{2, 4})) == Membership::Yes);
    CHECK(skew.member(z2, GroupElement(AbelianElt{1, 1})) == Membership::No);
  }

  SUBCASE("word specs close to exact oracles") {
    SubgroupSpec bgen = SubgroupSpec::words({{"b"}});
    CHECK(bgen.member(d, GroupElement(DihedralElt{0, true})) == Membership::Yes);
    CHECK(bgen.member(d, d.generator("a")) == Membership::No);
    CHECK(bgen.closed_elements(d).size() == 2);
  }

  SUBCASE("a is not in <a^2, b>, by the normal-form oracle") {
    SubgroupSpec spec = SubgroupSpec::dihedral_power(1);
    CHECK(spec.member(d, d.generator("a")) == Membership::No);
    CHECK(spec.member(d, GroupElement(DihedralElt{2, true})) == Membership::Yes);
  }

  SUBCASE("lattice oracle agrees with additive closure on balls") {
    GroupFamily z2 = GroupFamily::free_abelian(2);
    SubgroupSpec spec = SubgroupSpec::lattice(2, {{2, 1}, {0, 3}});
    // Additive closure of the basis within a coordinate window wide enough
    // to reach every lattice point of the radius-8 ball.
    std::set<AbelianElt> closure{{0, 0}};
    std::vector<AbelianElt> gens{{2, 1}, {-2, -1}, {0, 3}, {0, -3}};
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<AbelianElt> snap(closure.begin(), closure.end());
      for (const auto& v : snap)
        for (const auto& g : gens) {
          AbelianElt sum{v[0] + g[0], v[1] + g[1]};
          if (std::abs(sum[0]) > 30 || std::abs(sum[1]) > 30) continue;
          if (closure.insert(sum).second) grew = true;
        }
    }
    for (const auto& e : ball(z2, 8)) {
      bool oracle_yes = spec.member(z2, e) == Membership::Yes;
      bool closed_yes = closure.count(e.abelian()) > 0;
      CHECK(oracle_yes == closed_yes);
    }
  }

  SUBCASE("oracle agrees with generated closure on balls") {
    // Soundness both ways within a bounded window: closure members pass the
    // oracle, and radius-8 ball members flagged by the oracle appear in the
    // bounded closure.
    for (int i = 1; i <= 3; ++i) {
      SubgroupSpec spec = SubgroupSpec::dihedral_power(i);
      std::set<GroupElement> closure;
      {
        std::vector<GroupElement> gens = spec.generating_elements(d);
        for (const auto& g : gens) {
          closure.insert(g);
          closure.insert(d.inverse(g));
        }
        closure.insert(d.identity());
        bool grew = true;
        while (grew) {
          grew = false;
          std::vector<GroupElement> snap(closure.begin(), closure.end());
          for (const auto& p : snap)
            for (const auto& q : snap) {
              GroupElement pq = d.multiply(p, q);
              const auto& dd = pq.dihedral();
              if (dd.shift < -64 || dd.shift > 64) continue;  // bounded window
              if (closure.insert(pq).second) grew = true;
            }
        }
      }
      for (const auto& e : closure) CHECK(spec.member(d, e) == Membership::Yes);
      for (const auto& e : ball(d, 8)) {
        bool oracle_yes = spec.member(d, e) == Membership::Yes;
        bool closed_yes = closure.count(e) > 0;
        CHECK(oracle_yes == closed_yes);
      }
    }
  }
}

TEST_CASE("coset tables") {
  GroupFamily d = GroupFamily::dihedral_infinite();

  SUBCASE("whole group has index 1") {
    FiniteQuotient q = quotient_by_subgroup(d, SubgroupSpec::whole_group(d));
    CHECK(q.index() == 1);
  }

  SUBCASE("dihedral powers have index 2^i with translation representatives") {
    for (int i = 1; i <= 4; ++i) {
      FiniteQuotient q = quotient_by_subgroup(d, SubgroupSpec::dihedral_power(i));
      CHECK(q.index() == static_cast<std::size_t>(1) << i);
      CHECK(q.reps[0] == d.identity());
      std::set<std::int64_t> shifts;
      for (const auto& r : q.reps) {
        CHECK_FALSE(r.dihedral().flip);
        shifts.insert(r.dihedral().shift);
      }
      CHECK(shifts.size() == q.index());
      for (std::int64_t s : shifts) {
        CHECK(s >= 0);
        CHECK(s < (std::int64_t(1) << i));
      }
    }
  }

  SUBCASE("Z x A_5 over even shifts has index 120") {
    GroupFamily g = z_cross_a5();
    FiniteQuotient q = quotient_by_subgroup(g, even_shifts_cross_trivial(g, 2));
    CHECK(q.index() == 120);
  }

  SUBCASE("the quotient map is a homomorphism on ball-4 pairs") {
    FiniteQuotient q = quotient_by_subgroup(d, SubgroupSpec::dihedral_power(2));
    auto b4 = ball(d, 4);
    std::map<GroupElement, Permutation> memo;
    auto image = [&](const GroupElement& g) {
      auto it = memo.find(g);
      if (it == memo.end()) it = memo.emplace(g, q.action_of(d, g)).first;
      return it->second;
    };
    for (const auto& x : b4)
      for (const auto& y : b4)
        CHECK(image(d.multiply(x, y)) == image(x) * image(y));
  }

  SUBCASE("generator images satisfy the family relations at every level") {
    FiniteQuotient q = quotient_by_subgroup(d, SubgroupSpec::dihedral_power(3));
    std::vector<std::pair<std::string, Permutation>> images;
    for (std::size_t k = 0; k < d.generators().size(); ++k)
      images.emplace_back(d.generators()[k].label, q.generator_images[k]);
    CHECK_NOTHROW(verify_generator_images(d, images));
  }

  SUBCASE("index cap is enforced") {
    CHECK_THROWS_AS(quotient_by_subgroup(d, SubgroupSpec::dihedral_power(6), 10), Error);
  }

  SUBCASE("non-closing word spec is rejected") {
    GroupFamily z = GroupFamily::free_abelian(1);
    SubgroupSpec words = SubgroupSpec::words({{"t0", "t0"}});
    CHECK_THROWS_AS(quotient_by_subgroup(z, words, 100), Error);
  }
}

TEST_CASE("direct products compose componentwise") {
  GroupFamily g = z_cross_a5();
  GroupElement t = g.generator("l.t0");
  GroupElement c = g.generator("r.g0");
  CHECK(g.multiply(t, c) == g.multiply(c, t));
  CHECK(g.inverse(g.multiply(t, c)) == g.multiply(g.inverse(t), g.inverse(c)));

  SubgroupSpec h = SubgroupSpec::product(
      SubgroupSpec::lattice(1, {}),
      SubgroupSpec::finite_elements({Permutation(5),
                                     Permutation::from_cycles(5, {{0, 1, 2}}),
                                     Permutation::from_cycles(5, {{0, 2, 1}})}));
  CHECK(h.member(g, c) == Membership::Yes);
  CHECK(h.member(g, t) == Membership::No);
  CHECK(h.closed_elements(g).size() == 3);
}
