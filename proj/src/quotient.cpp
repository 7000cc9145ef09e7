#include "gact/quotient.hpp"

#include <map>
#include <optional>

#include "gact/error.hpp"

namespace gact {

namespace {

// Coset identity test: r1*H = r2*H iff r1^-1 r2 lies in H.
bool same_coset(const GroupFamily& family, const SubgroupSpec& spec,
                const GroupElement& r1, const GroupElement& r2) {
  Membership m = spec.member(family, family.multiply(family.inverse(r1), r2));
  if (m == Membership::Unknown) throw Error("membership oracle returned unknown");
  return m == Membership::Yes;
}

}  // namespace

int FiniteQuotient::coset_of(const GroupFamily& family, const GroupElement& g) const {
  if (!rep_index.empty()) {
    auto canon = source.canonical_coset_rep(family, g);
    if (canon) {
      auto it = rep_index.find(*canon);
      if (it == rep_index.end()) throw Error("coset not present in the table");
      return it->second;
    }
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (same_coset(family, source, reps[i], g)) return static_cast<int>(i);
  throw Error("coset not present in the table");
}

int FiniteQuotient::act(const GroupFamily& family, const GroupElement& g,
                        int coset) const {
  if (coset < 0 || coset >= static_cast<int>(reps.size()))
    throw Error("coset index out of range");
  return coset_of(family, family.multiply(g, reps[coset]));
}

Permutation FiniteQuotient::action_of(const GroupFamily& family,
                                      const GroupElement& g) const {
  std::vector<int> images(reps.size());
  for (std::size_t i = 0; i < reps.size(); ++i)
    images[i] = coset_of(family, family.multiply(g, reps[i]));
  return Permutation(std::move(images));
}

FiniteQuotient quotient_by_subgroup(const GroupFamily& family, const SubgroupSpec& spec,
                                    std::size_t index_cap) {
  if (!spec.has_oracle()) {
    // A Words spec becomes usable once its closure completes.
    if (spec.tag() == SubgroupSpec::Tag::Words)
      spec.closed_elements(family);
    else
      throw Error("subgroup spec has no membership oracle");
  }

  FiniteQuotient q;
  q.source = spec;

  // BFS over cosets. Canonical representatives (when the spec provides
  // them) key the dedup map; otherwise fall back to a linear oracle scan.
  const bool canonical = spec.canonical_coset_rep(family, family.identity()).has_value();
  std::map<GroupElement, int> index_of;

  auto find_coset = [&](const GroupElement& g) -> std::optional<int> {
    if (canonical) {
      auto it = index_of.find(*spec.canonical_coset_rep(family, g));
      if (it == index_of.end()) return std::nullopt;
      return it->second;
    }
    for (std::size_t i = 0; i < q.reps.size(); ++i)
      if (same_coset(family, spec, q.reps[i], g)) return static_cast<int>(i);
    return std::nullopt;
  };

  auto add_coset = [&](const GroupElement& g) {
    if (canonical) {
      GroupElement c = *spec.canonical_coset_rep(family, g);
      index_of.emplace(c, static_cast<int>(q.reps.size()));
      q.reps.push_back(std::move(c));
    } else {
      q.reps.push_back(g);
    }
  };

  add_coset(family.identity());
  for (std::size_t i = 0; i < q.reps.size(); ++i) {
    for (const auto& gen : family.generators()) {
      GroupElement moved = family.multiply(gen.element, q.reps[i]);
      if (!find_coset(moved)) {
        if (q.reps.size() >= index_cap)
          throw Error("coset index cap exceeded (" + std::to_string(index_cap) + ")");
        add_coset(moved);
      }
    }
  }

  // With the representative list closed, record each generator's coset
  // permutation; closure of the table is implied by construction and
  // re-verified here.
  for (const auto& gen : family.generators()) {
    std::vector<int> images(q.reps.size());
    for (std::size_t i = 0; i < q.reps.size(); ++i) {
      auto target = find_coset(family.multiply(gen.element, q.reps[i]));
      if (!target) throw Error("coset table is not closed");
      images[i] = *target;
    }
    q.generator_images.push_back(Permutation(std::move(images)));
  }
  if (canonical) q.rep_index = std::move(index_of);
  return q;
}

}  // namespace gact
