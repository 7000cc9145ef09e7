#include "gact/odometer.hpp"

#include <algorithm>

#include "gact/error.hpp"

namespace gact {

void GroupChain::check_nested() const {
  for (std::size_t i = 0; i + 1 < specs.size(); ++i) {
    for (const auto& g : specs[i + 1].generating_elements(family)) {
      Membership m = specs[i].member(family, g);
      if (m == Membership::Unknown)
        throw Error("nesting check inconclusive at level " + std::to_string(i + 2));
      if (m == Membership::No)
        throw Error("chain is not nested: level " + std::to_string(i + 2) +
                    " is not contained in level " + std::to_string(i + 1));
    }
  }
}

LevelSystem::LevelSystem(GroupChain chain, int depth, std::size_t index_cap)
    : chain_(std::move(chain)) {
  if (depth < 0) throw Error("depth must be nonnegative");
  if (depth > static_cast<int>(chain_.specs.size()))
    throw Error("depth exceeds chain length");
  chain_.check_nested();

  levels_.push_back(quotient_by_subgroup(chain_.family,
                                         SubgroupSpec::whole_group(chain_.family),
                                         index_cap));
  for (int i = 1; i <= depth; ++i)
    levels_.push_back(quotient_by_subgroup(chain_.family, chain_.specs[i - 1], index_cap));

  for (int i = 0; i < depth; ++i) {
    const FiniteQuotient& fine = levels_[i + 1];
    const FiniteQuotient& coarse = levels_[i];
    std::vector<int> proj(fine.index());
    for (std::size_t x = 0; x < fine.index(); ++x)
      proj[x] = coarse.coset_of(chain_.family, fine.reps[x]);
    projections_.push_back(std::move(proj));
  }
  validate();
}

const FiniteQuotient& LevelSystem::level(int i) const {
  if (i < 0 || i > depth()) throw Error("level out of range");
  return levels_[i];
}

const std::vector<int>& LevelSystem::projection(int i) const {
  if (i < 0 || i >= depth()) throw Error("projection level out of range");
  return projections_[i];
}

PointPrefix LevelSystem::basepoint() const {
  return PointPrefix{std::vector<int>(depth() + 1, 0)};
}

void LevelSystem::validate_prefix(const PointPrefix& x) const {
  if (x.coords.empty() || x.coords.size() > levels_.size())
    throw Error("prefix depth out of range");
  for (std::size_t i = 0; i < x.coords.size(); ++i)
    if (x.coords[i] < 0 || x.coords[i] >= static_cast<int>(levels_[i].index()))
      throw Error("prefix coordinate out of range");
  for (std::size_t i = 0; i + 1 < x.coords.size(); ++i)
    if (projections_[i][x.coords[i + 1]] != x.coords[i])
      throw Error("prefix is not projection-compatible");
}

PointPrefix LevelSystem::act(const GroupElement& g, const PointPrefix& x) const {
  validate_prefix(x);
  PointPrefix out = x;
  for (std::size_t i = 0; i < x.coords.size(); ++i)
    out.coords[i] = levels_[i].act(chain_.family, g, x.coords[i]);
  validate_prefix(out);
  return out;
}

Rational LevelSystem::cylinder_measure(const Cylinder& c) const {
  if (c.level < 0 || c.level > depth()) throw Error("cylinder level out of range");
  if (c.coset < 0 || c.coset >= static_cast<int>(level_size(c.level)))
    throw Error("cylinder coset out of range");
  return Rational(BigInt(1), BigInt(level_size(c.level)));
}

Rational LevelSystem::metric(const PointPrefix& x, const PointPrefix& y) const {
  validate_prefix(x);
  validate_prefix(y);
  if (x.coords.size() != y.coords.size())
    throw Error("prefixes have different depths");
  int agree = -1;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] != y.coords[i]) break;
    agree = static_cast<int>(i);
  }
  if (agree < 0) throw Error("prefixes disagree at level 0");
  BigInt denom = BigInt(1) << agree;
  return Rational(BigInt(1), denom);
}

bool generators_act_transitively(int degree, const std::vector<Permutation>& generators) {
  if (degree <= 0) return false;
  std::vector<char> seen(degree, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  int count = 1;
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (const auto& g : generators) {
      for (int y : {g.apply(x), g.inverse().apply(x)}) {
        if (!seen[y]) {
          seen[y] = 1;
          ++count;
          queue.push_back(y);
        }
      }
    }
  }
  return count == degree;
}

std::vector<bool> LevelSystem::transitivity_per_level() const {
  std::vector<bool> out;
  for (const auto& lvl : levels_)
    out.push_back(generators_act_transitively(static_cast<int>(lvl.index()),
                                              lvl.generator_images));
  return out;
}

std::vector<int> LevelSystem::cylinder_children(const Cylinder& c) const {
  if (c.level < 0 || c.level >= depth()) throw Error("cylinder has no finer level");
  std::vector<int> out;
  const auto& proj = projections_[c.level];
  for (std::size_t x = 0; x < proj.size(); ++x)
    if (proj[x] == c.coset) out.push_back(static_cast<int>(x));
  return out;
}

void LevelSystem::validate() const {
  if (level_size(0) != 1) throw Error("level 0 must be a single point");

  for (int i = 0; i <= depth(); ++i) {
    std::vector<std::pair<std::string, Permutation>> images;
    const auto& gens = chain_.family.generators();
    for (std::size_t k = 0; k < gens.size(); ++k)
      images.emplace_back(gens[k].label, levels_[i].generator_images[k]);
    verify_generator_images(chain_.family, images);

    if (!generators_act_transitively(static_cast<int>(level_size(i)),
                                     levels_[i].generator_images))
      throw Error("level action is not transitive at level " + std::to_string(i));
  }

  for (int i = 0; i < depth(); ++i) {
    const auto& proj = projections_[i];
    // Equivariance of the projection for every generator.
    for (std::size_t k = 0; k < chain_.family.generators().size(); ++k) {
      const Permutation& fine = levels_[i + 1].generator_images[k];
      const Permutation& coarse = levels_[i].generator_images[k];
      for (std::size_t x = 0; x < proj.size(); ++x)
        if (proj[fine.apply(static_cast<int>(x))] != coarse.apply(proj[x]))
          throw Error("projection is not equivariant at level " + std::to_string(i + 1));
    }
    // Constant fiber size = index ratio.
    if (level_size(i + 1) % level_size(i) != 0)
      throw Error("level sizes do not multiply");
    std::size_t expect = level_size(i + 1) / level_size(i);
    std::vector<std::size_t> fiber(level_size(i), 0);
    for (std::size_t x = 0; x < proj.size(); ++x) ++fiber[proj[x]];
    for (std::size_t f : fiber)
      if (f != expect) throw Error("projection fibers are not constant");
  }
}

}  // namespace gact
