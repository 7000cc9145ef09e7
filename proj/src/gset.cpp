#include "gact/gset.hpp"

#include <algorithm>
#include <set>

#include "gact/error.hpp"

namespace gact {

void FiniteGSet::attach_uniform_measure() {
  measure = std::vector<Rational>(degree, Rational(BigInt(1), BigInt(degree)));
}

void FiniteGSet::validate_measure() const {
  if (!measure) throw Error("measure missing");
  if (static_cast<int>(measure->size()) != degree) throw Error("measure size mismatch");
  Rational total(0);
  for (const auto& m : *measure) {
    if (m <= 0) throw Error("measure weights must be positive");
    total += m;
  }
  if (total != 1) throw Error("measure does not sum to 1");
  for (const auto& g : generators)
    for (int x = 0; x < degree; ++x)
      if ((*measure)[g.apply(x)] != (*measure)[x])
        throw Error("measure is not invariant under the generators");
}

SubgroupHandle point_stabilizer(const PermGroup& context, int point) {
  if (point < 0 || point >= context.degree()) throw Error("point out of range");
  std::vector<Permutation> out;
  for (const auto& q : context.elements())
    if (q.apply(point) == point) out.push_back(q);
  return SubgroupHandle{std::move(out)};
}

CosetSystem coset_action(const PermGroup& group, const SubgroupHandle& sub) {
  require_subgroup(group, sub);
  CosetSystem out;

  auto coset_index = [&](const Permutation& g) -> int {
    for (std::size_t i = 0; i < out.reps.size(); ++i)
      if (sub.contains(out.reps[i].inverse() * g)) return static_cast<int>(i);
    return -1;
  };

  for (const auto& g : group.elements_shortlex())
    if (coset_index(g) < 0) out.reps.push_back(g);

  out.gset.degree = static_cast<int>(out.reps.size());
  for (const auto& g : group.generators()) {
    std::vector<int> images(out.reps.size());
    for (std::size_t i = 0; i < out.reps.size(); ++i) {
      int j = coset_index(g * out.reps[i]);
      if (j < 0) throw Error("coset table not closed");
      images[i] = j;
    }
    out.gset.generators.push_back(Permutation(std::move(images)));
  }
  return out;
}

void EquivariantMap::validate() const {
  if (static_cast<int>(point_map.size()) != source.degree)
    throw Error("point map size mismatch");
  if (source.generators.size() != target.generators.size())
    throw Error("generator lists differ in length");
  std::vector<char> hit(target.degree, 0);
  for (int x = 0; x < source.degree; ++x) {
    int y = point_map[x];
    if (y < 0 || y >= target.degree) throw Error("point map out of range");
    hit[y] = 1;
  }
  for (char h : hit)
    if (!h) throw Error("map is not surjective");
  for (std::size_t k = 0; k < source.generators.size(); ++k)
    for (int x = 0; x < source.degree; ++x)
      if (point_map[source.generators[k].apply(x)] !=
          target.generators[k].apply(point_map[x]))
        throw Error("map does not commute with generator " + std::to_string(k));
}

std::vector<std::vector<int>> EquivariantMap::fibers() const {
  std::vector<std::vector<int>> out(target.degree);
  for (int x = 0; x < source.degree; ++x) out[point_map[x]].push_back(x);
  return out;
}

Permutation induced_on_target(const EquivariantMap& map, const Permutation& q) {
  std::vector<int> images(map.target.degree, -1);
  for (int x = 0; x < map.source.degree; ++x) {
    int from = map.point_map[x];
    int to = map.point_map[q.apply(x)];
    if (images[from] == -1)
      images[from] = to;
    else if (images[from] != to)
      throw Error("permutation does not descend through the map");
  }
  return Permutation(std::move(images));
}

SubgroupHandle target_point_stabilizer(const EquivariantMap& map,
                                       const PermGroup& source_context, int y) {
  if (y < 0 || y >= map.target.degree) throw Error("target point out of range");
  std::vector<Permutation> out;
  for (const auto& q : source_context.elements())
    if (induced_on_target(map, q).apply(y) == y) out.push_back(q);
  return SubgroupHandle{std::move(out)};
}

std::vector<Rational> pushforward_measure(const EquivariantMap& map) {
  if (!map.source.measure) throw Error("source measure missing");
  std::vector<Rational> out(map.target.degree, Rational(0));
  for (int x = 0; x < map.source.degree; ++x)
    out[map.point_map[x]] += (*map.source.measure)[x];
  return out;
}

FiniteGSet level_gset(const LevelSystem& ls, int level, bool with_measure) {
  FiniteGSet out;
  out.degree = static_cast<int>(ls.level_size(level));
  out.generators = ls.level(level).generator_images;
  if (with_measure) out.attach_uniform_measure();
  return out;
}

}  // namespace gact
