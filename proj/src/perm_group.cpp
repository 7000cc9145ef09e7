#include "gact/perm_group.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "gact/error.hpp"

namespace gact {

bool SubgroupHandle::contains(const Permutation& p) const {
  return std::binary_search(elements.begin(), elements.end(), p);
}

bool SubgroupHandle::contains_all(const SubgroupHandle& other) const {
  return std::includes(elements.begin(), elements.end(),
                       other.elements.begin(), other.elements.end());
}

SubgroupHandle make_subgroup(int degree, std::vector<Permutation> elements) {
  if (elements.empty()) elements.push_back(Permutation(degree));
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  SubgroupHandle h{std::move(elements)};
  for (const auto& p : h.elements)
    if (p.degree() != degree) throw Error("subgroup element degree mismatch");
  if (!h.contains(Permutation(degree))) throw Error("subgroup misses the identity");
  for (const auto& p : h.elements) {
    if (!h.contains(p.inverse())) throw Error("subgroup not closed under inverse");
    for (const auto& q : h.elements)
      if (!h.contains(p * q)) throw Error("subgroup not closed under composition");
  }
  return h;
}

SubgroupHandle close_subgroup(int degree, const std::vector<Permutation>& generators,
                              std::size_t cap) {
  std::set<Permutation> seen;
  std::vector<Permutation> queue;
  seen.insert(Permutation(degree));
  queue.push_back(Permutation(degree));
  std::vector<Permutation> gens = generators;
  for (const auto& g : generators) gens.push_back(g.inverse());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : gens) {
      Permutation next = queue[i] * g;
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw Error("subgroup closure cap exceeded");
        queue.push_back(std::move(next));
      }
    }
  }
  std::vector<Permutation> out(seen.begin(), seen.end());
  return SubgroupHandle{std::move(out)};
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators,
                     std::size_t enumeration_cap)
    : degree_(degree), generators_(std::move(generators)), cap_(enumeration_cap) {
  for (const auto& g : generators_)
    if (g.degree() != degree_) throw Error("generator degree mismatch");
}

PermGroup::PermGroup(const PermGroup& other) {
  std::lock_guard<std::mutex> lock(other.enum_mutex_);
  degree_ = other.degree_;
  generators_ = other.generators_;
  cap_ = other.cap_;
  enumerated_ = other.enumerated_;
  sorted_ = other.sorted_;
  shortlex_ = other.shortlex_;
  enum_error_ = other.enum_error_;
}

PermGroup& PermGroup::operator=(const PermGroup& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(enum_mutex_, other.enum_mutex_);
  degree_ = other.degree_;
  generators_ = other.generators_;
  cap_ = other.cap_;
  enumerated_ = other.enumerated_;
  sorted_ = other.sorted_;
  shortlex_ = other.shortlex_;
  enum_error_ = other.enum_error_;
  return *this;
}

void PermGroup::ensure_enumerated() const {
  std::lock_guard<std::mutex> lock(enum_mutex_);
  auto fill = [this] {
    // Close the generating set under inverses up front, so the discovery
    // order is plain shortlex BFS over a symmetric generating set.
    std::vector<Permutation> gens = generators_;
    for (const auto& g : generators_) {
      Permutation inv = g.inverse();
      if (std::find(gens.begin(), gens.end(), inv) == gens.end())
        gens.push_back(std::move(inv));
    }
    std::set<Permutation> seen;
    std::vector<Permutation> order;
    Permutation id(degree_);
    seen.insert(id);
    order.push_back(id);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (const auto& g : gens) {
        Permutation next = order[i] * g;
        if (seen.insert(next).second) {
          if (seen.size() > cap_) {
            enum_error_ = "enumeration cap exceeded; partial count " +
                          std::to_string(order.size());
            return;
          }
          order.push_back(std::move(next));
        }
      }
    }
    shortlex_ = order;
    sorted_.assign(seen.begin(), seen.end());
  };
  if (!enumerated_) {
    fill();
    enumerated_ = true;
  }
  if (enum_error_) throw Error(*enum_error_);
}

const std::vector<Permutation>& PermGroup::elements() const {
  ensure_enumerated();
  return sorted_;
}

const std::vector<Permutation>& PermGroup::elements_shortlex() const {
  ensure_enumerated();
  return shortlex_;
}

bool PermGroup::contains(const Permutation& p) const {
  const auto& elts = elements();
  return std::binary_search(elts.begin(), elts.end(), p);
}

SubgroupHandle PermGroup::as_subgroup() const { return SubgroupHandle{elements()}; }

void require_subgroup(const PermGroup& group, const SubgroupHandle& sub) {
  if (sub.elements.empty()) throw Error("empty subgroup handle");
  for (const auto& p : sub.elements) {
    if (p.degree() != group.degree()) throw Error("subgroup degree mismatch");
    if (!group.contains(p)) throw Error("handle is not a subgroup of the parent");
  }
  // Closure of the handle itself.
  make_subgroup(group.degree(), sub.elements);
}

OrbitStabilizer orbit_and_stabilizer(const PermGroup& group, int point) {
  if (point < 0 || point >= group.degree()) throw Error("point out of range");
  std::set<int> orbit;
  std::vector<int> queue{point};
  orbit.insert(point);
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    for (const auto& g : group.generators()) {
      for (int y : {g.apply(x), g.inverse().apply(x)}) {
        if (orbit.insert(y).second) queue.push_back(y);
      }
    }
  }
  std::vector<Permutation> stab;
  for (const auto& g : group.elements())
    if (g.apply(point) == point) stab.push_back(g);
  OrbitStabilizer out;
  out.orbit.assign(orbit.begin(), orbit.end());
  out.stabilizer = SubgroupHandle{std::move(stab)};
  return out;
}

namespace {

SubgroupHandle conjugate_subgroup(const SubgroupHandle& sub, const Permutation& g) {
  std::vector<Permutation> out;
  out.reserve(sub.elements.size());
  Permutation ginv = g.inverse();
  for (const auto& h : sub.elements) out.push_back(g * h * ginv);
  std::sort(out.begin(), out.end());
  return SubgroupHandle{std::move(out)};
}

}  // namespace

SubgroupHandle normalizer(const PermGroup& group, const SubgroupHandle& sub) {
  require_subgroup(group, sub);
  std::vector<Permutation> out;
  for (const auto& g : group.elements())
    if (conjugate_subgroup(sub, g) == sub) out.push_back(g);
  return SubgroupHandle{std::move(out)};
}

CentralizerCenter centralizer_center(const PermGroup& group, const SubgroupHandle& sub) {
  require_subgroup(group, sub);
  std::vector<Permutation> cent;
  for (const auto& g : group.elements()) {
    bool commutes = true;
    for (const auto& h : sub.elements) {
      if (!(g * h == h * g)) {
        commutes = false;
        break;
      }
    }
    if (commutes) cent.push_back(g);
  }
  CentralizerCenter out;
  out.centralizer = SubgroupHandle{std::move(cent)};
  std::vector<Permutation> inner;
  for (const auto& h : sub.elements)
    if (out.centralizer.contains(h)) inner.push_back(h);
  out.center = SubgroupHandle{std::move(inner)};
  return out;
}

ConjugateOrbit conjugate_orbit(const PermGroup& group, const SubgroupHandle& sub) {
  require_subgroup(group, sub);
  ConjugateOrbit out;
  std::set<SubgroupHandle> seen;
  out.conjugates.push_back(sub);
  seen.insert(sub);
  for (std::size_t i = 0; i < out.conjugates.size(); ++i) {
    for (const auto& g : group.generators()) {
      for (const Permutation& c : {g, g.inverse()}) {
        SubgroupHandle next = conjugate_subgroup(out.conjugates[i], c);
        if (seen.insert(next).second) out.conjugates.push_back(std::move(next));
      }
    }
  }
  // Core = intersection of all conjugates.
  std::vector<Permutation> core;
  for (const auto& p : sub.elements) {
    bool everywhere = true;
    for (const auto& c : out.conjugates) {
      if (!c.contains(p)) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) core.push_back(p);
  }
  out.core = SubgroupHandle{std::move(core)};
  return out;
}

bool is_regular_subgroup(const SubgroupHandle& sub) {
  for (const auto& p : sub.elements) {
    if (p.is_identity()) continue;
    if (p.fixed_point_count() != 0) return false;
  }
  return true;
}

ConjugationActionHom conjugation_action_hom(const PermGroup& group,
                                            const SubgroupHandle& sub) {
  ConjugationActionHom out;
  ConjugateOrbit orbit = conjugate_orbit(group, sub);
  out.conjugates = orbit.conjugates;
  const int p = static_cast<int>(out.conjugates.size());
  std::map<SubgroupHandle, int> index;
  for (int i = 0; i < p; ++i) index[out.conjugates[i]] = i;

  auto action_of = [&](const Permutation& g) {
    std::vector<int> images(p);
    for (int i = 0; i < p; ++i) images[i] = index.at(conjugate_subgroup(out.conjugates[i], g));
    return Permutation(std::move(images));
  };

  std::vector<Permutation> gen_images;
  for (const auto& g : group.generators()) gen_images.push_back(action_of(g));
  out.image = PermGroup(p, std::move(gen_images), group.enumeration_cap());

  std::vector<Permutation> kernel;
  for (const auto& g : group.elements())
    if (action_of(g).is_identity()) kernel.push_back(g);
  out.kernel = SubgroupHandle{std::move(kernel)};

  out.hypothesis_holds = false;
  for (const auto& c : out.conjugates) {
    for (const auto& h : c.elements) {
      if (!h.is_identity() && !out.kernel.contains(h)) {
        out.hypothesis_holds = true;
        break;
      }
    }
    if (out.hypothesis_holds) break;
  }
  return out;
}

std::vector<SubgroupHandle> subgroup_lattice(const PermGroup& group) {
  std::set<SubgroupHandle> found;
  SubgroupHandle trivial{{Permutation(group.degree())}};
  found.insert(trivial);
  std::vector<SubgroupHandle> queue{trivial};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (const auto& g : group.elements()) {
      if (queue[i].contains(g)) continue;
      std::vector<Permutation> gens = queue[i].elements;
      gens.push_back(g);
      SubgroupHandle next = close_subgroup(group.degree(), gens);
      if (found.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return std::vector<SubgroupHandle>(found.begin(), found.end());
}

std::size_t subgroup_index(const PermGroup& group, const SubgroupHandle& sub) {
  require_subgroup(group, sub);
  if (group.order() % sub.order() != 0)
    throw Error("subgroup order does not divide group order");
  return group.order() / sub.order();
}

}  // namespace gact
