#include "gact/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "gact/error.hpp"

namespace gact {

namespace {

// Plain union-find over point indices.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

SubgroupHandle conjugate_handle(const SubgroupHandle& sub, const Permutation& g) {
  std::vector<Permutation> out;
  out.reserve(sub.elements.size());
  Permutation ginv = g.inverse();
  for (const auto& e : sub.elements) out.push_back(g * e * ginv);
  std::sort(out.begin(), out.end());
  return SubgroupHandle{std::move(out)};
}

// Product set K * S inside the symmetric group, as a sorted list.
std::vector<Permutation> product_set(const SubgroupHandle& k, const SubgroupHandle& s) {
  std::set<Permutation> out;
  for (const auto& a : k.elements)
    for (const auto& b : s.elements) out.insert(a * b);
  return std::vector<Permutation>(out.begin(), out.end());
}

std::size_t intersection_order(const SubgroupHandle& a, const SubgroupHandle& b) {
  std::size_t n = 0;
  for (const auto& e : a.elements)
    if (b.contains(e)) ++n;
  return n;
}

}  // namespace

FiniteGSet conjugation_block_system(const PermGroup& context, const SubgroupHandle& h,
                                    std::vector<SubgroupHandle>* conjugates_out) {
  ConjugateOrbit orbit = conjugate_orbit(context, h);
  const int m = static_cast<int>(orbit.conjugates.size());
  std::map<SubgroupHandle, int> index;
  for (int i = 0; i < m; ++i) index[orbit.conjugates[i]] = i;
  FiniteGSet out;
  out.degree = m;
  for (const auto& g : context.generators()) {
    std::vector<int> images(m);
    for (int i = 0; i < m; ++i)
      images[i] = index.at(conjugate_handle(orbit.conjugates[i], g));
    out.generators.push_back(Permutation(std::move(images)));
  }
  if (conjugates_out) *conjugates_out = std::move(orbit.conjugates);
  return out;
}

FactorResult build_factor(const FiniteGSet& x, const std::vector<int>& phi,
                          const SubgroupHandle& h) {
  if (static_cast<int>(phi.size()) != x.degree) throw Error("phi size mismatch");
  FactorResult out;

  PermGroup context = x.context_group();
  require_subgroup(context, h);
  ConjugateOrbit orbit = conjugate_orbit(context, h);
  out.conjugates = orbit.conjugates;
  const int m = static_cast<int>(out.conjugates.size());

  for (int i = 0; i < m; ++i) {
    bool found = false;
    for (const auto& g : context.elements_shortlex()) {
      if (conjugate_handle(h, g) == out.conjugates[i]) {
        out.coset_reps.push_back(g);
        found = true;
        break;
      }
    }
    if (!found) throw Error("conjugate without representative");
  }

  // phi must be equivariant for the conjugation action on the blocks.
  std::map<SubgroupHandle, int> conj_index;
  for (int i = 0; i < m; ++i) conj_index[out.conjugates[i]] = i;
  for (std::size_t k = 0; k < x.generators.size(); ++k) {
    const Permutation& gamma = x.generators[k];
    std::vector<int> block_image(m);
    for (int i = 0; i < m; ++i)
      block_image[i] = conj_index.at(conjugate_handle(out.conjugates[i], gamma));
    for (int p = 0; p < x.degree; ++p) {
      if (phi[p] < 0 || phi[p] >= m) throw Error("phi value out of range");
      if (phi[gamma.apply(p)] != block_image[phi[p]])
        throw Error("phi is not equivariant");
    }
  }

  // Glue x1 ~ x2 iff same block i and x1 = k x2 with k in K_i.
  UnionFind uf(x.degree);
  for (int p = 0; p < x.degree; ++p)
    for (const auto& k : out.conjugates[phi[p]].elements) uf.unite(p, k.apply(p));

  // The relation must be G-invariant (the construction guarantees it; the
  // audit catches implementation faults).
  out.relation_invariant = true;
  for (const auto& gamma : x.generators)
    for (int p = 0; p < x.degree; ++p)
      for (const auto& k : out.conjugates[phi[p]].elements)
        if (uf.find(gamma.apply(p)) != uf.find(gamma.apply(k.apply(p))))
          out.relation_invariant = false;
  if (!out.relation_invariant) throw Error("glue relation is not G-invariant");

  // Classes, indexed by smallest member.
  std::map<int, int> class_index;
  std::vector<int> point_map(x.degree);
  for (int p = 0; p < x.degree; ++p) {
    int root = uf.find(p);
    auto [it, inserted] = class_index.emplace(root, static_cast<int>(class_index.size()));
    point_map[p] = it->second;
  }
  const int y_degree = static_cast<int>(class_index.size());

  out.pi.source = x;
  out.pi.target.degree = y_degree;
  out.pi.point_map = std::move(point_map);
  for (const auto& gamma : x.generators)
    out.pi.target.generators.push_back(induced_on_target(out.pi, gamma));
  out.pi.validate();

  // phi-tilde is phi on any member of the class; audited constant.
  out.block_of_y.assign(y_degree, -1);
  out.phi_factored = true;
  for (int p = 0; p < x.degree; ++p) {
    int y = out.pi.point_map[p];
    if (out.block_of_y[y] == -1)
      out.block_of_y[y] = phi[p];
    else if (out.block_of_y[y] != phi[p])
      out.phi_factored = false;
  }
  if (!out.phi_factored) throw Error("phi does not factor through the quotient");

  if (x.measure) {
    out.pi.source.measure = x.measure;
    out.pi.target.measure = pushforward_measure(out.pi);
  }
  out.quotient = out.pi.target;

  // Stabilizer audits: G_y = K_i G_x and |fiber| = |H| / |K_i cap G_x|.
  // The induced action of each context element is computed once and the
  // per-point stabilizers are read off it.
  auto fibers = out.pi.fibers();
  const auto& elements = context.elements();
  std::vector<Permutation> induced;
  induced.reserve(elements.size());
  for (const auto& q : elements) induced.push_back(induced_on_target(out.pi, q));

  out.fiber_sizes.clear();
  out.stabilizer_product_law = true;
  out.fiber_formula = true;
  for (int y = 0; y < y_degree; ++y) {
    out.fiber_sizes.push_back(fibers[y].size());
    std::vector<Permutation> gy_elements;
    for (std::size_t e = 0; e < elements.size(); ++e)
      if (induced[e].apply(y) == y) gy_elements.push_back(elements[e]);
    SubgroupHandle gy{std::move(gy_elements)};
    const SubgroupHandle& k = out.conjugates[out.block_of_y[y]];
    for (int p : fibers[y]) {
      SubgroupHandle gx = point_stabilizer(context, p);
      if (product_set(k, gx) != gy.elements) out.stabilizer_product_law = false;
      std::size_t expected = h.order() / intersection_order(k, gx);
      if (fibers[y].size() != expected) out.fiber_formula = false;
    }
  }
  return out;
}

UniversalPropertyResult verify_universal_property(const FactorResult& factor,
                                                  const FiniteGSet& x,
                                                  const std::vector<int>& phi,
                                                  const EquivariantMap& pi_prime,
                                                  const std::vector<int>& phi_prime) {
  UniversalPropertyResult out;
  pi_prime.validate();
  if (static_cast<int>(phi_prime.size()) != pi_prime.target.degree)
    throw Error("phi' size mismatch");

  // (i) phi-tilde' o pi' = phi.
  out.precondition_phi = true;
  for (int p = 0; p < x.degree; ++p)
    if (phi_prime[pi_prime.point_map[p]] != phi[p]) out.precondition_phi = false;

  // (ii) the block's conjugate fixes every point of the block of Y'.
  PermGroup context = x.context_group();
  out.precondition_stabilizer = true;
  for (int y = 0; y < pi_prime.target.degree && out.precondition_stabilizer; ++y) {
    const SubgroupHandle& k = factor.conjugates[phi_prime[y]];
    for (std::size_t e = 0; e < k.elements.size(); ++e) {
      if (induced_on_target(pi_prime, k.elements[e]).apply(y) != y) {
        out.precondition_stabilizer = false;
        out.stabilizer_violation = {y, static_cast<int>(e)};
        break;
      }
    }
  }

  if (out.precondition_phi && out.precondition_stabilizer) {
    // psi(pi(x)) := pi'(x); well-definedness is the content of the
    // universal property and is audited below.
    out.mediating.assign(factor.quotient.degree, -1);
    bool well_defined = true;
    for (int p = 0; p < x.degree; ++p) {
      int y = factor.pi.point_map[p];
      int yp = pi_prime.point_map[p];
      if (out.mediating[y] == -1)
        out.mediating[y] = yp;
      else if (out.mediating[y] != yp)
        well_defined = false;
    }
    if (well_defined) {
      EquivariantMap psi;
      psi.source = factor.quotient;
      psi.target = pi_prime.target;
      psi.point_map = out.mediating;
      psi.validate();
      out.has_mediating_map = true;
      return out;
    }
  }

  // Failure: exhibit a ~-related pair separated by pi'.
  std::map<int, std::vector<int>> classes;
  for (int p = 0; p < x.degree; ++p) classes[factor.pi.point_map[p]].push_back(p);
  for (const auto& [y, members] : classes) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j)
        if (pi_prime.point_map[members[i]] != pi_prime.point_map[members[j]]) {
          out.separated_pair = {members[i], members[j]};
          return out;
        }
  }
  return out;
}

FreeComplementSearch find_free_complement(const LevelSystem& ls,
                                          const AlmostNormalityReport& h_report,
                                          std::size_t index_cap, int normality_window) {
  FreeComplementSearch out;
  const GroupFamily& family = ls.family();
  const auto& h_elements = h_report.subgroup_elements;

  bool h_trivial = h_elements.size() == 1;

  auto try_candidate = [&](const SubgroupSpec& gamma,
                           const std::string& route) -> bool {
    out.candidates_tried.push_back(route + ": " + gamma.describe());
    // No nonidentity element of H may lie in Gamma.
    for (const auto& h : h_elements) {
      if (h == family.identity()) continue;
      if (gamma.member(family, h) != Membership::No) return false;
    }
    // Index by coset enumeration.
    std::size_t index;
    try {
      index = quotient_by_subgroup(family, gamma, index_cap).index();
    } catch (const Error&) {
      return false;
    }
    // Normality on a ball window: g x g^-1 stays in Gamma for every family
    // generator g and every ball element x of Gamma.
    for (const auto& g : family.generators()) {
      GroupElement ginv = family.inverse(g.element);
      for (const auto& x : ball(family, normality_window)) {
        if (gamma.member(family, x) != Membership::Yes) continue;
        GroupElement conj = family.multiply(family.multiply(g.element, x), ginv);
        if (gamma.member(family, conj) != Membership::Yes) return false;
      }
    }
    FreeComplementCertificate cert;
    cert.gamma = gamma;
    cert.route = route;
    cert.index = index;
    cert.normality_window_verified = true;
    cert.h_intersection_trivial = true;
    out.certificate = std::move(cert);
    return true;
  };

  if (h_trivial) {
    if (try_candidate(SubgroupSpec::whole_group(family), "whole-group")) return out;
  }

  // Kernel of the conjugation action on Conj(H), when the almost-normality
  // certificate closed the conjugate orbit.
  if (h_report.verdict == AlmostNormalityReport::Verdict::Yes &&
      !h_report.conjugates.empty()) {
    SubgroupSpec kernel = SubgroupSpec::conjugation_kernel(family, h_report.conjugates);
    if (try_candidate(kernel, "conjugation-kernel")) return out;
  }

  // Cores of the chain levels, shallowest first.
  for (std::size_t i = 0; i < ls.chain().specs.size(); ++i) {
    auto core = ls.chain().specs[i].core(family);
    if (!core) continue;
    if (try_candidate(*core, "chain-core level " + std::to_string(i + 1))) return out;
  }
  return out;
}

ExtensionResult build_extension(const FiniteGSet& y, const std::vector<bool>& yh_points,
                                int y0, const FiniteGSet& gamma_cosets) {
  if (static_cast<int>(yh_points.size()) != y.degree) throw Error("Y_H mask size mismatch");
  if (y0 < 0 || y0 >= y.degree || !yh_points[y0])
    throw Error("distinguished point must lie in Y_H");
  if (y.generators.size() != gamma_cosets.generators.size())
    throw Error("generator lists differ in length");
  bool any_yh = std::find(yh_points.begin(), yh_points.end(), true) != yh_points.end();
  if (!any_yh) throw Error("Y_H is empty");

  ExtensionResult out;
  out.gamma_index = gamma_cosets.degree;

  const int m = gamma_cosets.degree;
  auto pack = [&](int yy, int w) { return yy * m + w; };

  // Product generator images on Y x G/Gamma.
  std::vector<Permutation> product_gens;
  for (std::size_t k = 0; k < y.generators.size(); ++k) {
    std::vector<int> images(y.degree * m);
    for (int yy = 0; yy < y.degree; ++yy)
      for (int w = 0; w < m; ++w)
        images[pack(yy, w)] =
            pack(y.generators[k].apply(yy), gamma_cosets.generators[k].apply(w));
    product_gens.push_back(Permutation(std::move(images)));
  }

  // Orbit of (y0, identity coset), BFS in generator order.
  std::vector<Permutation> step = product_gens;
  for (const auto& g : product_gens) step.push_back(g.inverse());
  std::vector<int> orbit;
  std::map<int, int> orbit_index;
  orbit.push_back(pack(y0, 0));
  orbit_index[pack(y0, 0)] = 0;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    for (const auto& g : step) {
      int img = g.apply(orbit[i]);
      if (orbit_index.emplace(img, static_cast<int>(orbit.size())).second)
        orbit.push_back(img);
    }
  }
  // Re-index points in ascending product order for a stable layout.
  std::sort(orbit.begin(), orbit.end());
  orbit_index.clear();
  for (std::size_t i = 0; i < orbit.size(); ++i)
    orbit_index[orbit[i]] = static_cast<int>(i);

  out.extension.degree = static_cast<int>(orbit.size());
  for (const auto& g : product_gens) {
    std::vector<int> images(orbit.size());
    for (std::size_t i = 0; i < orbit.size(); ++i)
      images[i] = orbit_index.at(g.apply(orbit[i]));
    out.extension.generators.push_back(Permutation(std::move(images)));
  }
  for (int p : orbit) out.point_labels.emplace_back(p / m, p % m);

  out.pi.source = out.extension;
  out.pi.target = y;
  for (std::size_t i = 0; i < orbit.size(); ++i)
    out.pi.point_map.push_back(orbit[i] / m);
  out.pi.validate();

  // Product measure restricted and renormalized to the orbit.
  if (y.measure) {
    Rational total(0);
    std::vector<Rational> lifted;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      Rational w = (*y.measure)[orbit[i] / m] / m;
      lifted.push_back(w);
      total += w;
    }
    for (auto& w : lifted) w /= total;
    out.extension.measure = std::move(lifted);
    out.pi.source.measure = out.extension.measure;
    FiniteGSet check = out.extension;
    try {
      check.validate_measure();
      out.measure_invariant = true;
    } catch (const Error&) {
      out.measure_invariant = false;
    }
  }

  auto fibers = out.pi.fibers();
  out.fibers_bounded = true;
  for (const auto& f : fibers) {
    out.fiber_sizes.push_back(f.size());
    if (f.size() > static_cast<std::size_t>(m)) out.fibers_bounded = false;
  }

  // Freeness over Y_H in the extension's context group.
  PermGroup context = out.extension.context_group();
  out.free_over_yh = true;
  for (int p = 0; p < out.extension.degree; ++p) {
    if (!yh_points[out.pi.point_map[p]]) continue;
    if (point_stabilizer(context, p).order() != 1) out.free_over_yh = false;
  }
  return out;
}

FiberLemmaResult fiber_lemma_check(const EquivariantMap& map,
                                   const PermGroup& source_context, int y) {
  FiberLemmaResult out;
  auto fibers = map.fibers();
  if (y < 0 || y >= map.target.degree) throw Error("target point out of range");
  const std::vector<int>& fiber = fibers[y];
  out.fiber_size = fiber.size();
  if (fiber.empty()) throw Error("empty fiber");

  SubgroupHandle gy = target_point_stabilizer(map, source_context, y);
  out.gy_order = gy.order();

  BigInt m_factorial(1);
  for (std::size_t i = 2; i <= fiber.size(); ++i) m_factorial *= BigInt(i);

  out.index_bound_holds = true;
  out.has_free_fiber_point = false;
  for (int p : fiber) {
    SubgroupHandle gx = point_stabilizer(source_context, p);
    if (gy.order() % gx.order() != 0) throw Error("fiber stabilizer not a subgroup");
    BigInt index(static_cast<unsigned long>(gy.order() / gx.order()));
    if (index > m_factorial) out.index_bound_holds = false;
    if (gx.order() == 1) out.has_free_fiber_point = true;
  }

  // G_y permutes the fiber; with a free fiber point the homomorphism into
  // S_m is injective with regular image.
  std::map<int, int> fiber_pos;
  for (std::size_t i = 0; i < fiber.size(); ++i) fiber_pos[fiber[i]] = static_cast<int>(i);
  std::vector<Permutation> image_elements;
  bool injective = true;
  std::set<Permutation> image_set;
  for (const auto& q : gy.elements) {
    std::vector<int> sigma(fiber.size());
    for (std::size_t i = 0; i < fiber.size(); ++i)
      sigma[i] = fiber_pos.at(q.apply(fiber[i]));
    Permutation s(std::move(sigma));
    if (!image_set.insert(s).second) injective = false;
    image_elements.push_back(std::move(s));
  }
  if (out.has_free_fiber_point) {
    out.hom_injective = injective;
    std::vector<Permutation> img(image_set.begin(), image_set.end());
    out.image_regular = is_regular_subgroup(SubgroupHandle{std::move(img)});
  }
  return out;
}

}  // namespace gact
