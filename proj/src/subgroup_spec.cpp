#include "gact/subgroup_spec.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include "gact/error.hpp"

namespace gact {

namespace {

std::int64_t positive_mod(std::int64_t v, std::int64_t m) {
  std::int64_t r = v % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::vector<std::vector<std::int64_t>> hermite_normal_form(
    std::vector<std::vector<std::int64_t>> rows, int cols) {
  std::vector<std::vector<BigInt>> m;
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != cols) throw Error("lattice row rank mismatch");
    m.emplace_back(r.begin(), r.end());
  }
  std::size_t pivot_row = 0;
  for (int col = 0; col < cols && pivot_row < m.size(); ++col) {
    // Euclidean elimination within the column: repeatedly move the row with
    // the smallest nonzero entry into the pivot position and reduce the rest
    // modulo it. The minimal absolute value strictly decreases, so this
    // terminates.
    while (true) {
      std::size_t best = m.size();
      for (std::size_t r = pivot_row; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        if (best == m.size() || abs(m[r][col]) < abs(m[best][col])) best = r;
      }
      if (best == m.size()) break;
      std::swap(m[pivot_row], m[best]);
      bool others_zero = true;
      for (std::size_t r = pivot_row + 1; r < m.size(); ++r) {
        if (m[r][col] == 0) continue;
        BigInt q = m[r][col] / m[pivot_row][col];
        for (int c = 0; c < cols; ++c) m[r][c] -= q * m[pivot_row][c];
        if (m[r][col] != 0) others_zero = false;
      }
      if (others_zero) break;
    }
    if (m[pivot_row][col] != 0) {
      if (m[pivot_row][col] < 0)
        for (int c = 0; c < cols; ++c) m[pivot_row][c] = -m[pivot_row][c];
      // Reduce the rows above to complete the echelon form.
      for (std::size_t r = 0; r < pivot_row; ++r) {
        if (m[r][col] == 0) continue;
        BigInt q = m[r][col] / m[pivot_row][col];
        if (m[r][col] < 0 && m[r][col] % m[pivot_row][col] != 0) q -= 1;
        for (int c = 0; c < cols; ++c) m[r][c] -= q * m[pivot_row][c];
      }
      ++pivot_row;
    }
  }
  m.resize(pivot_row);
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : m) {
    std::vector<std::int64_t> r;
    for (const auto& v : row) {
      if (v > std::numeric_limits<std::int64_t>::max() ||
          v < std::numeric_limits<std::int64_t>::min())
        throw Error("lattice entry overflow in HNF");
      r.push_back(static_cast<std::int64_t>(v));
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool lattice_contains(const std::vector<std::vector<std::int64_t>>& hnf_rows,
                      std::vector<BigInt> v) {
  for (const auto& row : hnf_rows) {
    int pivot_col = -1;
    for (std::size_t c = 0; c < row.size(); ++c)
      if (row[c] != 0) {
        pivot_col = static_cast<int>(c);
        break;
      }
    if (pivot_col < 0) continue;
    if (v[pivot_col] % row[pivot_col] != 0) return false;
    BigInt q = v[pivot_col] / row[pivot_col];
    for (std::size_t c = 0; c < row.size(); ++c) v[c] -= q * row[c];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

SubgroupSpec SubgroupSpec::whole_group(const GroupFamily&) {
  SubgroupSpec s;
  s.tag_ = Tag::WholeGroup;
  return s;
}

SubgroupSpec SubgroupSpec::dihedral_power(int i) {
  if (i < 0) throw Error("dihedral power exponent must be nonnegative");
  SubgroupSpec s;
  s.tag_ = Tag::DihedralPower;
  s.power_ = i;
  s.modulus_ = std::int64_t(1) << i;
  return s;
}

SubgroupSpec SubgroupSpec::dihedral_translations(std::int64_t modulus) {
  if (modulus <= 0) throw Error("translation modulus must be positive");
  SubgroupSpec s;
  s.tag_ = Tag::DihedralTranslations;
  s.modulus_ = modulus;
  return s;
}

SubgroupSpec SubgroupSpec::lattice(int rank,
                                   std::vector<std::vector<std::int64_t>> basis_rows) {
  SubgroupSpec s;
  s.tag_ = Tag::Lattice;
  s.rank_ = rank;
  s.basis_ = basis_rows;
  s.hnf_ = hermite_normal_form(std::move(basis_rows), rank);
  return s;
}

SubgroupSpec SubgroupSpec::finite_elements(std::vector<Permutation> elements) {
  if (elements.empty()) throw Error("finite element list may not be empty");
  SubgroupSpec s;
  s.tag_ = Tag::FiniteElements;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  s.perm_elements_ = std::move(elements);
  // Closure sanity.
  SubgroupHandle h{s.perm_elements_};
  for (const auto& p : s.perm_elements_) {
    if (!h.contains(p.inverse())) throw Error("element list not closed under inverse");
    for (const auto& q : s.perm_elements_)
      if (!h.contains(p * q)) throw Error("element list not closed under composition");
  }
  return s;
}

SubgroupSpec SubgroupSpec::product(SubgroupSpec left, SubgroupSpec right) {
  SubgroupSpec s;
  s.tag_ = Tag::Product;
  s.parts_.push_back(std::make_shared<SubgroupSpec>(std::move(left)));
  s.parts_.push_back(std::make_shared<SubgroupSpec>(std::move(right)));
  return s;
}

SubgroupSpec SubgroupSpec::conjugation_kernel(
    const GroupFamily& family, std::vector<std::vector<GroupElement>> conjugates) {
  SubgroupSpec s;
  s.tag_ = Tag::ConjugationKernel;
  for (auto& c : conjugates) std::sort(c.begin(), c.end());
  std::sort(conjugates.begin(), conjugates.end());
  s.conjugates_ = std::move(conjugates);
  if (s.conjugates_.empty()) throw Error("conjugation kernel needs a conjugate list");
  for (const auto& c : s.conjugates_)
    for (const auto& e : c) family.validate(e);
  return s;
}

SubgroupSpec SubgroupSpec::words(std::vector<std::vector<std::string>> generator_words) {
  SubgroupSpec s;
  s.tag_ = Tag::Words;
  s.words_ = std::move(generator_words);
  return s;
}

const SubgroupSpec& SubgroupSpec::left() const {
  if (parts_.size() != 2) throw Error("spec is not a product");
  return *parts_[0];
}

const SubgroupSpec& SubgroupSpec::right() const {
  if (parts_.size() != 2) throw Error("spec is not a product");
  return *parts_[1];
}

const std::vector<GroupElement>& SubgroupSpec::closed_elements(const GroupFamily& family,
                                                               std::size_t cap) const {
  if (closure_complete_) return closure_;
  std::vector<GroupElement> gens = generating_elements(family);
  std::set<GroupElement> seen;
  std::vector<GroupElement> order;
  GroupElement id = family.identity();
  seen.insert(id);
  order.push_back(id);
  for (const auto& g : gens) {
    GroupElement inv = family.inverse(g);
    if (std::find(gens.begin(), gens.end(), inv) == gens.end()) gens.push_back(inv);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& g : gens) {
      GroupElement next = family.multiply(order[i], g);
      if (seen.insert(next).second) {
        if (seen.size() > cap) {
          // Keep the partial closure so tri-state membership can still
          // answer "yes" for elements already reached.
          std::sort(order.begin(), order.end());
          closure_ = std::move(order);
          throw Error("subgroup closure cap exceeded (" + std::to_string(cap) + ")");
        }
        order.push_back(std::move(next));
      }
    }
  }
  std::sort(order.begin(), order.end());
  closure_ = std::move(order);
  closure_complete_ = true;
  return closure_;
}

Membership SubgroupSpec::member(const GroupFamily& family, const GroupElement& g) const {
  switch (tag_) {
    case Tag::WholeGroup:
      return Membership::Yes;
    case Tag::DihedralPower: {
      const auto& d = g.dihedral();
      return positive_mod(d.shift, modulus_) == 0 ? Membership::Yes : Membership::No;
    }
    case Tag::DihedralTranslations: {
      const auto& d = g.dihedral();
      return (!d.flip && positive_mod(d.shift, modulus_) == 0) ? Membership::Yes
                                                               : Membership::No;
    }
    case Tag::Lattice: {
      const auto& v = g.abelian();
      if (static_cast<int>(v.size()) != rank_) throw Error("lattice rank mismatch");
      return lattice_contains(hnf_, std::vector<BigInt>(v.begin(), v.end()))
                 ? Membership::Yes
                 : Membership::No;
    }
    case Tag::FiniteElements:
      return std::binary_search(perm_elements_.begin(), perm_elements_.end(), g.perm())
                 ? Membership::Yes
                 : Membership::No;
    case Tag::Product: {
      Membership l = parts_[0]->member(family.left_factor(), g.left());
      Membership r = parts_[1]->member(family.right_factor(), g.right());
      if (l == Membership::Yes && r == Membership::Yes) return Membership::Yes;
      if (l == Membership::No || r == Membership::No) return Membership::No;
      return Membership::Unknown;
    }
    case Tag::ConjugationKernel: {
      GroupElement ginv = family.inverse(g);
      for (const auto& c : conjugates_) {
        std::vector<GroupElement> image;
        image.reserve(c.size());
        for (const auto& h : c)
          image.push_back(family.multiply(family.multiply(g, h), ginv));
        std::sort(image.begin(), image.end());
        if (image != c) return Membership::No;
      }
      return Membership::Yes;
    }
    case Tag::Words: {
      try {
        const auto& elts = closed_elements(family);
        return std::binary_search(elts.begin(), elts.end(), g) ? Membership::Yes
                                                               : Membership::No;
      } catch (const Error&) {
        // Closure did not terminate within the cap; answer what the partial
        // closure can support.
        return std::binary_search(closure_.begin(), closure_.end(), g)
                   ? Membership::Yes
                   : Membership::Unknown;
      }
    }
  }
  throw Error("unreachable");
}

std::vector<GroupElement> SubgroupSpec::generating_elements(
    const GroupFamily& family) const {
  switch (tag_) {
    case Tag::WholeGroup: {
      std::vector<GroupElement> out;
      for (const auto& g : family.generators()) out.push_back(g.element);
      return out;
    }
    case Tag::DihedralPower:
      return {GroupElement(DihedralElt{modulus_, false}),
              GroupElement(DihedralElt{0, true})};
    case Tag::DihedralTranslations:
      return {GroupElement(DihedralElt{modulus_, false})};
    case Tag::Lattice: {
      std::vector<GroupElement> out;
      for (const auto& row : basis_) out.push_back(GroupElement(AbelianElt(row)));
      return out;
    }
    case Tag::FiniteElements: {
      std::vector<GroupElement> out;
      for (const auto& p : perm_elements_) out.push_back(GroupElement(p));
      return out;
    }
    case Tag::Product: {
      std::vector<GroupElement> out;
      for (const auto& l : parts_[0]->generating_elements(family.left_factor()))
        out.push_back(GroupElement::pair(l, family.right_factor().identity()));
      for (const auto& r : parts_[1]->generating_elements(family.right_factor()))
        out.push_back(GroupElement::pair(family.left_factor().identity(), r));
      return out;
    }
    case Tag::ConjugationKernel:
      return {};
    case Tag::Words: {
      std::vector<GroupElement> out;
      for (const auto& w : words_) out.push_back(family.word(w));
      return out;
    }
  }
  throw Error("unreachable");
}

std::optional<GroupElement> SubgroupSpec::canonical_coset_rep(
    const GroupFamily& family, const GroupElement& g) const {
  switch (tag_) {
    case Tag::WholeGroup:
      return family.identity();
    case Tag::DihedralPower: {
      // gH determined by shift mod 2^i (b and a^(2^i) both lie in H).
      const auto& d = g.dihedral();
      return GroupElement(DihedralElt{positive_mod(d.shift, modulus_), false});
    }
    case Tag::DihedralTranslations: {
      const auto& d = g.dihedral();
      return GroupElement(DihedralElt{positive_mod(d.shift, modulus_), d.flip});
    }
    case Tag::Lattice: {
      std::vector<BigInt> v(g.abelian().begin(), g.abelian().end());
      for (const auto& row : hnf_) {
        int pivot_col = -1;
        for (std::size_t c = 0; c < row.size(); ++c)
          if (row[c] != 0) {
            pivot_col = static_cast<int>(c);
            break;
          }
        if (pivot_col < 0) continue;
        BigInt q = v[pivot_col] / row[pivot_col];
        if (v[pivot_col] < 0 && v[pivot_col] % row[pivot_col] != 0) q -= 1;
        for (std::size_t c = 0; c < row.size(); ++c) v[c] -= q * row[c];
      }
      AbelianElt out;
      for (const auto& x : v) out.push_back(static_cast<std::int64_t>(x));
      return GroupElement(std::move(out));
    }
    case Tag::FiniteElements: {
      // Smallest element of the coset g*K in the canonical permutation order.
      Permutation best = g.perm();
      for (const auto& k : perm_elements_) {
        Permutation cand = g.perm() * k;
        if (cand < best) best = cand;
      }
      return GroupElement(best);
    }
    case Tag::Product: {
      auto l = parts_[0]->canonical_coset_rep(family.left_factor(), g.left());
      auto r = parts_[1]->canonical_coset_rep(family.right_factor(), g.right());
      if (!l || !r) return std::nullopt;
      return GroupElement::pair(std::move(*l), std::move(*r));
    }
    case Tag::ConjugationKernel:
      return std::nullopt;
    case Tag::Words:
      if (closure_complete_ && family.kind() == GroupFamily::Kind::FinitePerm) {
        Permutation best = g.perm();
        for (const auto& k : closure_) {
          Permutation cand = g.perm() * k.perm();
          if (cand < best) best = cand;
        }
        return GroupElement(best);
      }
      return std::nullopt;
  }
  throw Error("unreachable");
}

std::optional<SubgroupSpec> SubgroupSpec::core(const GroupFamily& family) const {
  switch (tag_) {
    case Tag::WholeGroup:
    case Tag::DihedralTranslations:
    case Tag::Lattice:
    case Tag::ConjugationKernel:
      return *this;  // already normal
    case Tag::DihedralPower:
      // Conjugates of <a^m, b> intersect in the translations <a^m>.
      return dihedral_translations(modulus_);
    case Tag::FiniteElements: {
      if (family.kind() != GroupFamily::Kind::FinitePerm) return std::nullopt;
      SubgroupHandle h{perm_elements_};
      ConjugateOrbit orbit = conjugate_orbit(family.base(), h);
      return finite_elements(orbit.core.elements);
    }
    case Tag::Product: {
      auto l = parts_[0]->core(family.left_factor());
      auto r = parts_[1]->core(family.right_factor());
      if (!l || !r) return std::nullopt;
      return product(std::move(*l), std::move(*r));
    }
    case Tag::Words:
      if (closure_complete_ && family.kind() == GroupFamily::Kind::FinitePerm) {
        std::vector<Permutation> perms;
        for (const auto& e : closure_) perms.push_back(e.perm());
        return finite_elements(std::move(perms)).core(family);
      }
      return std::nullopt;
  }
  throw Error("unreachable");
}

std::string SubgroupSpec::describe() const {
  std::ostringstream os;
  switch (tag_) {
    case Tag::WholeGroup:
      return "whole group";
    case Tag::DihedralPower:
      os << "<a^" << modulus_ << ", b>";
      return os.str();
    case Tag::DihedralTranslations:
      os << "<a^" << modulus_ << ">";
      return os.str();
    case Tag::Lattice:
      os << "lattice(" << basis_.size() << " rows in Z^" << rank_ << ")";
      return os.str();
    case Tag::FiniteElements:
      os << "finite subgroup of order " << perm_elements_.size();
      return os.str();
    case Tag::Product:
      return parts_[0]->describe() + " x " + parts_[1]->describe();
    case Tag::ConjugationKernel:
      os << "conjugation kernel on " << conjugates_.size() << " subgroups";
      return os.str();
    case Tag::Words:
      os << "words(" << words_.size() << " generators)";
      return os.str();
  }
  return "?";
}

}  // namespace gact
