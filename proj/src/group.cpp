#include "gact/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "gact/error.hpp"

namespace gact {

GroupElement GroupElement::pair(GroupElement left, GroupElement right) {
  GroupElement e;
  std::vector<GroupElement> parts;
  parts.push_back(std::move(left));
  parts.push_back(std::move(right));
  e.value_ = std::move(parts);
  return e;
}

const DihedralElt& GroupElement::dihedral() const {
  if (const auto* d = std::get_if<DihedralElt>(&value_)) return *d;
  throw Error("element is not dihedral");
}

const AbelianElt& GroupElement::abelian() const {
  if (const auto* v = std::get_if<AbelianElt>(&value_)) return *v;
  throw Error("element is not free-abelian");
}

const Permutation& GroupElement::perm() const {
  if (const auto* p = std::get_if<Permutation>(&value_)) return *p;
  throw Error("element is not a permutation");
}

bool GroupElement::is_pair() const {
  return std::holds_alternative<std::vector<GroupElement>>(value_);
}

const GroupElement& GroupElement::left() const {
  if (const auto* v = std::get_if<std::vector<GroupElement>>(&value_)) return (*v)[0];
  throw Error("element is not a product pair");
}

const GroupElement& GroupElement::right() const {
  if (const auto* v = std::get_if<std::vector<GroupElement>>(&value_)) return (*v)[1];
  throw Error("element is not a product pair");
}

bool GroupElement::operator<(const GroupElement& rhs) const {
  if (value_.index() != rhs.value_.index()) return value_.index() < rhs.value_.index();
  return std::visit(
      [&rhs](const auto& lhs_val) {
        using T = std::decay_t<decltype(lhs_val)>;
        return lhs_val < std::get<T>(rhs.value_);
      },
      value_);
}

std::string GroupElement::to_string() const {
  struct Visitor {
    std::string operator()(const DihedralElt& d) const {
      std::ostringstream os;
      if (d.shift == 0 && !d.flip) return "1";
      if (d.shift != 0) {
        os << "a";
        if (d.shift != 1) os << "^" << d.shift;
      }
      if (d.flip) os << (d.shift != 0 ? " b" : "b");
      return os.str();
    }
    std::string operator()(const AbelianElt& v) const {
      std::ostringstream os;
      os << "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i];
      }
      os << ")";
      return os.str();
    }
    std::string operator()(const Permutation& p) const { return p.to_string(); }
    std::string operator()(const std::vector<GroupElement>& parts) const {
      return "[" + parts[0].to_string() + " | " + parts[1].to_string() + "]";
    }
  };
  return std::visit(Visitor{}, value_);
}

GroupFamily GroupFamily::dihedral_infinite() {
  GroupFamily f;
  f.kind_ = Kind::DihedralInfinite;
  f.build_generators();
  return f;
}

GroupFamily GroupFamily::free_abelian(int rank) {
  if (rank < 1) throw Error("free-abelian rank must be positive");
  GroupFamily f;
  f.kind_ = Kind::FreeAbelian;
  f.rank_ = rank;
  f.build_generators();
  return f;
}

GroupFamily GroupFamily::finite_perm(PermGroup base) {
  GroupFamily f;
  f.kind_ = Kind::FinitePerm;
  f.base_ = std::make_shared<PermGroup>(std::move(base));
  f.build_generators();
  return f;
}

GroupFamily GroupFamily::direct_product(GroupFamily left, GroupFamily right) {
  GroupFamily f;
  f.kind_ = Kind::DirectProduct;
  f.parts_.push_back(std::make_shared<GroupFamily>(std::move(left)));
  f.parts_.push_back(std::make_shared<GroupFamily>(std::move(right)));
  f.build_generators();
  return f;
}

const PermGroup& GroupFamily::base() const {
  if (!base_) throw Error("family has no base permutation group");
  return *base_;
}

const GroupFamily& GroupFamily::left_factor() const {
  if (parts_.size() != 2) throw Error("family is not a direct product");
  return *parts_[0];
}

const GroupFamily& GroupFamily::right_factor() const {
  if (parts_.size() != 2) throw Error("family is not a direct product");
  return *parts_[1];
}

void GroupFamily::build_generators() {
  generators_.clear();
  switch (kind_) {
    case Kind::DihedralInfinite:
      generators_.push_back({"a", GroupElement(DihedralElt{1, false})});
      generators_.push_back({"a^-1", GroupElement(DihedralElt{-1, false})});
      generators_.push_back({"b", GroupElement(DihedralElt{0, true})});
      break;
    case Kind::FreeAbelian:
      for (int i = 0; i < rank_; ++i) {
        AbelianElt plus(rank_, 0), minus(rank_, 0);
        plus[i] = 1;
        minus[i] = -1;
        generators_.push_back({"t" + std::to_string(i), GroupElement(std::move(plus))});
        generators_.push_back({"t" + std::to_string(i) + "^-1",
                               GroupElement(std::move(minus))});
      }
      break;
    case Kind::FinitePerm: {
      int idx = 0;
      for (const auto& g : base_->generators()) {
        std::string label = "g" + std::to_string(idx++);
        generators_.push_back({label, GroupElement(g)});
        Permutation inv = g.inverse();
        if (!(inv == g)) generators_.push_back({label + "^-1", GroupElement(inv)});
      }
      break;
    }
    case Kind::DirectProduct: {
      for (const auto& g : parts_[0]->generators())
        generators_.push_back(
            {"l." + g.label, GroupElement::pair(g.element, parts_[1]->identity())});
      for (const auto& g : parts_[1]->generators())
        generators_.push_back(
            {"r." + g.label, GroupElement::pair(parts_[0]->identity(), g.element)});
      break;
    }
  }
}

GroupElement GroupFamily::identity() const {
  switch (kind_) {
    case Kind::DihedralInfinite:
      return GroupElement(DihedralElt{0, false});
    case Kind::FreeAbelian:
      return GroupElement(AbelianElt(rank_, 0));
    case Kind::FinitePerm:
      return GroupElement(Permutation(base_->degree()));
    case Kind::DirectProduct:
      return GroupElement::pair(parts_[0]->identity(), parts_[1]->identity());
  }
  throw Error("unreachable");
}

GroupElement GroupFamily::multiply(const GroupElement& x, const GroupElement& y) const {
  switch (kind_) {
    case Kind::DihedralInfinite: {
      // (k1,e1)*(k2,e2) = (k1 + (-1)^e1 k2, e1 xor e2), from the relations.
      const auto& dx = x.dihedral();
      const auto& dy = y.dihedral();
      std::int64_t shift = dx.shift + (dx.flip ? -dy.shift : dy.shift);
      return GroupElement(DihedralElt{shift, dx.flip != dy.flip});
    }
    case Kind::FreeAbelian: {
      const auto& vx = x.abelian();
      const auto& vy = y.abelian();
      if (vx.size() != vy.size() || static_cast<int>(vx.size()) != rank_)
        throw Error("free-abelian rank mismatch");
      AbelianElt out(rank_);
      for (int i = 0; i < rank_; ++i) out[i] = vx[i] + vy[i];
      return GroupElement(std::move(out));
    }
    case Kind::FinitePerm:
      return GroupElement(x.perm() * y.perm());
    case Kind::DirectProduct:
      return GroupElement::pair(parts_[0]->multiply(x.left(), y.left()),
                                parts_[1]->multiply(x.right(), y.right()));
  }
  throw Error("unreachable");
}

GroupElement GroupFamily::inverse(const GroupElement& x) const {
  switch (kind_) {
    case Kind::DihedralInfinite: {
      const auto& d = x.dihedral();
      // (a^k b^e)^-1 = b^e a^-k = a^{(-1)^e * -k} b^e.
      std::int64_t shift = d.flip ? d.shift : -d.shift;
      return GroupElement(DihedralElt{shift, d.flip});
    }
    case Kind::FreeAbelian: {
      AbelianElt out = x.abelian();
      for (auto& v : out) v = -v;
      return GroupElement(std::move(out));
    }
    case Kind::FinitePerm:
      return GroupElement(x.perm().inverse());
    case Kind::DirectProduct:
      return GroupElement::pair(parts_[0]->inverse(x.left()),
                                parts_[1]->inverse(x.right()));
  }
  throw Error("unreachable");
}

const GroupElement& GroupFamily::generator(const std::string& label) const {
  for (const auto& g : generators_)
    if (g.label == label) return g.element;
  throw Error("unknown generator label: " + label);
}

GroupElement GroupFamily::word(const std::vector<std::string>& labels) const {
  GroupElement out = identity();
  for (const auto& l : labels) out = multiply(out, generator(l));
  return out;
}

bool GroupFamily::is_finite() const {
  switch (kind_) {
    case Kind::DihedralInfinite:
    case Kind::FreeAbelian:
      return false;
    case Kind::FinitePerm:
      return true;
    case Kind::DirectProduct:
      return parts_[0]->is_finite() && parts_[1]->is_finite();
  }
  return false;
}

std::string GroupFamily::describe() const {
  switch (kind_) {
    case Kind::DihedralInfinite:
      return "dihedral_infinite";
    case Kind::FreeAbelian:
      return "free_abelian(" + std::to_string(rank_) + ")";
    case Kind::FinitePerm:
      return "finite_perm(degree " + std::to_string(base_->degree()) + ")";
    case Kind::DirectProduct:
      return parts_[0]->describe() + " x " + parts_[1]->describe();
  }
  return "?";
}

void GroupFamily::validate(const GroupElement& x) const {
  switch (kind_) {
    case Kind::DihedralInfinite:
      x.dihedral();
      return;
    case Kind::FreeAbelian:
      if (static_cast<int>(x.abelian().size()) != rank_)
        throw Error("free-abelian rank mismatch");
      return;
    case Kind::FinitePerm:
      if (!base_->contains(x.perm())) throw Error("permutation not in base group");
      return;
    case Kind::DirectProduct:
      parts_[0]->validate(x.left());
      parts_[1]->validate(x.right());
      return;
  }
}

std::vector<GroupElement> ball(const GroupFamily& family, int radius) {
  if (radius < 0) throw Error("ball radius must be nonnegative");
  std::set<GroupElement> seen;
  std::vector<GroupElement> order;
  GroupElement id = family.identity();
  seen.insert(id);
  order.push_back(id);
  std::size_t layer_begin = 0;
  for (int r = 0; r < radius; ++r) {
    std::size_t layer_end = order.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& g : family.generators()) {
        GroupElement next = family.multiply(order[i], g.element);
        if (seen.insert(next).second) order.push_back(std::move(next));
      }
    }
    layer_begin = layer_end;
  }
  return order;
}

namespace {

const Permutation& image_of(const std::vector<std::pair<std::string, Permutation>>& images,
                            const std::string& label) {
  for (const auto& [l, p] : images)
    if (l == label) return p;
  throw Error("missing generator image: " + label);
}

}  // namespace

void verify_generator_images(
    const GroupFamily& family,
    const std::vector<std::pair<std::string, Permutation>>& images) {
  switch (family.kind()) {
    case GroupFamily::Kind::DihedralInfinite: {
      const auto& a = image_of(images, "a");
      const auto& ainv = image_of(images, "a^-1");
      const auto& b = image_of(images, "b");
      if (!(a * ainv).is_identity()) throw Error("relation a a^-1 = 1 violated");
      if (!(b * b).is_identity()) throw Error("relation b^2 = 1 violated");
      if (!(b * a * b == ainv)) throw Error("relation b a b = a^-1 violated");
      return;
    }
    case GroupFamily::Kind::FreeAbelian: {
      for (int i = 0; i < family.rank(); ++i) {
        const auto& t = image_of(images, "t" + std::to_string(i));
        const auto& tinv = image_of(images, "t" + std::to_string(i) + "^-1");
        if (!(t * tinv).is_identity()) throw Error("relation t t^-1 = 1 violated");
      }
      for (const auto& [l1, p1] : images)
        for (const auto& [l2, p2] : images)
          if (!(p1 * p2 == p2 * p1))
            throw Error("commutation violated: " + l1 + ", " + l2);
      return;
    }
    case GroupFamily::Kind::FinitePerm: {
      // Full multiplicativity over the base group: express each base element
      // as a word in the base generators via BFS, map it through the images,
      // then check phi(g)phi(h) = phi(gh) for every pair.
      const PermGroup& base = family.base();
      std::vector<Permutation> gens;
      std::vector<Permutation> gen_images;
      int idx = 0;
      for (const auto& g : base.generators()) {
        std::string label = "g" + std::to_string(idx++);
        gens.push_back(g);
        gen_images.push_back(image_of(images, label));
        Permutation inv = g.inverse();
        if (!(inv == g)) {
          gens.push_back(inv);
          gen_images.push_back(image_of(images, label + "^-1"));
        }
      }
      if (gen_images.empty()) return;  // trivial base group, nothing to check
      std::map<Permutation, Permutation> phi;
      Permutation id_base(base.degree());
      Permutation id_img(gen_images[0].degree());
      phi.emplace(id_base, id_img);
      std::vector<Permutation> queue{id_base};
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (std::size_t k = 0; k < gens.size(); ++k) {
          Permutation next = queue[i] * gens[k];
          if (phi.find(next) == phi.end()) {
            phi.emplace(next, phi.at(queue[i]) * gen_images[k]);
            queue.push_back(std::move(next));
          }
        }
      }
      for (const auto& [g, pg] : phi)
        for (const auto& [h, ph] : phi)
          if (!(phi.at(g * h) == pg * ph))
            throw Error("finite factor images are not multiplicative");
      return;
    }
    case GroupFamily::Kind::DirectProduct: {
      std::vector<std::pair<std::string, Permutation>> left, right;
      for (const auto& [l, p] : images) {
        if (l.rfind("l.", 0) == 0) left.emplace_back(l.substr(2), p);
        if (l.rfind("r.", 0) == 0) right.emplace_back(l.substr(2), p);
      }
      for (const auto& [l1, p1] : left)
        for (const auto& [l2, p2] : right)
          if (!(p1 * p2 == p2 * p1))
            throw Error("product factors do not commute: l." + l1 + ", r." + l2);
      verify_generator_images(family.left_factor(), left);
      verify_generator_images(family.right_factor(), right);
      return;
    }
  }
}

}  // namespace gact
