#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "gact/perm_group.hpp"

namespace gact {

// Normal form of an infinite-dihedral element a^shift * b^flip with the
// defining relations b a b = a^-1 and b^2 = 1.
struct DihedralElt {
  std::int64_t shift = 0;
  bool flip = false;

  bool operator==(const DihedralElt&) const = default;
  bool operator<(const DihedralElt& rhs) const {
    if (shift != rhs.shift) return shift < rhs.shift;
    return flip < rhs.flip;
  }
};

using AbelianElt = std::vector<std::int64_t>;

// One element of a built-in group family, stored in a unique normal form:
//   dihedral        (shift, flip)        meaning a^shift b^flip
//   free abelian    integer vector
//   finite perm     a Permutation
//   direct product  pair of components (vector of size 2)
//
// Equality of elements is equality of normal forms.
class GroupElement {
 public:
  enum class Kind { Dihedral = 0, Abelian = 1, Perm = 2, Pair = 3 };

  GroupElement() : value_(DihedralElt{}) {}
  explicit GroupElement(DihedralElt d) : value_(std::move(d)) {}
  explicit GroupElement(AbelianElt v) : value_(std::move(v)) {}
  explicit GroupElement(Permutation p) : value_(std::move(p)) {}
  static GroupElement pair(GroupElement left, GroupElement right);

  Kind kind() const { return static_cast<Kind>(value_.index()); }

  const DihedralElt& dihedral() const;
  const AbelianElt& abelian() const;
  const Permutation& perm() const;
  const GroupElement& left() const;
  const GroupElement& right() const;
  bool is_pair() const;

  bool operator==(const GroupElement& rhs) const { return value_ == rhs.value_; }
  bool operator!=(const GroupElement& rhs) const { return !(*this == rhs); }
  bool operator<(const GroupElement& rhs) const;

  std::string to_string() const;

 private:
  std::variant<DihedralElt, AbelianElt, Permutation, std::vector<GroupElement>> value_;
};

struct LabeledGenerator {
  std::string label;
  GroupElement element;
};

// A group family: arithmetic, identity, generators with fixed labels.
// The set of variants is closed; general finite presentations are out of
// scope (coset enumeration for those is only semi-decidable).
class GroupFamily {
 public:
  enum class Kind { DihedralInfinite, FreeAbelian, FinitePerm, DirectProduct };

  static GroupFamily dihedral_infinite();
  static GroupFamily free_abelian(int rank);
  static GroupFamily finite_perm(PermGroup base);
  static GroupFamily direct_product(GroupFamily left, GroupFamily right);

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  const PermGroup& base() const;
  const GroupFamily& left_factor() const;
  const GroupFamily& right_factor() const;

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const;
  GroupElement inverse(const GroupElement& x) const;

  // Generators with fixed labels, closed under inverses (an involution
  // appears once). The order is fixed and shared by balls, coset tables and
  // reports.
  const std::vector<LabeledGenerator>& generators() const { return generators_; }

  // Looks up a labeled generator; throws on unknown label.
  const GroupElement& generator(const std::string& label) const;

  // Element of a word over generator labels (left to right, leftmost acts
  // last, consistent with the right-to-left composition convention).
  GroupElement word(const std::vector<std::string>& labels) const;

  bool is_finite() const;
  std::string describe() const;

  // Checks element sanity for this family (vector rank, perm membership in
  // the base group, component families for pairs).
  void validate(const GroupElement& x) const;

 private:
  GroupFamily() = default;
  void build_generators();

  Kind kind_ = Kind::DihedralInfinite;
  int rank_ = 0;                                   // FreeAbelian
  std::shared_ptr<const PermGroup> base_;          // FinitePerm
  std::vector<std::shared_ptr<const GroupFamily>> parts_;  // DirectProduct
  std::vector<LabeledGenerator> generators_;
};

// All distinct normal forms of words of length <= radius over the family
// generators, in shortlex discovery order (identity first).
std::vector<GroupElement> ball(const GroupFamily& family, int radius);

// Verifies that a map from generator labels to permutations respects the
// family's structure: defining relations for dihedral, commutation for
// abelian and product parts, and full multiplicativity on finite factors.
// Throws Error naming the violated relation.
void verify_generator_images(
    const GroupFamily& family,
    const std::vector<std::pair<std::string, Permutation>>& images);

}  // namespace gact
