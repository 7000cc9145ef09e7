#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace gact {

// A permutation of {0, ..., n-1}, stored as its image array.
//
// Composition is right-to-left throughout the library:
//   (p * q)(x) = p(q(x)),
// i.e. q acts first. Reports and serialized subgroups use the same
// convention.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);                 // identity
  explicit Permutation(std::vector<int> images);    // validates bijection

  // Builds the permutation from disjoint-cycle notation, e.g.
  // from_cycles(5, {{0,1,2}}) is the 3-cycle (0 1 2) on 5 points.
  static Permutation from_cycles(int degree,
                                 std::initializer_list<std::vector<int>> cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;  // (*this)(rhs(x))
  Permutation inverse() const;
  bool is_identity() const;

  // The number of fixed points on {0,...,n-1}.
  int fixed_point_count() const;

  bool operator==(const Permutation& rhs) const { return images_ == rhs.images_; }
  bool operator!=(const Permutation& rhs) const { return images_ != rhs.images_; }
  // Lexicographic order on image arrays; the identity is minimal.
  bool operator<(const Permutation& rhs) const { return images_ < rhs.images_; }

  std::string to_string() const;  // cycle notation, "()" for identity

 private:
  std::vector<int> images_;
};

// compose_apply with explicit degree checking; identical to operator*.
Permutation compose(const Permutation& p, const Permutation& q);

}  // namespace gact
