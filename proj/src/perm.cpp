#include "gact/perm.hpp"

#include <algorithm>
#include <sstream>

#include "gact/error.hpp"

namespace gact {

Permutation::Permutation(int degree) {
  if (degree < 0) throw Error("permutation degree must be nonnegative");
  images_.resize(degree);
  for (int i = 0; i < degree; ++i) images_[i] = i;
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = degree();
  std::vector<char> seen(n, 0);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[v]) throw Error("image array is not a bijection");
    seen[v] = 1;
  }
}

Permutation Permutation::from_cycles(int degree,
                                     std::initializer_list<std::vector<int>> cycles) {
  Permutation p(degree);
  for (const auto& cyc : cycles) {
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int from = cyc[i];
      int to = cyc[(i + 1) % cyc.size()];
      if (from < 0 || from >= degree || to < 0 || to >= degree)
        throw Error("cycle entry out of range");
      p.images_[from] = to;
    }
  }
  // Re-validate: overlapping cycles would break bijectivity.
  return Permutation(p.images_);
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  return compose(*this, rhs);
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw Error("composition degree mismatch");
  std::vector<int> out(p.degree());
  for (int x = 0; x < q.degree(); ++x) out[x] = p.apply(q.apply(x));
  Permutation r;
  r = Permutation(std::move(out));
  return r;
}

Permutation Permutation::inverse() const {
  std::vector<int> out(images_.size());
  for (int x = 0; x < degree(); ++x) out[images_[x]] = x;
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const {
  for (int x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

int Permutation::fixed_point_count() const {
  int count = 0;
  for (int x = 0; x < degree(); ++x)
    if (images_[x] == x) ++count;
  return count;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  std::vector<char> done(images_.size(), 0);
  bool any = false;
  for (int start = 0; start < degree(); ++start) {
    if (done[start] || images_[start] == start) continue;
    any = true;
    os << '(';
    int x = start;
    bool first = true;
    while (!done[x]) {
      done[x] = 1;
      if (!first) os << ' ';
      os << x;
      first = false;
      x = images_[x];
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

}  // namespace gact
