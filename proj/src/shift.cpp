#include "gact/shift.hpp"

#include <algorithm>
#include <set>

#include "gact/error.hpp"

namespace gact {

int PeriodicPoint::coordinate(long long position) const {
  long long r = position % period_length;
  if (r < 0) r += period_length;
  return (word >> r) & 1u;
}

namespace {

int minimal_period_of(std::uint32_t word, int n) {
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (int i = 0; i < n && periodic; ++i)
      periodic = (((word >> i) & 1u) == ((word >> ((i + d) % n)) & 1u));
    if (periodic) return d;
  }
  return n;
}

}  // namespace

ShiftPeriodicReport shift_periodic_points(int n) {
  if (n < 1 || n > 24) throw Error("period must lie in [1, 24]");
  ShiftPeriodicReport out;
  out.n = n;
  for (std::uint32_t w = 0; w < (1u << n); ++w) {
    PeriodicPoint p{n, w, minimal_period_of(w, n)};
    out.fixed.push_back(p);
    if (p.minimal_period == n) out.exact.push_back(p);
  }
  return out;
}

int ShiftCylinder::coordinate(int position) const {
  if (position < -radius || position > radius)
    throw Error("position outside the cylinder window");
  return word[position + radius];
}

ShiftCylinder cylinder_of(const PeriodicPoint& p, int radius) {
  ShiftCylinder c;
  c.radius = radius;
  for (int i = -radius; i <= radius; ++i) c.word.push_back(p.coordinate(i));
  return c;
}

bool shift_moves_cylinder(int k, const ShiftCylinder& cylinder, int* conflict_position) {
  // sigma^k C constrains position p to word(p + k) for p + k inside the
  // window; C constrains p to word(p). A disagreement on the overlap makes
  // the two cylinders disjoint.
  const int w = cylinder.radius;
  for (int p = -w; p <= w; ++p) {
    if (p + k < -w || p + k > w) continue;
    if (cylinder.coordinate(p) != cylinder.coordinate(p + k)) {
      if (conflict_position) *conflict_position = p;
      return true;
    }
  }
  return false;
}

ShiftHolonomyVerdict shift_holonomy_check(int k, const ShiftCylinder& cylinder,
                                          int horizon) {
  ShiftHolonomyVerdict v;
  v.horizon = horizon;
  if (k == 0) {
    v.kind = ShiftHolonomyVerdict::Kind::Fixed;
    return v;
  }
  int conflict = 0;
  if (shift_moves_cylinder(k, cylinder, &conflict)) {
    v.kind = ShiftHolonomyVerdict::Kind::Witness;
    v.moved_refinement = cylinder;
    v.conflict_position = conflict;
    return v;
  }
  int ka = k > 0 ? k : -k;
  if (horizon <= cylinder.radius || ka > 2 * cylinder.radius + 1) {
    v.kind = ShiftHolonomyVerdict::Kind::Inconclusive;
    return v;
  }
  // The visible word is k-periodic on its window. Extend it to the horizon
  // with one symbol breaking the periodicity; the extension is a refinement
  // of the cylinder that sigma^k maps to a conflicting cylinder.
  ShiftCylinder refined;
  refined.radius = horizon;
  refined.word.assign(2 * horizon + 1, 0);
  for (int p = -horizon; p <= horizon; ++p) {
    int value;
    if (p >= -cylinder.radius && p <= cylinder.radius) {
      value = cylinder.coordinate(p);
    } else {
      // Continue k-periodically from the window...
      int q = p;
      while (q > cylinder.radius) q -= ka;
      while (q < -cylinder.radius) q += ka;
      value = cylinder.coordinate(q);
    }
    refined.word[p + horizon] = value;
  }
  // ...then break the pattern at the outermost position.
  refined.word[2 * horizon] ^= 1;
  if (!shift_moves_cylinder(k, refined, &conflict)) {
    // |k| wider than the refinement overlap; cannot exhibit a conflict.
    v.kind = ShiftHolonomyVerdict::Kind::Inconclusive;
    return v;
  }
  v.kind = ShiftHolonomyVerdict::Kind::Witness;
  v.moved_refinement = refined;
  v.conflict_position = conflict;
  return v;
}

ShiftCoverReport shift_cover_report(int n, int window, bool exact_stabilizer_only) {
  if (window < 0) throw Error("window must be nonnegative");
  ShiftCoverReport out;
  out.n = n;
  out.window = window;
  out.exact_stabilizer_only = exact_stabilizer_only;
  ShiftPeriodicReport points = shift_periodic_points(n);
  std::set<std::vector<int>> windows;
  for (const auto& p : exact_stabilizer_only ? points.exact : points.fixed) {
    std::vector<int> w;
    for (int i = -window; i <= window; ++i) w.push_back(p.coordinate(i));
    windows.insert(std::move(w));
  }
  out.cover_count = windows.size();
  out.total_cylinders = BigInt(1) << (2 * window + 1);
  out.cover_measure = Rational(BigInt(out.cover_count), out.total_cylinders);
  return out;
}

}  // namespace gact
