#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gact/rational.hpp"

namespace gact {

// The binary full shift over Z, probed through its periodic points and
// finite windows. A period-n point is stored as its length-n word
// (bit i = coordinate i of the configuration, extended n-periodically to
// all of Z).
struct PeriodicPoint {
  int period_length;       // n: the word length (sigma^n fixes the point)
  std::uint32_t word;      // bits 0..n-1
  int minimal_period;      // the exact stabilizer is (minimal_period) Z

  int coordinate(long long position) const;  // value at any index in Z
};

struct ShiftPeriodicReport {
  int n = 0;
  std::vector<PeriodicPoint> fixed;           // all fixed points of sigma^n
  std::vector<PeriodicPoint> exact;           // those with stabilizer exactly nZ
};

// Fix(sigma^n) and the subset with exact stabilizer nZ. |fixed| = 2^n;
// exact counts follow divisor exclusion over proper divisors.
ShiftPeriodicReport shift_periodic_points(int n);

// A shift cylinder: the set of configurations matching `word` on the
// centered window [-radius, radius]; word.size() == 2*radius + 1,
// word[i] = coordinate (i - radius).
struct ShiftCylinder {
  int radius = 0;
  std::vector<int> word;

  int coordinate(int position) const;  // position in [-radius, radius]
};

// Cylinder of a periodic point at the given window radius.
ShiftCylinder cylinder_of(const PeriodicPoint& p, int radius);

// Verdict of the holonomy probe for sigma^k on a cylinder. At finite
// horizon the full shift can only ever certify a moved refinement (the
// map has points arbitrarily close that break periodicity), so the answer
// is Witness or Inconclusive; Fixed happens only for k = 0.
struct ShiftHolonomyVerdict {
  enum class Kind { Fixed, Witness, Inconclusive } kind = Kind::Inconclusive;
  int horizon = 0;
  // For Witness: a refinement of the probed cylinder that sigma^k maps to a
  // cylinder with conflicting constraints (so the two are disjoint).
  ShiftCylinder moved_refinement;
  int conflict_position = 0;  // a position where the constraints disagree
};

// Checks whether sigma^k fixes a neighborhood: scans refinements of the
// cylinder out to window `horizon` for one that sigma^k moves off itself.
// Requires that sigma^k fixes the cylinder's defining word pattern (i.e. k
// is a period of the visible word), otherwise the cylinder itself is
// already moved and is returned as its own witness.
ShiftHolonomyVerdict shift_holonomy_check(int k, const ShiftCylinder& cylinder,
                                          int horizon);

// Replay helper: true iff sigma^k maps the cylinder to a cylinder with a
// directly conflicting constraint (hence disjoint from it).
bool shift_moves_cylinder(int k, const ShiftCylinder& cylinder, int* conflict_position);

struct ShiftCoverReport {
  int n = 0;
  int window = 0;
  bool exact_stabilizer_only = true;  // X_H (exact period n) vs all of Fix(sigma^n)
  std::size_t cover_count = 0;        // distinct window-w cylinders covering the set
  BigInt total_cylinders = 0;         // 2^(2w+1)
  Rational cover_measure;             // cover_count / total_cylinders
};

// Minimal window-w cylinder cover of the exact-period-n points (or of all
// of Fix(sigma^n)). The count stays constant in w while the total cylinder
// count grows, which is the finite form of "X_H is finite, hence not dense".
ShiftCoverReport shift_cover_report(int n, int window,
                                    bool exact_stabilizer_only = true);

}  // namespace gact
