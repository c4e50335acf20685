#pragma once

// Explicit line configurations: the grid lower-bound construction, the
// plane and Heisenberg-surface counterexamples, and seeded random line sets.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jointslab/geometry.hpp"
#include "jointslab/poly.hpp"

namespace jointslab {

// Cap on brute-force line enumeration; read from JOINTSLAB_ENUM_BUDGET.
inline constexpr std::uint64_t kDefaultEnumBudget = 10'000'000;
std::uint64_t enum_budget();

// Axis-parallel lines through the grid {0..m-1}^n: n m^(n-1) lines whose
// joints are exactly the m^n grid points. Requires 1 <= m <= p.
LineSet grid_lines(std::uint32_t m, std::size_t n, const Field& field);

// In GF(p)^3: the p^2 + p lines of the plane z = 0 and the vertical line
// through each of its p^2 points.
LineSet plane_counterexample(std::uint32_t p);

// x - x^p + y^p z - y z^p over GF(p^2).
MultiPoly heisenberg_poly(std::uint32_t p);

// Points of k^n where f vanishes, in lexicographic order.
std::vector<Point> surface_points(const MultiPoly& f);

// Every canonical line contained in V(f), in canonical order. Throws
// InputError when the number of candidate lines exceeds `budget`.
std::vector<Line> lines_in_surface(const MultiPoly& f, std::uint64_t budget);

// Canonical lines of GF(p^2)^3 contained in the Heisenberg surface.
LineSet heisenberg_lines(std::uint32_t p, std::uint64_t budget = enum_budget());

enum class TransversalMode { kPerPoint, kGreedyCover };

struct Transversals {
  // Per-point: one entry per surface point (lines may repeat when two
  // anchors share a transversal). Greedy: one entry per added line.
  std::vector<Point> anchors;
  std::vector<Line> lines;
  std::size_t distinct = 0;
};

// Line through a surface point that leaves the surface: direction e_j for the
// first j with a nonzero first-order derivative, otherwise the first
// canonical direction whose line is not contained in V(f).
Line transversal_at(const Point& x, const MultiPoly& surface);

Transversals attach_transversals(std::span<const Point> points,
                                 const MultiPoly& surface,
                                 TransversalMode mode);

// Surface lines plus transversals making every surface point a joint.
LineSet heisenberg_counterexample(std::uint32_t p, TransversalMode mode,
                                  std::uint64_t budget = enum_budget());

// `count` distinct canonical lines, deterministic in `seed`.
LineSet random_lines(std::size_t count, std::size_t n, const Field& field,
                     std::uint64_t seed);

struct Provenance {
  std::string generator;
  std::map<std::string, std::int64_t> params;
  std::optional<std::uint64_t> seed;
};

struct ConstructionReport {
  std::string label;
  std::vector<std::pair<std::string, std::string>> predicted;  // formula text
  std::size_t L = 0;
  std::size_t joints = 0;
  double S_N = 0;
  double S_r = 0;
};

// Counts recomputed through the joints module.
ConstructionReport make_construction_report(
    std::string label, const LineSet& ls,
    std::vector<std::pair<std::string, std::string>> predicted);

}  // namespace jointslab
