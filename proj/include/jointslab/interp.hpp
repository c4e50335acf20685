#pragma once

// Minimal-degree vanishing polynomials.
//
// vanish_at_points finds a nonzero polynomial vanishing to order >= m(x) at
// each prescribed point; vanish_on_lines finds one containing every line of a
// configuration. Both search degrees upward from 0 and return the first
// degree with a nontrivial solution.
//
// Columns of the constraint matrices are the monomials of degree <= D in
// graded order, so the system for any degree d < D is a column prefix of the
// system for D. Since elimination pivots column by column, one reduction at
// the counting cap D answers the ascending search for every d <= D: the
// minimal degree is the degree of the first free column.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jointslab/geometry.hpp"
#include "jointslab/matrix.hpp"
#include "jointslab/poly.hpp"

namespace jointslab {

struct MultiplicityPoint {
  Point x;
  std::uint32_t m = 1;
};

struct InterpResult {
  MultiPoly poly;
  std::uint32_t degree = 0;
  // Degree bound from the counting argument:
  //   points: (sum (m + n)^n)^(1/n);  lines: n L^(1/(n-1)).
  double bound = 0;
  // Points only, when every m >= n: 2 (sum m^n)^(1/n).
  std::optional<double> bound_large_m;
  std::size_t constraint_rows = 0;  // at the minimal degree
  std::size_t monomial_cols = 0;    // binom(degree + n, n)
};

// Number of Hasse conditions binom(m + n - 1, n) for one point.
std::uint64_t order_condition_count(std::uint32_t m, std::size_t n);

// Rows: one per (point, alpha) with |alpha| < m, entry H^alpha(x^e)(point).
Matrix point_constraint_matrix(std::span<const MultiplicityPoint> spec,
                               std::span<const Exponent> monomials);
// Rows: coefficients of t^0..t^deg of each monomial restricted to each line.
Matrix line_constraint_matrix(const LineSet& ls,
                              std::span<const Exponent> monomials,
                              std::uint32_t deg);

// Throws InputError on an empty spec, repeated points, m == 0, or mixed
// spaces.
InterpResult vanish_at_points(std::span<const MultiplicityPoint> spec);
InterpResult vanish_on_lines(const LineSet& ls);

double points_degree_bound(std::span<const MultiplicityPoint> spec);
std::optional<double> points_degree_bound_large_m(
    std::span<const MultiplicityPoint> spec);
double lines_degree_bound(std::size_t L, std::size_t n);

// True iff vanishing_order(poly, x) >= m(x) at every point.
bool vanishes_to_orders(const MultiPoly& poly,
                        std::span<const MultiplicityPoint> spec);
bool vanishes_on_all_lines(const MultiPoly& poly, const LineSet& ls);

}  // namespace jointslab
