#pragma once

// Generators and brute-force oracles shared by the test binaries. Nothing in
// here calls the library routine it is used to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "jointslab/field.hpp"
#include "jointslab/geometry.hpp"
#include "jointslab/poly.hpp"
#include "jointslab/random.hpp"

namespace testing {

using namespace jointslab;

inline FieldElem random_elem(Rng& rng, const Field& f) {
  return {f, static_cast<std::uint32_t>(rng.below(f.order()))};
}

inline FieldElem random_nonzero(Rng& rng, const Field& f) {
  return {f, static_cast<std::uint32_t>(1 + rng.below(f.order() - 1))};
}

inline Point random_point(Rng& rng, const Field& f, std::size_t n) {
  std::vector<FieldElem> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(random_elem(rng, f));
  return Point(std::move(c));
}

inline Point random_dir(Rng& rng, const Field& f, std::size_t n) {
  for (;;) {
    Point d = random_point(rng, f, n);
    if (!d.is_zero()) return d;
  }
}

inline MultiPoly random_poly(Rng& rng, const Field& f, std::size_t n,
                             std::size_t max_terms, std::uint32_t max_deg) {
  MultiPoly g(f, n);
  const auto terms = 1 + rng.below(max_terms);
  for (std::uint64_t k = 0; k < terms; ++k) {
    Exponent e(n, 0);
    auto budget = static_cast<std::uint32_t>(rng.below(max_deg + 1));
    for (std::size_t i = 0; i < n && budget; ++i) {
      const auto take = static_cast<std::uint32_t>(rng.below(budget + 1));
      e[i] = take;
      budget -= take;
    }
    g.add_term(e, random_nonzero(rng, f));
  }
  return g;
}

// Determinant by permutation expansion.
inline FieldElem det(std::vector<std::vector<FieldElem>> m) {
  const std::size_t n = m.size();
  const Field& f = m[0][0].field();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  FieldElem total = f.zero();
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    FieldElem term = f.one();
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

struct OracleJoint {
  Point x;
  std::vector<std::size_t> incident;
  std::uint64_t r = 0;
  std::uint64_t N = 0;
};

// Every point of k^n, every n-subset of lines through it, independence by
// determinant.
inline std::vector<OracleJoint> oracle_joints(const LineSet& ls) {
  const std::size_t n = ls.dim();
  std::vector<OracleJoint> out;
  for (const Point& x : all_points(ls.field(), n)) {
    std::vector<std::size_t> inc;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      // x lies on base + t dir iff x - base is a multiple of dir.
      const Point v = x - ls[i].base();
      const Point& d = ls[i].dir();
      bool on = true;
      for (std::size_t a = 0; a < n && on; ++a)
        for (std::size_t b = a + 1; b < n && on; ++b)
          on = v[a] * d[b] == v[b] * d[a];
      if (on) inc.push_back(i);
    }
    if (inc.size() < n) continue;
    std::uint64_t N = 0;
    std::vector<bool> pick(inc.size(), false);
    std::fill(pick.end() - static_cast<std::ptrdiff_t>(n), pick.end(), true);
    do {
      std::vector<std::vector<FieldElem>> m;
      for (std::size_t k = 0; k < inc.size(); ++k)
        if (pick[k]) m.push_back(ls[inc[k]].dir().coords());
      N += !det(m).is_zero();
    } while (std::next_permutation(pick.begin(), pick.end()));
    if (N > 0) out.push_back({x, inc, inc.size(), N});
  }
  return out;
}

// f(x + x0), expanded through MultiPoly arithmetic.
inline MultiPoly translate(const MultiPoly& f, const Point& x0) {
  const std::size_t n = f.nvars();
  const Field& fld = f.field();
  std::vector<MultiPoly> shifted;
  for (std::size_t i = 0; i < n; ++i)
    shifted.push_back(MultiPoly::variable(fld, n, i) +
                      MultiPoly::constant(fld, n, x0[i]));
  MultiPoly out(fld, n);
  for (const auto& [e, c] : f.terms()) {
    MultiPoly term = MultiPoly::constant(fld, n, c);
    for (std::size_t i = 0; i < n; ++i) term = term * shifted[i].pow(e[i]);
    out += term;
  }
  return out;
}

// Lowest total degree present in f.
inline std::uint32_t lowest_degree(const MultiPoly& f) {
  std::uint32_t low = UINT32_MAX;
  for (const auto& [e, c] : f.terms()) {
    std::uint32_t s = 0;
    for (auto v : e) s += v;
    low = std::min(low, s);
  }
  return low;
}

inline Point pt(const Field& f, std::vector<std::int64_t> xs) {
  return Point::from_ints(f, xs);
}

inline Line line(const Field& f, std::vector<std::int64_t> base,
                 std::vector<std::int64_t> dir) {
  return Line(pt(f, std::move(base)), pt(f, std::move(dir)));
}

// A polynomial from (exponent, integer coefficient) pairs.
inline MultiPoly poly(const Field& f, std::size_t n,
                      std::vector<std::pair<Exponent, std::int64_t>> terms) {
  MultiPoly g(f, n);
  for (auto& [e, c] : terms) g.add_term(e, f.from_int(c));
  return g;
}

}  // namespace testing
