#include "jointslab/interp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "jointslab/error.hpp"
#include "jointslab/joints.hpp"

namespace jointslab {

namespace {

void validate(std::span<const MultiplicityPoint> spec) {
  if (spec.empty()) throw InputError("multiplicity spec has no points");
  const Field& f = spec.front().x.field();
  const std::size_t n = spec.front().x.dim();
  std::set<Point> seen;
  for (const auto& mp : spec) {
    if (mp.m == 0) throw InputError("multiplicities must be >= 1");
    if (mp.x.dim() != n || &mp.x.field() != &f)
      throw InputError("multiplicity spec mixes spaces");
    if (!seen.insert(mp.x).second)
      throw InputError("point " + mp.x.to_string() + " listed twice");
  }
}

// Smallest d with binom(d + n, n) > rows(d).
template <typename RowsAt>
std::uint32_t counting_cap(std::size_t n, RowsAt rows_at) {
  for (std::uint32_t d = 0;; ++d)
    if (binomial(d + n, n) > rows_at(d)) return d;
}

MultiPoly poly_from_kernel(const Field& f, std::size_t n,
                           std::span<const Exponent> monomials, const Vec& v) {
  MultiPoly poly(f, n);
  for (std::size_t c = 0; c < v.size(); ++c)
    if (!v[c].is_zero()) poly.add_term(monomials[c], v[c]);
  return poly;
}

}  // namespace

std::uint64_t order_condition_count(std::uint32_t m, std::size_t n) {
  return binomial(m + n - 1, n);
}

Matrix point_constraint_matrix(std::span<const MultiplicityPoint> spec,
                               std::span<const Exponent> monomials) {
  validate(spec);
  const Field& f = spec.front().x.field();
  const std::size_t n = spec.front().x.dim();
  const std::uint32_t p = f.characteristic();
  std::uint32_t top = 0;
  for (const auto& e : monomials) top = std::max(top, total_degree(e));

  std::size_t rows = 0;
  for (const auto& mp : spec) rows += order_condition_count(mp.m, n);
  Matrix mat(f, rows, monomials.size());

  std::size_t row = 0;
  for (const auto& mp : spec) {
    std::vector<std::vector<std::uint32_t>> pw(n,
                                               std::vector<std::uint32_t>(top + 1));
    for (std::size_t i = 0; i < n; ++i) {
      pw[i][0] = 1;
      for (std::uint32_t k = 1; k <= top; ++k)
        pw[i][k] = f.mul(pw[i][k - 1], mp.x[i].index());
    }
    for (std::uint32_t order = 0; order < mp.m; ++order)
      for (const auto& alpha : monomials_of_degree(n, order)) {
        for (std::size_t c = 0; c < monomials.size(); ++c) {
          const auto& e = monomials[c];
          std::uint32_t v = 1;
          for (std::size_t i = 0; i < n && v; ++i) {
            if (e[i] < alpha[i]) {
              v = 0;
              break;
            }
            v = f.mul(v, f.from_int(binomial_mod(e[i], alpha[i], p)).index());
            v = f.mul(v, pw[i][e[i] - alpha[i]]);
          }
          mat.set_raw(row, c, v);
        }
        ++row;
      }
  }
  return mat;
}

Matrix line_constraint_matrix(const LineSet& ls,
                              std::span<const Exponent> monomials,
                              std::uint32_t deg) {
  const Field& f = ls.field();
  const std::size_t n = ls.dim();
  Matrix mat(f, ls.size() * (deg + 1), monomials.size());
  for (std::size_t li = 0; li < ls.size(); ++li) {
    const Line& l = ls[li];
    std::vector<std::vector<UniPoly>> pw(n);
    for (std::size_t i = 0; i < n; ++i) {
      const UniPoly lin(f, {l.base()[i], l.dir()[i]});
      pw[i].emplace_back(f, std::vector<FieldElem>{f.one()});
      for (std::uint32_t k = 1; k <= deg; ++k) pw[i].push_back(pw[i].back() * lin);
    }
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      const auto& e = monomials[c];
      if (total_degree(e) > deg)
        throw InputError("monomial degree exceeds the restriction degree");
      UniPoly r(f, {f.one()});
      for (std::size_t i = 0; i < n; ++i)
        if (e[i]) r = r * pw[i][e[i]];
      for (std::size_t k = 0; k < r.coeffs().size(); ++k)
        mat.set_raw(li * (deg + 1) + k, c, r.coeffs()[k].index());
    }
  }
  return mat;
}

double points_degree_bound(std::span<const MultiplicityPoint> spec) {
  const double n = static_cast<double>(spec.front().x.dim());
  double s = 0;
  for (const auto& mp : spec) s += std::pow(mp.m + n, n);
  return std::pow(s, 1.0 / n);
}

std::optional<double> points_degree_bound_large_m(
    std::span<const MultiplicityPoint> spec) {
  const std::size_t n = spec.front().x.dim();
  double s = 0;
  for (const auto& mp : spec) {
    if (mp.m < n) return std::nullopt;
    s += std::pow(static_cast<double>(mp.m), static_cast<double>(n));
  }
  return 2.0 * std::pow(s, 1.0 / static_cast<double>(n));
}

double lines_degree_bound(std::size_t L, std::size_t n) {
  return static_cast<double>(n) *
         std::pow(static_cast<double>(L), 1.0 / static_cast<double>(n - 1));
}

InterpResult vanish_at_points(std::span<const MultiplicityPoint> spec) {
  validate(spec);
  const Field& f = spec.front().x.field();
  const std::size_t n = spec.front().x.dim();
  std::uint64_t rows = 0;
  for (const auto& mp : spec) rows += order_condition_count(mp.m, n);

  const std::uint32_t cap = counting_cap(n, [&](std::uint32_t) { return rows; });
  const auto monomials = monomials_up_to(n, cap);
  const Echelon ech = row_reduce(point_constraint_matrix(spec, monomials));
  const auto free = ech.free_cols();
  if (free.empty())
    throw Error("no vanishing polynomial below the counting cap (solver bug)");

  InterpResult out{poly_from_kernel(f, n, monomials,
                                    ech.kernel_vector(free.front())),
                   total_degree(monomials[free.front()]),
                   points_degree_bound(spec),
                   points_degree_bound_large_m(spec),
                   rows,
                   0};
  out.monomial_cols = binomial(out.degree + n, n);
  return out;
}

InterpResult vanish_on_lines(const LineSet& ls) {
  if (ls.empty()) throw InputError("need at least one line");
  const std::size_t n = ls.dim();
  const std::size_t L = ls.size();
  const std::uint32_t cap = counting_cap(
      n, [&](std::uint32_t d) { return std::uint64_t{L} * (d + 1); });
  const auto monomials = monomials_up_to(n, cap);
  const Echelon ech = row_reduce(line_constraint_matrix(ls, monomials, cap));
  const auto free = ech.free_cols();
  if (free.empty())
    throw Error("no vanishing polynomial below the counting cap (solver bug)");

  InterpResult out{poly_from_kernel(ls.field(), n, monomials,
                                    ech.kernel_vector(free.front())),
                   total_degree(monomials[free.front()]),
                   lines_degree_bound(L, n),
                   std::nullopt,
                   0,
                   0};
  out.constraint_rows = L * (out.degree + 1);
  out.monomial_cols = binomial(out.degree + n, n);
  return out;
}

bool vanishes_to_orders(const MultiPoly& poly,
                        std::span<const MultiplicityPoint> spec) {
  if (poly.is_zero()) return false;
  return std::all_of(spec.begin(), spec.end(), [&](const MultiplicityPoint& mp) {
    return vanishing_order(poly, mp.x) >= mp.m;
  });
}

bool vanishes_on_all_lines(const MultiPoly& poly, const LineSet& ls) {
  if (poly.is_zero()) return false;
  return std::all_of(ls.lines().begin(), ls.lines().end(),
                     [&](const Line& l) { return vanishes_on_line(poly, l); });
}

}  // namespace jointslab
