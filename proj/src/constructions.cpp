#include "jointslab/constructions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "jointslab/error.hpp"
#include "jointslab/joints.hpp"
#include "jointslab/random.hpp"

namespace jointslab {

std::uint64_t enum_budget() {
  if (const char* env = std::getenv("JOINTSLAB_ENUM_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    throw InputError("JOINTSLAB_ENUM_BUDGET must be a positive integer");
  }
  return kDefaultEnumBudget;
}

namespace {

Point unit_vector(const Field& f, std::size_t n, std::size_t j) {
  std::vector<FieldElem> c(n, f.zero());
  c[j] = f.one();
  return Point(std::move(c));
}

}  // namespace

LineSet grid_lines(std::uint32_t m, std::size_t n, const Field& field) {
  if (m < 1) throw InputError("grid side must be >= 1");
  if (m > field.characteristic())
    throw InputError("grid side " + std::to_string(m) +
                     " exceeds the characteristic " +
                     std::to_string(field.characteristic()));
  if (n < 2) throw InputError("grid dimension must be >= 2");
  std::vector<Line> lines;
  for (std::size_t axis = 0; axis < n; ++axis) {
    const Point dir = unit_vector(field, n, axis);
    std::vector<std::int64_t> others(n - 1, 0);
    while (true) {
      std::vector<std::int64_t> base(n, 0);
      for (std::size_t i = 0, k = 0; i < n; ++i)
        if (i != axis) base[i] = others[k++];
      lines.emplace_back(Point::from_ints(field, base), dir);
      std::size_t k = others.size();
      while (k > 0 && ++others[k - 1] == m) others[--k] = 0;
      if (k == 0) break;
    }
  }
  return LineSet(field, n, std::move(lines));
}

LineSet plane_counterexample(std::uint32_t p) {
  const Field& f = Field::get(p, 1);
  std::vector<Line> lines;
  for (const Line& l : all_lines(f, 2)) {
    const Point base({l.base()[0], l.base()[1], f.zero()});
    const Point dir({l.dir()[0], l.dir()[1], f.zero()});
    lines.emplace_back(base, dir);
  }
  const Point vertical = unit_vector(f, 3, 2);
  for (const auto& x : f.elements())
    for (const auto& y : f.elements())
      lines.emplace_back(Point({x, y, f.zero()}), vertical);
  return LineSet(f, 3, std::move(lines));
}

MultiPoly heisenberg_poly(std::uint32_t p) {
  const Field& f = Field::get(p, 2);
  const FieldElem one = f.one();
  MultiPoly h(f, 3);
  h.add_term({1, 0, 0}, one);
  h.add_term({p, 0, 0}, -one);
  h.add_term({0, p, 1}, one);
  h.add_term({0, 1, p}, -one);
  return h;
}

std::vector<Point> surface_points(const MultiPoly& f) {
  std::vector<Point> out;
  for (auto& x : all_points(f.field(), f.nvars()))
    if (f.evaluate(x).is_zero()) out.push_back(std::move(x));
  return out;
}

std::vector<Line> lines_in_surface(const MultiPoly& f, std::uint64_t budget) {
  const std::uint64_t candidates = line_count(f.field(), f.nvars());
  if (candidates > budget)
    throw InputError(
        "line enumeration needs F^(n-1) (F^n - 1) / (F - 1) = " +
        std::to_string(candidates) + " candidate lines (F = " +
        std::to_string(f.field().order()) + ", n = " +
        std::to_string(f.nvars()) + "), above the budget of " +
        std::to_string(budget) + "; raise JOINTSLAB_ENUM_BUDGET");
  std::vector<Line> out;
  for (auto& l : all_lines(f.field(), f.nvars()))
    if (vanishes_on_line(f, l)) out.push_back(std::move(l));
  return out;
}

LineSet heisenberg_lines(std::uint32_t p, std::uint64_t budget) {
  const MultiPoly h = heisenberg_poly(p);
  return LineSet(h.field(), 3, lines_in_surface(h, budget));
}

Line transversal_at(const Point& x, const MultiPoly& surface) {
  const Field& f = surface.field();
  const std::size_t n = surface.nvars();
  for (std::size_t j = 0; j < n; ++j) {
    Exponent unit(n, 0);
    unit[j] = 1;
    if (!hasse_derivative_at(surface, unit, x).is_zero())
      return Line(x, unit_vector(f, n, j));
  }
  // Singular point: fall back to an exhaustive direction search.
  for (const Line& l : all_lines(f, n)) {
    if (!l.base().is_zero()) continue;
    Line candidate(x, l.dir());
    if (!vanishes_on_line(surface, candidate)) return candidate;
  }
  throw Error("every line through " + x.to_string() + " lies in the surface");
}

Transversals attach_transversals(std::span<const Point> points,
                                 const MultiPoly& surface,
                                 TransversalMode mode) {
  Transversals out;
  if (mode == TransversalMode::kPerPoint) {
    std::unordered_set<Line, LineHash> distinct;
    for (const auto& x : points) {
      out.anchors.push_back(x);
      out.lines.push_back(transversal_at(x, surface));
      distinct.insert(out.lines.back());
    }
    out.distinct = distinct.size();
    return out;
  }

  std::unordered_map<Point, std::size_t, PointHash> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i], i);
  std::vector<char> covered(points.size(), 0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (covered[i]) continue;
    Line l = transversal_at(points[i], surface);
    for (const auto& y : points_on(l))
      if (auto it = index.find(y); it != index.end()) covered[it->second] = 1;
    out.anchors.push_back(points[i]);
    out.lines.push_back(std::move(l));
  }
  out.distinct = out.lines.size();
  return out;
}

LineSet heisenberg_counterexample(std::uint32_t p, TransversalMode mode,
                                  std::uint64_t budget) {
  LineSet ls = heisenberg_lines(p, budget);
  const MultiPoly h = heisenberg_poly(p);
  const auto pts = surface_points(h);
  const Transversals t = attach_transversals(pts, h, mode);
  ls.merge(t.lines);
  return ls;
}

LineSet random_lines(std::size_t count, std::size_t n, const Field& field,
                     std::uint64_t seed) {
  if (count < 1) throw InputError("random line count must be >= 1");
  const std::uint64_t total = line_count(field, n);
  if (count > total)
    throw InputError("requested " + std::to_string(count) +
                     " lines but the space has only " + std::to_string(total));
  Rng rng(seed);
  std::vector<Line> lines;
  if (2 * count > total) {
    // Dense request: partial Fisher-Yates over the full enumeration.
    std::vector<Line> all = all_lines(field, n);
    for (std::size_t i = 0; i < count; ++i)
      std::swap(all[i], all[i + rng.below(all.size() - i)]);
    all.erase(all.begin() + static_cast<std::ptrdiff_t>(count), all.end());
    return LineSet(field, n, std::move(all));
  }
  std::unordered_set<Line, LineHash> seen;
  auto random_point = [&]() {
    std::vector<FieldElem> c;
    c.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      c.emplace_back(field, static_cast<std::uint32_t>(rng.below(field.order())));
    return Point(std::move(c));
  };
  while (lines.size() < count) {
    const Point base = random_point();
    const Point dir = random_point();
    if (dir.is_zero()) continue;
    Line l(base, dir);
    if (seen.insert(l).second) lines.push_back(std::move(l));
  }
  return LineSet(field, n, std::move(lines));
}

ConstructionReport make_construction_report(
    std::string label, const LineSet& ls,
    std::vector<std::pair<std::string, std::string>> predicted) {
  const JointSummary s = summarize(ls);
  ConstructionReport r;
  r.label = std::move(label);
  r.predicted = std::move(predicted);
  r.L = ls.size();
  r.joints = s.joints.size();
  r.S_N = s.S_N;
  r.S_r = s.S_r;
  return r;
}

}  // namespace jointslab
