#include "jointslab/geometry.hpp"

#include <algorithm>
#include <unordered_map>

#include "jointslab/error.hpp"
#include "jointslab/matrix.hpp"

namespace jointslab {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void require_same_space(const Point& a, const Point& b) {
  if (a.dim() != b.dim()) throw InputError("point dimension mismatch");
  if (&a.field() != &b.field()) throw InputError("points over different fields");
}

}  // namespace

Point::Point(std::vector<FieldElem> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw InputError("points need at least one coordinate");
  const Field& f = coords_.front().field();
  for (const auto& c : coords_)
    if (&c.field() != &f) throw InputError("point coordinates mix fields");
}

Point Point::from_ints(const Field& field, std::span<const std::int64_t> xs) {
  std::vector<FieldElem> c;
  c.reserve(xs.size());
  for (auto x : xs) c.push_back(field.from_int(x));
  return Point(std::move(c));
}

Point Point::origin(const Field& field, std::size_t n) {
  return Point(std::vector<FieldElem>(n, field.zero()));
}

bool Point::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const FieldElem& c) { return c.is_zero(); });
}

Point operator+(const Point& a, const Point& b) {
  require_same_space(a, b);
  std::vector<FieldElem> c(a.coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords_[i];
  return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
  require_same_space(a, b);
  std::vector<FieldElem> c(a.coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords_[i];
  return Point(std::move(c));
}

Point operator*(const FieldElem& s, const Point& a) {
  std::vector<FieldElem> c(a.coords_);
  for (auto& x : c) x *= s;
  return Point(std::move(c));
}

std::string Point::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += coords_[i].to_string();
  }
  return s + ")";
}

std::size_t PointHash::operator()(const Point& x) const noexcept {
  std::size_t h = x.dim();
  for (const auto& c : x.coords()) h = mix(h, c.index());
  return h;
}

// ---------------------------------------------------------------------------

Line::Line(const Point& base, const Point& dir) {
  require_same_space(base, dir);
  const auto& d = dir.coords();
  auto it = std::find_if(d.begin(), d.end(),
                         [](const FieldElem& c) { return !c.is_zero(); });
  if (it == d.end()) throw InputError("line direction must be nonzero");
  pivot_ = static_cast<std::size_t>(it - d.begin());
  dir_ = it->inverse() * dir;
  base_ = base - (base[pivot_] * dir_);
}

Point Line::at(const FieldElem& t) const { return base_ + t * dir_; }

bool Line::contains(const Point& x) const {
  require_same_space(base_, x);
  // The only candidate parameter is the pivot coordinate of x.
  return at(x[pivot_]) == x;
}

std::string Line::to_string() const {
  return "{base " + base_.to_string() + ", dir " + dir_.to_string() + "}";
}

std::size_t LineHash::operator()(const Line& l) const noexcept {
  PointHash h;
  return mix(h(l.base()), h(l.dir()));
}

std::optional<Point> intersect(const Line& a, const Line& b) {
  if (a.dim() != b.dim()) throw InputError("line dimension mismatch");
  if (a == b) throw InputError("cannot intersect a line with itself");
  const Field& f = a.field();
  const std::size_t n = a.dim();
  // s * dir_a - t * dir_b = base_b - base_a
  Matrix sys(f, n, 2);
  Vec rhs(n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    sys.set(i, 0, a.dir()[i]);
    sys.set(i, 1, -b.dir()[i]);
    rhs[i] = b.base()[i] - a.base()[i];
  }
  if (rank(sys) < 2) return std::nullopt;  // parallel and distinct
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  return a.at((*sol)[0]);
}

std::size_t directions_rank(std::span<const Line* const> lines) {
  if (lines.empty()) return 0;
  const Field& f = lines.front()->field();
  Matrix m(f, lines.size(), lines.front()->dim());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    if (lines[r]->dim() != m.cols()) throw InputError("line dimension mismatch");
    for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, lines[r]->dir()[c]);
  }
  return rank(m);
}

std::size_t directions_rank(std::span<const Line> lines) {
  std::vector<const Line*> ptrs;
  ptrs.reserve(lines.size());
  for (const auto& l : lines) ptrs.push_back(&l);
  return directions_rank(std::span<const Line* const>(ptrs));
}

std::vector<Point> points_on(const Line& l) {
  std::vector<Point> out;
  out.reserve(l.field().order());
  for (const auto& t : l.field().elements()) out.push_back(l.at(t));
  return out;
}

std::vector<Point> all_points(const Field& field, std::size_t n) {
  std::vector<Point> out;
  std::vector<std::uint32_t> idx(n, 0);
  const std::uint32_t order = field.order();
  while (true) {
    std::vector<FieldElem> c;
    c.reserve(n);
    for (auto i : idx) c.emplace_back(field, i);
    out.emplace_back(std::move(c));
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == order) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

std::vector<Line> all_lines(const Field& field, std::size_t n) {
  std::vector<Line> out;
  out.reserve(line_count(field, n));
  const auto points = all_points(field, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& d : points) {
      bool canonical = d[k].is_one();
      for (std::size_t j = 0; j < k && canonical; ++j)
        canonical = d[j].is_zero();
      if (!canonical) continue;
      for (const auto& b : points)
        if (b[k].is_zero()) out.emplace_back(b, d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t line_count(const Field& field, std::size_t n) {
  const std::uint64_t f = field.order();
  std::uint64_t fn = 1;
  for (std::size_t i = 0; i + 1 < n; ++i) fn *= f;
  return fn * ((fn * f - 1) / (f - 1));
}

// ---------------------------------------------------------------------------

LineSet::LineSet(const Field& field, std::size_t n, std::vector<Line> lines)
    : field_(&field), n_(n) {
  if (n < 2) throw InputError("line sets need dimension >= 2");
  std::unordered_map<Line, std::size_t, LineHash> seen;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].dim() != n)
      throw InputError("line " + std::to_string(i) + " has dimension " +
                       std::to_string(lines[i].dim()) + ", expected " +
                       std::to_string(n));
    if (&lines[i].field() != &field)
      throw InputError("line " + std::to_string(i) + " is over " +
                       lines[i].field().to_string() + ", expected " +
                       field.to_string());
    auto [it, fresh] = seen.emplace(lines[i], i);
    if (!fresh)
      throw InputError("duplicate lines at indices " +
                       std::to_string(it->second) + " and " +
                       std::to_string(i));
  }
  lines_ = std::move(lines);
}

std::size_t LineSet::merge(std::span<const Line> extra) {
  std::unordered_map<Line, std::size_t, LineHash> seen;
  for (std::size_t i = 0; i < lines_.size(); ++i) seen.emplace(lines_[i], i);
  std::size_t added = 0;
  for (const auto& l : extra) {
    if (l.dim() != n_ || &l.field() != field_)
      throw InputError("merged line does not match the set's space");
    if (seen.emplace(l, lines_.size()).second) {
      lines_.push_back(l);
      ++added;
    }
  }
  return added;
}

}  // namespace jointslab
