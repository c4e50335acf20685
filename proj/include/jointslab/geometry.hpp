#pragma once

// Points and affine lines in k^n over a finite field.
//
// A Line is always stored in canonical form: the direction's first nonzero
// coordinate (the pivot) is 1 and the base point has a zero at the pivot.
// Two lines are equal as point sets iff their canonical forms are equal.

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "jointslab/field.hpp"

namespace jointslab {

class Point {
 public:
  Point() = default;
  explicit Point(std::vector<FieldElem> coords);
  // Integer coordinates embedded through the prime subfield.
  static Point from_ints(const Field& field, std::span<const std::int64_t> xs);
  static Point origin(const Field& field, std::size_t n);

  std::size_t dim() const { return coords_.size(); }
  const Field& field() const { return coords_.front().field(); }
  const std::vector<FieldElem>& coords() const { return coords_; }
  const FieldElem& operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const;

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(const FieldElem& s, const Point& a);

  friend bool operator==(const Point&, const Point&) = default;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
    return std::lexicographical_compare_three_way(
        a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
        b.coords_.end());
  }

  std::string to_string() const;

 private:
  std::vector<FieldElem> coords_;
};

struct PointHash {
  std::size_t operator()(const Point& x) const noexcept;
};

class Line {
 public:
  // Canonicalizes. Throws InputError on a zero direction or dimension mismatch.
  Line(const Point& base, const Point& dir);

  const Point& base() const { return base_; }
  const Point& dir() const { return dir_; }
  std::size_t dim() const { return base_.dim(); }
  const Field& field() const { return base_.field(); }
  std::size_t pivot() const { return pivot_; }

  // base + t * dir
  Point at(const FieldElem& t) const;
  bool contains(const Point& x) const;

  friend bool operator==(const Line& a, const Line& b) {
    return a.dir_ == b.dir_ && a.base_ == b.base_;
  }
  // Canonical enumeration order: (pivot index, direction, base).
  friend std::strong_ordering operator<=>(const Line& a, const Line& b) {
    if (auto c = a.pivot_ <=> b.pivot_; c != 0) return c;
    if (auto c = a.dir_ <=> b.dir_; c != 0) return c;
    return a.base_ <=> b.base_;
  }

  std::string to_string() const;

 private:
  Point base_;
  Point dir_;
  std::size_t pivot_ = 0;
};

struct LineHash {
  std::size_t operator()(const Line& l) const noexcept;
};

inline Line canonicalize(const Point& base, const Point& dir) {
  return Line(base, dir);
}

inline bool contains(const Line& l, const Point& x) { return l.contains(x); }

// Unique common point of two distinct lines, if any. Throws InputError when
// the lines are identical.
std::optional<Point> intersect(const Line& a, const Line& b);

// Rank of the matrix whose rows are the direction vectors.
std::size_t directions_rank(std::span<const Line> lines);
std::size_t directions_rank(std::span<const Line* const> lines);

// All |field| points of the line, ordered by parameter index.
std::vector<Point> points_on(const Line& l);

// Every point of k^n in lexicographic index order.
std::vector<Point> all_points(const Field& field, std::size_t n);

// Every canonical line of k^n in canonical order.
std::vector<Line> all_lines(const Field& field, std::size_t n);

// |lines of k^n| = F^(n-1) (F^n - 1) / (F - 1) with F = |field|.
std::uint64_t line_count(const Field& field, std::size_t n);

// A finite set of distinct lines sharing a field and a dimension.
class LineSet {
 public:
  // Throws InputError naming the first duplicate pair of indices.
  LineSet(const Field& field, std::size_t n, std::vector<Line> lines);

  const Field& field() const { return *field_; }
  std::size_t dim() const { return n_; }
  std::size_t size() const { return lines_.size(); }
  bool empty() const { return lines_.empty(); }
  const std::vector<Line>& lines() const { return lines_; }
  const Line& operator[](std::size_t i) const { return lines_[i]; }

  // Appends lines not already present; returns how many were new.
  std::size_t merge(std::span<const Line> extra);

 private:
  const Field* field_;
  std::size_t n_;
  std::vector<Line> lines_;
};

}  // namespace jointslab
