#pragma once

// Joints of a line configuration and their multiplicities.
//
// x is a joint when at least n configuration lines pass through it with
// directions spanning k^n. r(x) counts the lines through x and N(x) counts
// the unordered n-subsets of those lines whose directions are independent.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jointslab/geometry.hpp"

namespace jointslab {

struct JointRecord {
  Point x;
  std::vector<std::size_t> incident;  // ascending line indices
  std::uint64_t r = 0;
  std::uint64_t N = 0;

  friend bool operator==(const JointRecord&, const JointRecord&) = default;
};

// Exact sum c_1 sqrt(s_1) + ... + c_k sqrt(s_k) with distinct squarefree s_j.
// Square roots of distinct squarefree integers are linearly independent over
// the rationals, so two sums are equal iff their term maps are equal.
class RadicalSum {
 public:
  // Adds m * sqrt(v).
  void add_sqrt(std::uint64_t v, std::uint64_t m = 1);

  const std::map<std::uint64_t, std::uint64_t>& terms() const {
    return terms_;
  }
  bool is_integer() const;
  double to_double() const;
  std::string to_string() const;

  friend bool operator==(const RadicalSum&, const RadicalSum&) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> terms_;  // squarefree part -> coeff
};

// Exact ordering when each side has at most one radical class (both sides
// are squared and compared as integers); nullopt otherwise.
std::optional<std::strong_ordering> compare_exact(const RadicalSum& a,
                                                  const RadicalSum& b);

struct JointSummary {
  std::vector<JointRecord> joints;
  std::size_t n = 0;
  std::size_t L = 0;
  double S_N = 0;  // sum N(x)^(1/(n-1))
  double S_r = 0;  // sum r(x)^(n/(n-1))
  bool hypothesis_holds = true;
  // Populated for n == 3, where both sums are sums of square roots.
  std::optional<RadicalSum> exact_S_N;
  std::optional<RadicalSum> exact_S_r;
};

// Joints in ascending point order. Candidates are the pairwise
// intersection points, so every joint (which lies on >= n >= 2 lines) is seen.
std::vector<JointRecord> find_joints(const LineSet& ls);

// N(x): n-subsets of the given lines whose directions have rank n.
std::uint64_t multiplicity(const LineSet& ls,
                           std::span<const std::size_t> incident);

// binom(r, n) with saturation at UINT64_MAX.
std::uint64_t binomial(std::uint64_t r, std::uint64_t k);

bool check_full_joint_hypothesis(std::span<const JointRecord> joints,
                                 std::size_t n);
inline bool check_full_joint_hypothesis(const JointSummary& s) {
  return check_full_joint_hypothesis(s.joints, s.n);
}

JointSummary weighted_sums(std::vector<JointRecord> joints, std::size_t L,
                           std::size_t n);

inline JointSummary summarize(const LineSet& ls) {
  return weighted_sums(find_joints(ls), ls.size(), ls.dim());
}

}  // namespace jointslab
