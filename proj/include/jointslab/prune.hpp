#pragma once

// Weighted-incidence pruning.
//
// Given joints J of a line set L and a factorization q = prod q_i, each joint
// receives integer weights n_i(x) <= m_i(x) (the vanishing order of q_i at x)
// summing to the target ceil(r(x)^(1/(n-1))). The weighted incidence count
//   I_i(L', J') = sum_{l in L'} sum_{x in l, x in J'} n_i(x)
// drives four threshold refinements L_i, J_i, L_i', J_i', which partition the
// incidences of L x J into five exact pieces.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jointslab/geometry.hpp"
#include "jointslab/joints.hpp"
#include "jointslab/poly.hpp"

namespace jointslab {

// Ascending, duplicate-free indices into a line list or a joint list.
using IndexSet = std::vector<std::size_t>;

IndexSet full_index_set(std::size_t size);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);

struct Factor {
  MultiPoly poly;
  std::uint32_t degree = 0;
  std::vector<std::uint32_t> orders;  // m_i(x), one per joint
};

struct FactorData {
  std::vector<Factor> factors;

  std::uint32_t total_degree() const;
};

// Computes degrees and vanishing orders. Throws InputError on a constant
// factor or a dimension mismatch.
FactorData make_factor_data(std::span<const MultiPoly> factors,
                            std::span<const JointRecord> joints);

struct WeightTable {
  std::vector<std::uint32_t> targets;               // t(x)
  std::vector<std::vector<std::uint32_t>> weights;  // weights[i][x] = n_i(x)

  std::size_t factor_count() const { return weights.size(); }
  std::size_t joint_count() const { return targets.size(); }
};

// Smallest integer t with t^(n-1) >= r, i.e. ceil(r^(1/(n-1))).
std::uint32_t weight_target(std::uint64_t r, std::size_t n);

// Greedy fill of each t(x) over factors in descending degree (ties by index),
// capped by m_i(x). Throws Error when a joint with t(x) > 0 has
// sum_i m_i(x) == 0.
WeightTable allocate_weights(const FactorData& factors,
                             std::span<const JointRecord> joints,
                             std::size_t n);

// Line/joint incidence derived from joint records.
class Incidence {
 public:
  Incidence(std::span<const JointRecord> joints, std::size_t line_count);

  std::size_t line_count() const { return joints_on_.size(); }
  std::size_t joint_count() const { return lines_through_.size(); }
  const std::vector<std::size_t>& joints_on(std::size_t line) const {
    return joints_on_[line];
  }
  const std::vector<std::size_t>& lines_through(std::size_t joint) const {
    return lines_through_[joint];
  }

 private:
  std::vector<std::vector<std::size_t>> joints_on_;
  std::vector<std::vector<std::size_t>> lines_through_;
};

std::uint64_t incidence_count(const Incidence& inc, const IndexSet& lines,
                              const IndexSet& joints,
                              std::span<const std::uint32_t> weights);

struct RefinementResult {
  IndexSet lines_rich;          // L_i:  I(l, J) >= 3 d
  IndexSet joints_rich;         // J_i:  >= M/3 lines of L_i
  IndexSet lines_refined;       // L_i': I(l, J_i) > 2 d, l in L_i
  IndexSet joints_refined;      // J_i': >= M/3 lines of L_i', x in J_i

  std::uint64_t total = 0;                 // I(L, J)
  std::uint64_t poor_lines = 0;            // I(L \ L_i, J)
  std::uint64_t poor_joints = 0;           // I(L_i, J \ J_i)
  std::uint64_t unrefined_lines = 0;       // I(L_i \ L_i', J_i)
  std::uint64_t unrefined_joints = 0;      // I(L_i', J_i \ J_i')
  std::uint64_t kept = 0;                  // I(L_i', J_i')
};

RefinementResult refine(const Incidence& inc, const IndexSet& lines,
                        const IndexSet& joints,
                        std::span<const std::uint32_t> weights,
                        std::uint32_t degree, std::uint32_t M);

// Recomputes every term from the sets and checks
//   I(L_i', J_i') = I(L, J) - I(L \ L_i, J) - I(L_i, J \ J_i)
//                 - I(L_i \ L_i', J_i) - I(L_i', J_i \ J_i').
bool partition_identity_check(const Incidence& inc, const IndexSet& lines,
                              const IndexSet& joints,
                              const RefinementResult& ref,
                              std::span<const std::uint32_t> weights);

inline std::uint32_t default_M(std::size_t n) {
  return static_cast<std::uint32_t>(3 * n);
}

// One round of allocate -> select factor -> refine -> gradient.
struct PruneStep {
  WeightTable weights;
  std::vector<std::uint64_t> factor_incidence;  // I_i(L, J) per factor
  std::size_t selected = 0;                     // maximizes I_i(L, J) / d_i
  std::uint32_t selected_degree = 0;
  std::uint32_t M = 0;
  RefinementResult refinement;
  bool identity_holds = false;

  // The selected factor's gradient is identically zero, so the factor is a
  // p-th power; its root is recorded.
  bool gradient_vanishes = false;
  std::optional<MultiPoly> pth_root;
  // Otherwise: first gradient component the factor does not divide.
  std::optional<std::size_t> gradient_component;
  // Joints of J_i where every gradient component of the factor vanishes.
  std::size_t singular_rich_joints = 0;
};

PruneStep prune_step(const LineSet& ls, std::span<const JointRecord> joints,
                     const FactorData& factors, std::uint32_t M);

}  // namespace jointslab
