#include "jointslab/prune.hpp"

#include <algorithm>
#include <numeric>

#include "jointslab/error.hpp"

namespace jointslab {

IndexSet full_index_set(std::size_t size) {
  IndexSet s(size);
  std::iota(s.begin(), s.end(), std::size_t{0});
  return s;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

std::uint32_t FactorData::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& f : factors) d += f.degree;
  return d;
}

FactorData make_factor_data(std::span<const MultiPoly> factors,
                            std::span<const JointRecord> joints) {
  FactorData out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const MultiPoly& f = factors[i];
    if (f.is_constant())
      throw InputError("factor " + std::to_string(i) + " is constant");
    Factor fac{f, static_cast<std::uint32_t>(f.degree()), {}};
    fac.orders.reserve(joints.size());
    for (const auto& j : joints) {
      if (j.x.dim() != f.nvars())
        throw InputError("factor " + std::to_string(i) +
                         " has the wrong number of variables");
      fac.orders.push_back(vanishing_order(f, j.x));
    }
    out.factors.push_back(std::move(fac));
  }
  return out;
}

std::uint32_t weight_target(std::uint64_t r, std::size_t n) {
  if (n < 2) throw InputError("weight targets need n >= 2");
  auto reaches = [&](std::uint64_t t) {
    unsigned __int128 v = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      v *= t;
      if (v >= r) return true;
    }
    return v >= r;
  };
  std::uint64_t t = 0;
  while (!reaches(t)) ++t;
  return static_cast<std::uint32_t>(t);
}

WeightTable allocate_weights(const FactorData& factors,
                             std::span<const JointRecord> joints,
                             std::size_t n) {
  const std::size_t k = factors.factors.size();
  WeightTable table;
  table.targets.reserve(joints.size());
  table.weights.assign(k, std::vector<std::uint32_t>(joints.size(), 0));

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return factors.factors[a].degree > factors.factors[b].degree;
  });

  for (std::size_t x = 0; x < joints.size(); ++x) {
    const std::uint32_t target = weight_target(joints[x].r, n);
    table.targets.push_back(target);
    std::uint64_t capacity = 0;
    for (const auto& f : factors.factors) capacity += f.orders.at(x);
    if (target > 0 && capacity == 0)
      throw InputError("no factor vanishes at joint " + joints[x].x.to_string() +
                  "; the factorization does not match the product");
    std::uint32_t left = target;
    for (std::size_t i : order) {
      const std::uint32_t take = std::min(left, factors.factors[i].orders[x]);
      table.weights[i][x] = take;
      left -= take;
    }
  }
  return table;
}

// ---------------------------------------------------------------------------

Incidence::Incidence(std::span<const JointRecord> joints,
                     std::size_t line_count)
    : joints_on_(line_count), lines_through_(joints.size()) {
  for (std::size_t x = 0; x < joints.size(); ++x) {
    for (std::size_t l : joints[x].incident) {
      if (l >= line_count) throw InputError("joint references a missing line");
      joints_on_[l].push_back(x);
    }
    lines_through_[x] = joints[x].incident;
  }
}

std::uint64_t incidence_count(const Incidence& inc, const IndexSet& lines,
                              const IndexSet& joints,
                              std::span<const std::uint32_t> weights) {
  std::vector<char> in_joints(inc.joint_count(), 0);
  for (std::size_t x : joints) in_joints.at(x) = 1;
  std::uint64_t total = 0;
  for (std::size_t l : lines)
    for (std::size_t x : inc.joints_on(l))
      if (in_joints[x]) total += weights[x];
  return total;
}

namespace {

// Joints of `candidates` lying on at least M/3 lines of `lines`.
IndexSet joints_on_many(const Incidence& inc, const IndexSet& candidates,
                        const IndexSet& lines, std::uint32_t M) {
  std::vector<char> in_lines(inc.line_count(), 0);
  for (std::size_t l : lines) in_lines[l] = 1;
  IndexSet out;
  for (std::size_t x : candidates) {
    std::uint64_t count = 0;
    for (std::size_t l : inc.lines_through(x)) count += in_lines[l];
    if (3 * count >= M) out.push_back(x);
  }
  return out;
}

}  // namespace

RefinementResult refine(const Incidence& inc, const IndexSet& lines,
                        const IndexSet& joints,
                        std::span<const std::uint32_t> weights,
                        std::uint32_t degree, std::uint32_t M) {
  if (degree == 0) throw InputError("refine needs a factor degree >= 1");
  if (M == 0) throw InputError("refine needs M >= 1");
  if (weights.size() != inc.joint_count())
    throw InputError("weight vector does not match the joint count");
  RefinementResult r;
  const std::uint64_t d = degree;

  for (std::size_t l : lines)
    if (incidence_count(inc, {l}, joints, weights) >= 3 * d)
      r.lines_rich.push_back(l);
  r.joints_rich = joints_on_many(inc, joints, r.lines_rich, M);
  for (std::size_t l : r.lines_rich)
    if (incidence_count(inc, {l}, r.joints_rich, weights) > 2 * d)
      r.lines_refined.push_back(l);
  r.joints_refined = joints_on_many(inc, r.joints_rich, r.lines_refined, M);

  r.total = incidence_count(inc, lines, joints, weights);
  r.poor_lines =
      incidence_count(inc, set_difference(lines, r.lines_rich), joints, weights);
  r.poor_joints = incidence_count(inc, r.lines_rich,
                                  set_difference(joints, r.joints_rich), weights);
  r.unrefined_lines =
      incidence_count(inc, set_difference(r.lines_rich, r.lines_refined),
                      r.joints_rich, weights);
  r.unrefined_joints = incidence_count(
      inc, r.lines_refined, set_difference(r.joints_rich, r.joints_refined),
      weights);
  r.kept = incidence_count(inc, r.lines_refined, r.joints_refined, weights);
  return r;
}

bool partition_identity_check(const Incidence& inc, const IndexSet& lines,
                              const IndexSet& joints,
                              const RefinementResult& ref,
                              std::span<const std::uint32_t> weights) {
  auto I = [&](const IndexSet& a, const IndexSet& b) {
    return static_cast<std::int64_t>(incidence_count(inc, a, b, weights));
  };
  const std::int64_t lhs = I(ref.lines_refined, ref.joints_refined);
  const std::int64_t rhs =
      I(lines, joints) - I(set_difference(lines, ref.lines_rich), joints) -
      I(ref.lines_rich, set_difference(joints, ref.joints_rich)) -
      I(set_difference(ref.lines_rich, ref.lines_refined), ref.joints_rich) -
      I(ref.lines_refined, set_difference(ref.joints_rich, ref.joints_refined));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

PruneStep prune_step(const LineSet& ls, std::span<const JointRecord> joints,
                     const FactorData& factors, std::uint32_t M) {
  if (factors.factors.empty()) throw InputError("no factors supplied");
  PruneStep step;
  step.M = M;
  step.weights = allocate_weights(factors, joints, ls.dim());

  const Incidence inc(joints, ls.size());
  const IndexSet all_lines = full_index_set(ls.size());
  const IndexSet all_joints = full_index_set(joints.size());
  for (const auto& w : step.weights.weights)
    step.factor_incidence.push_back(
        incidence_count(inc, all_lines, all_joints, w));

  // argmax I_i / d_i by cross-multiplication; lowest index wins ties.
  for (std::size_t i = 1; i < factors.factors.size(); ++i) {
    const auto& best = step.selected;
    if (step.factor_incidence[i] * factors.factors[best].degree >
        step.factor_incidence[best] * factors.factors[i].degree)
      step.selected = i;
  }
  const Factor& chosen = factors.factors[step.selected];
  step.selected_degree = chosen.degree;
  const auto& w = step.weights.weights[step.selected];

  step.refinement = refine(inc, all_lines, all_joints, w, chosen.degree, M);
  step.identity_holds =
      partition_identity_check(inc, all_lines, all_joints, step.refinement, w);

  const auto grad = gradient(chosen.poly);
  step.gradient_vanishes =
      std::all_of(grad.begin(), grad.end(),
                  [](const MultiPoly& g) { return g.is_zero(); });
  if (step.gradient_vanishes) {
    step.pth_root = pth_root(chosen.poly);
  } else {
    for (std::size_t i = 0; i < grad.size(); ++i)
      if (!grad[i].is_zero() && !divides(chosen.poly, grad[i])) {
        step.gradient_component = i;
        break;
      }
  }
  for (std::size_t x : step.refinement.joints_rich)
    if (std::all_of(grad.begin(), grad.end(), [&](const MultiPoly& g) {
          return g.evaluate(joints[x].x).is_zero();
        }))
      ++step.singular_rich_joints;
  return step;
}

}  // namespace jointslab
