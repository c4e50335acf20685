#include "jointslab/joints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jointslab/error.hpp"

namespace jointslab {

void RadicalSum::add_sqrt(std::uint64_t v, std::uint64_t m) {
  if (v == 0 || m == 0) return;
  std::uint64_t outside = 1, inside = 1;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    while (v % (d * d) == 0) {
      v /= d * d;
      outside *= d;
    }
    if (v % d == 0) {
      v /= d;
      inside *= d;
    }
  }
  inside *= v;
  terms_[inside] += m * outside;
}

bool RadicalSum::is_integer() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

double RadicalSum::to_double() const {
  double s = 0;
  for (const auto& [rad, c] : terms_)
    s += static_cast<double>(c) * std::sqrt(static_cast<double>(rad));
  return s;
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [rad, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += std::to_string(c);
    if (rad != 1) s += "*sqrt(" + std::to_string(rad) + ")";
  }
  return s;
}

std::optional<std::strong_ordering> compare_exact(const RadicalSum& a,
                                                  const RadicalSum& b) {
  if (a.terms().size() > 1 || b.terms().size() > 1) return std::nullopt;
  auto squared = [](const RadicalSum& s) -> unsigned __int128 {
    if (s.terms().empty()) return 0;
    const auto [rad, c] = *s.terms().begin();
    return static_cast<unsigned __int128>(c) * c * rad;
  };
  return squared(a) <=> squared(b);
}

// ---------------------------------------------------------------------------

std::uint64_t binomial(std::uint64_t r, std::uint64_t k) {
  if (k > r) return 0;
  k = std::min(k, r - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (r - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t multiplicity(const LineSet& ls,
                           std::span<const std::size_t> incident) {
  const std::size_t n = ls.dim();
  const std::size_t r = incident.size();
  if (r < n) return 0;
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  std::vector<const Line*> chosen(n);
  std::uint64_t count = 0;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) chosen[i] = &ls[incident[pick[i]]];
    if (directions_rank(std::span<const Line* const>(chosen)) == n) ++count;
    // next n-combination of {0..r-1} in lexicographic order
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == r - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  return count;
}

std::vector<JointRecord> find_joints(const LineSet& ls) {
  const std::size_t n = ls.dim();
  std::map<Point, std::vector<std::size_t>> candidates;
  for (std::size_t a = 0; a < ls.size(); ++a)
    for (std::size_t b = a + 1; b < ls.size(); ++b)
      if (auto x = intersect(ls[a], ls[b])) {
        auto& inc = candidates[*x];
        inc.push_back(a);
        inc.push_back(b);
      }

  std::vector<JointRecord> out;
  for (auto& [x, inc] : candidates) {
    std::sort(inc.begin(), inc.end());
    inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
    if (inc.size() < n) continue;
    std::vector<const Line*> lines;
    lines.reserve(inc.size());
    for (auto i : inc) lines.push_back(&ls[i]);
    if (directions_rank(std::span<const Line* const>(lines)) < n) continue;
    JointRecord rec{x, inc, inc.size(), 0};
    rec.N = multiplicity(ls, rec.incident);
    out.push_back(std::move(rec));
  }
  return out;
}

bool check_full_joint_hypothesis(std::span<const JointRecord> joints,
                                 std::size_t n) {
  return std::all_of(joints.begin(), joints.end(), [n](const JointRecord& j) {
    return j.N == binomial(j.r, n);
  });
}

JointSummary weighted_sums(std::vector<JointRecord> joints, std::size_t L,
                           std::size_t n) {
  if (n < 2) throw InputError("weighted sums need n >= 2");
  JointSummary s;
  s.n = n;
  s.L = L;
  const double en = 1.0 / static_cast<double>(n - 1);
  const double er = static_cast<double>(n) / static_cast<double>(n - 1);
  for (const auto& j : joints) {
    s.S_N += std::pow(static_cast<double>(j.N), en);
    s.S_r += std::pow(static_cast<double>(j.r), er);
  }
  s.hypothesis_holds = check_full_joint_hypothesis(joints, n);
  if (n == 3) {
    RadicalSum sn, sr;
    for (const auto& j : joints) {
      sn.add_sqrt(j.N);
      sr.add_sqrt(j.r * j.r * j.r);
    }
    s.exact_S_N = std::move(sn);
    s.exact_S_r = std::move(sr);
  }
  s.joints = std::move(joints);
  return s;
}

}  // namespace jointslab
