// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--expect-fail N ...]
//
// Exit status is 0 iff the set of failing criteria equals the set named by
// --expect-fail. A criterion listed there still prints FAIL; the flag only
// records that the failure is known, and an unexpected pass is an error too.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "cli_support.hpp"
#include "jointslab/constructions.hpp"
#include "jointslab/interp.hpp"
#include "jointslab/joints.hpp"
#include "jointslab/prune.hpp"
#include "jointslab/report.hpp"
#include "support.hpp"

using namespace jointslab;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool same_joints(const std::vector<JointRecord>& got,
                 const std::vector<testing::OracleJoint>& want) {
  if (got.size() != want.size()) return false;
  for (std::size_t i = 0; i < got.size(); ++i)
    if (got[i].x != want[i].x || got[i].incident != want[i].incident ||
        got[i].r != want[i].r || got[i].N != want[i].N)
      return false;
  return true;
}

// 1. Grid m=4, n=3, p=7.
Outcome grid_exactness() {
  const auto t0 = Clock::now();
  const LineSet ls = grid_lines(4, 3, Field::get(7));
  const JointSummary s = summarize(ls);
  const double secs = seconds_since(t0);
  bool ok = ls.size() == 48 && s.joints.size() == 64;
  for (const auto& j : s.joints) ok = ok && j.r == 3 && j.N == 1;
  ok = ok && s.exact_S_N && s.exact_S_N->is_integer() && s.exact_S_N->to_string() == "64" &&
       s.S_N == 64.0;
  const bool oracle = same_joints(s.joints, testing::oracle_joints(ls));
  return {ok && oracle && secs < 1.0,
          fmt("L=%zu |J|=%zu S_N=%s oracle=%s t=%.3fs (limit 1s)", ls.size(), s.joints.size(),
              s.exact_S_N ? s.exact_S_N->to_string().c_str() : "?", oracle ? "match" : "MISMATCH",
              secs)};
}

// 2. find_joints against the exhaustive oracle.
Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  int mismatches = 0, sets = 0, joints = 0;
  for (std::uint32_t p : {2u, 3u}) {
    const Field& f = Field::get(p);
    Rng rng(20240 + p);
    for (int k = 0; k < 30; ++k) {
      const auto L = static_cast<std::size_t>(rng.between(3, 8));
      const LineSet ls = random_lines(L, 3, f, rng.next());
      const auto got = find_joints(ls);
      joints += static_cast<int>(got.size());
      mismatches += !same_joints(got, testing::oracle_joints(ls));
      ++sets;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && joints > 0 && secs < 30.0,
          fmt("%d sets, %d joints, %d mismatches, t=%.3fs (limit 30s)", sets, joints, mismatches,
              secs)};
}

// 3. Points campaign.
Outcome lemma1_campaign() {
  const auto t0 = Clock::now();
  CampaignParams prm;  // n=3, GF(101), <= 12 points, m in [3,5]
  const Campaign c = verify_lemma_campaign(Lemma::kPoints, 50, 0xA11CE, prm);
  const double secs = seconds_since(t0);
  // Re-check every row: vanishing orders by Hasse derivatives and the exact
  // form of d <= 2 (sum m^3)^(1/3).
  std::size_t good = 0, max_deg = 0;
  for (const auto& r : c.rows) {
    std::vector<std::uint32_t> ms;
    std::size_t start = 0;
    while (start <= r.instance.size()) {
      const auto end = r.instance.find(';', start);
      ms.push_back(static_cast<std::uint32_t>(std::stoul(r.instance.substr(start, end - start))));
      if (end == std::string::npos) break;
      start = end + 1;
    }
    const bool shape = ms.size() <= 12 && std::all_of(ms.begin(), ms.end(), [](auto m) { return m >= 3 && m <= 5; });
    good += r.pass && r.vanishing_ok && r.minimal_ok && shape && within_large_m_bound(r.degree, ms, 3);
    max_deg = std::max<std::size_t>(max_deg, r.degree);
  }
  return {good == 50 && c.rows.size() == 50 && secs < 120.0,
          fmt("%zu/50 trials verified, max degree %zu, t=%.2fs (limit 120s)", good, max_deg, secs)};
}

// 4. Lines campaign.
Outcome lemma2_campaign() {
  const auto t0 = Clock::now();
  const Campaign c = verify_lemma_campaign(Lemma::kLines, 30, 0xB0B, CampaignParams{});
  const double secs = seconds_since(t0);
  std::size_t good = 0;
  for (const auto& r : c.rows) {
    const auto L = std::stoul(r.instance);
    const auto cap = static_cast<std::uint32_t>(std::ceil(3.0 * std::sqrt(static_cast<double>(L)) - 1e-9));
    good += r.pass && r.vanishing_ok && L >= 1 && L <= 8 && r.degree <= cap &&
            r.degree <= lines_bound_ceil(L, 3);
  }
  return {good == 30 && secs < 60.0,
          fmt("%zu/30 trials verified, t=%.2fs (limit 60s)", good, secs)};
}

// 5. Plane counterexample growth.
Outcome plane_growth() {
  const auto t0 = Clock::now();
  const std::vector<std::uint32_t> ps = {3, 5, 7, 11, 13};
  std::vector<double> xs, ys;
  std::string values;
  bool recount_ok = true;
  for (auto p : ps) {
    const BoundReport r = run_bound_report(plane_counterexample(p), "plane");
    // Closed form recomputed from the enumerated structure: p^2 joints with
    // r = p + 2 among L = 2p^2 + p lines.
    const double L = 2.0 * p * p + p;
    const double want = p * p * std::pow(p + 2.0, 1.5) / std::pow(L, 1.5);
    recount_ok = recount_ok && r.L == 2 * p * p + p && r.J == p * p &&
                 std::abs(r.ratio_r - want) <= 1e-9 * want;
    xs.push_back(p);
    ys.push_back(r.ratio_r);
    values += fmt("%s%u:%.4f", values.empty() ? "" : " ", p, r.ratio_r);
  }
  bool increasing = true;
  for (std::size_t i = 1; i < ys.size(); ++i) increasing = increasing && ys[i] > ys[i - 1];
  const double slope = log_log_slope(xs, ys);
  const bool in_band = slope >= 0.35 && slope <= 0.65;
  const double secs = seconds_since(t0);
  return {increasing && in_band && recount_ok && secs < 60.0,
          fmt("ratio_r %s; increasing=%s; slope=%.4f (band [0.35, 0.65]) %s; t=%.2fs",
              values.c_str(), increasing ? "yes" : "no", slope, in_band ? "in band" : "OUT OF BAND",
              secs)};
}

// 6. Heisenberg desk check at p = 2.
Outcome heisenberg_desk() {
  const auto t0 = Clock::now();
  const MultiPoly h = heisenberg_poly(2);
  const LineSet ls = heisenberg_lines(2);
  const auto pts = surface_points(h);
  const auto cover = attach_transversals(pts, h, TransversalMode::kGreedyCover);

  // Oracles: exhaustive (base, dir) scan deduplicated by canonical form,
  // membership by evaluation at all four points; all 64 points evaluated.
  std::set<Line> lines_oracle;
  const auto space = all_points(h.field(), 3);
  for (const auto& b : space)
    for (const auto& d : space) {
      if (d.is_zero()) continue;
      const Line l(b, d);
      bool on = true;
      for (const auto& t : h.field().elements()) on = on && h(l.at(t)).is_zero();
      if (on) lines_oracle.insert(l);
    }
  std::size_t points_oracle = 0;
  for (const auto& x : space) points_oracle += h(x).is_zero();
  std::size_t uncovered = 0;
  for (const auto& x : pts) {
    bool hit = false;
    for (const auto& l : cover.lines) hit = hit || l.contains(x);
    uncovered += !hit;
  }
  const double secs = seconds_since(t0);
  const bool lines_ok = ls.size() == lines_oracle.size() &&
                        std::set<Line>(ls.lines().begin(), ls.lines().end()) == lines_oracle;
  const bool points_ok = pts.size() == points_oracle;
  const bool factor4 = ls.size() * 4 >= 16 && ls.size() <= 16 * 4 && pts.size() * 4 >= 32 &&
                       pts.size() <= 32 * 4;
  return {lines_ok && points_ok && factor4 && uncovered == 0 && secs < 60.0,
          fmt("lines %zu (oracle %zu, p^4=16), points %zu (oracle %zu, p^5=32), greedy lines %zu, "
              "uncovered %zu, t=%.3fs",
              ls.size(), lines_oracle.size(), pts.size(), points_oracle, cover.lines.size(), uncovered,
              secs)};
}

// 7. Full-joint hypothesis checker.
Outcome hypothesis_checker() {
  const JointSummary grid = summarize(grid_lines(4, 3, Field::get(7)));
  const JointSummary plane = summarize(plane_counterexample(3));
  const bool g = check_full_joint_hypothesis(grid);
  const bool p = check_full_joint_hypothesis(plane);
  // Independent witness: a dependent triple of plane lines at a plane joint.
  bool witness = false;
  const LineSet pl = plane_counterexample(3);
  for (const auto& j : plane.joints) {
    std::vector<std::vector<FieldElem>> m;
    for (auto i : j.incident)
      if (pl[i].dir()[2].is_zero() && m.size() < 3) m.push_back(pl[i].dir().coords());
    if (m.size() == 3 && testing::det(m).is_zero()) witness = true;
  }
  return {g && !p && witness, fmt("grid=%s plane=%s dependent-triple witness=%s", g ? "true" : "false",
                                  p ? "true" : "false", witness ? "found" : "missing")};
}

// 8. Partition identity.
Outcome partition_identity() {
  Rng rng(0x5EED);
  int failures = 0, cases = 0;
  while (cases < 100) {
    const Field& f = Field::get(rng.below(2) ? 3 : 5);
    const LineSet ls = rng.below(4) == 0 ? grid_lines(static_cast<std::uint32_t>(rng.between(2, 3)), 3, f)
                                         : random_lines(static_cast<std::size_t>(rng.between(8, 30)), 3, f, rng.next());
    const auto joints = find_joints(ls);
    if (joints.empty()) continue;
    const Incidence inc(joints, ls.size());
    std::vector<std::uint32_t> w;
    for (std::size_t x = 0; x < joints.size(); ++x) w.push_back(static_cast<std::uint32_t>(rng.below(6)));
    const auto d = static_cast<std::uint32_t>(rng.between(1, 3));
    const auto M = static_cast<std::uint32_t>(rng.between(1, 12));
    const IndexSet L = full_index_set(ls.size()), J = full_index_set(joints.size());
    const RefinementResult r = refine(inc, L, J, w, d, M);
    // Both sides from a direct double sum over the joint records.
    auto I = [&](const IndexSet& ls_, const IndexSet& js) {
      std::int64_t s = 0;
      for (auto x : js)
        for (auto l : joints[x].incident)
          if (std::binary_search(ls_.begin(), ls_.end(), l)) s += w[x];
      return s;
    };
    const auto& Li = r.lines_rich;
    const auto& Ji = r.joints_rich;
    const auto& Lp = r.lines_refined;
    const auto& Jp = r.joints_refined;
    const std::int64_t lhs = I(Lp, Jp);
    const std::int64_t rhs = I(L, J) - I(set_difference(L, Li), J) - I(Li, set_difference(J, Ji)) -
                             I(set_difference(Li, Lp), Ji) - I(Lp, set_difference(Ji, Jp));
    failures += lhs != rhs || !partition_identity_check(inc, L, J, r, w);
    ++cases;
  }
  return {failures == 0, fmt("%d cases, %d failures", cases, failures)};
}

// 9. Hasse derivative identities and p-th roots.
Outcome hasse_suite() {
  Rng rng(0x4A55E);
  int failures = 0, checks = 0;
  auto binom_mod = [](std::uint32_t n, std::uint32_t k, std::uint32_t p) {
    std::uint64_t c = 1;
    for (std::uint32_t i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return static_cast<std::int64_t>(c % p);
  };
  for (std::uint32_t p : {2u, 5u}) {
    const Field& f = Field::get(p);
    for (int k = 0; k < 100; ++k) {
      const MultiPoly a = testing::random_poly(rng, f, 3, 4, 4);
      const MultiPoly b = testing::random_poly(rng, f, 3, 4, 4);
      Exponent alpha(3), beta(3);
      for (auto& v : alpha) v = static_cast<std::uint32_t>(rng.below(3));
      for (auto& v : beta) v = static_cast<std::uint32_t>(rng.below(3));
      // Leibniz.
      MultiPoly rhs(f, 3);
      for (std::uint32_t i = 0; i <= alpha[0]; ++i)
        for (std::uint32_t j = 0; j <= alpha[1]; ++j)
          for (std::uint32_t l = 0; l <= alpha[2]; ++l)
            rhs += hasse_derivative(a, {i, j, l}) *
                   hasse_derivative(b, {alpha[0] - i, alpha[1] - j, alpha[2] - l});
      failures += hasse_derivative(a * b, alpha) != rhs;
      // Composition.
      Exponent sum(3);
      std::int64_t c = 1;
      for (int i = 0; i < 3; ++i) {
        sum[i] = alpha[i] + beta[i];
        c = c * binom_mod(sum[i], alpha[i], p) % p;
      }
      failures += hasse_derivative(hasse_derivative(a, beta), alpha) !=
                  f.from_int(c) * hasse_derivative(a, sum);
      checks += 2;
    }
  }
  for (std::uint32_t p : {3u, 5u}) {
    const Field& f = Field::get(p);
    for (int k = 0; k < 50; ++k) {
      const MultiPoly g = testing::random_poly(rng, f, 3, 4, 3);
      failures += pth_root(g.pow(p)) != g;
      ++checks;
    }
  }
  return {failures == 0, fmt("%d identity checks, %d failures", checks, failures)};
}

// 10. CLI determinism.
Outcome cli_determinism() {
  testing::ScratchDir dir("acceptance");
  using testing::run_cli;
  using testing::slurp;
  const Field& f5 = Field::get(5);
  const Field& f101 = Field::get(101);

  // Shared inputs.
  const MultiPoly x = MultiPoly::variable(f5, 3, 0), y = MultiPoly::variable(f5, 3, 1),
                  z = MultiPoly::variable(f5, 3, 2);
  const Field& f7 = Field::get(7);
  const MultiPoly x7 = MultiPoly::variable(f7, 3, 0), y7 = MultiPoly::variable(f7, 3, 1);
  const MultiPoly one7 = MultiPoly::constant(f7, 3, f7.one());
  // Grid coordinates run over 0..3: x(x-1)(x-2)(x-3) vanishes on every joint.
  std::vector<io::FactorEntry> factors;
  for (int c = 0; c < 4; ++c) factors.push_back({x7 - f7.from_int(c) * one7, c == 0 ? 2u : 1u});
  factors.push_back({y7, 1});
  testing::write_json(dir / "factors.json", io::factors_to_json(factors));
  testing::write_json(dir / "spec.json",
                      io::multiplicity_to_json({{testing::pt(f101, {1, 2, 3}), 3},
                                                {testing::pt(f101, {7, 0, 5}), 4},
                                                {testing::pt(f101, {9, 9, 9}), 3}}));
  testing::write_json(dir / "s1.json", io::to_json(x * y));
  testing::write_json(dir / "s2.json", io::to_json(z * (x - y)));
  testing::write_json(dir / "axes.json",
                      io::to_json(LineSet(f5, 3, {testing::line(f5, {0, 0, 0}, {1, 0, 0}),
                                                  testing::line(f5, {0, 0, 0}, {0, 1, 0}),
                                                  testing::line(f5, {0, 0, 0}, {0, 0, 1})})));

  struct Cmd {
    std::string args;  // {R} is replaced by the run index
    std::vector<std::string> files;
  };
  const std::string d = dir.path().string() + "/";
  const std::vector<Cmd> cmds = {
      {"gen grid --m 4 --n 3 --p 7 -o " + d + "grid{R}.json", {"grid{R}.json", "grid{R}.json.provenance.json"}},
      {"gen plane --p 5 -o " + d + "plane{R}.json", {"plane{R}.json", "plane{R}.json.provenance.json"}},
      {"gen heisenberg --p 2 -o " + d + "heis{R}.json", {"heis{R}.json", "heis{R}.json.provenance.json"}},
      {"gen heisenberg --p 2 --mode per-point -o " + d + "heisp{R}.json", {"heisp{R}.json"}},
      {"gen random --count 20 --n 3 --p 3 --seed 42 -o " + d + "rand{R}.json", {"rand{R}.json", "rand{R}.json.provenance.json"}},
      {"joints " + d + "grid0.json " + d + "plane0.json " + d + "heis0.json --report " + d + "report{R}.csv",
       {"report{R}.csv", "stdout{R}"}},
      {"joints " + d + "plane0.json --markdown", {"stdout{R}"}},
      {"interp points " + d + "spec.json -o " + d + "ip{R}.json", {"ip{R}.json"}},
      {"interp lines " + d + "rand0.json", {"stdout{R}"}},
      {"prune " + d + "grid0.json --factors " + d + "factors.json -o " + d + "prune{R}.json", {"prune{R}.json"}},
      {"verify lemma1 --trials 8 --seed 9 -o " + d + "v1{R}.csv", {"v1{R}.csv"}},
      {"verify lemma2 --trials 8 --seed 9 -o " + d + "v2{R}.csv", {"v2{R}.csv"}},
      {"kollar --surfaces " + d + "s1.json " + d + "s2.json --lines " + d + "axes.json --M 2", {"stdout{R}"}},
  };
  auto subst = [](std::string s, int run) {
    for (std::size_t at; (at = s.find("{R}")) != std::string::npos;) s.replace(at, 3, std::to_string(run));
    return s;
  };
  int compared = 0, differ = 0, bad_exit = 0;
  std::string culprits;
  for (std::size_t c = 0; c < cmds.size(); ++c) {
    // Per-command stdout capture so "stdout{R}" is unambiguous.
    const std::string tag = "cmd" + std::to_string(c) + "-";
    bool exit_ok = true;
    for (int run = 0; run < 2; ++run)
      exit_ok = run_cli(subst(cmds[c].args, run), d + tag + subst("stdout{R}", run)) == 0 && exit_ok;
    if (!exit_ok) {
      ++bad_exit;
      culprits += " exit:" + cmds[c].args.substr(0, cmds[c].args.find(' ', cmds[c].args.find(' ') + 1));
    }
    for (const auto& file : cmds[c].files) {
      const std::string a = file.rfind("stdout", 0) == 0 ? d + tag + subst(file, 0) : d + subst(file, 0);
      const std::string b = file.rfind("stdout", 0) == 0 ? d + tag + subst(file, 1) : d + subst(file, 1);
      const std::string sa = slurp(a), sb = slurp(b);
      if (sa != sb || sa.empty()) {
        ++differ;
        culprits += " differ:" + file;
      }
      ++compared;
    }
  }
  return {differ == 0 && bad_exit == 0,
          fmt("%zu commands run twice, %d outputs compared, %d differ, %d failing commands%s",
              cmds.size(), compared, differ, bad_exit, culprits.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc)
      expected.insert(std::atoi(argv[++i]));
    else {
      std::fprintf(stderr, "usage: acceptance [--expect-fail N]...\n");
      return 2;
    }
  }

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"grid exactness", grid_exactness},
      {"joint oracle equivalence", oracle_equivalence},
      {"points campaign", lemma1_campaign},
      {"lines campaign", lemma2_campaign},
      {"plane counterexample growth", plane_growth},
      {"Heisenberg desk check", heisenberg_desk},
      {"full-joint hypothesis checker", hypothesis_checker},
      {"partition identity", partition_identity},
      {"Hasse property suite", hasse_suite},
      {"CLI determinism", cli_determinism},
  };

  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) failed.insert(id);
    std::printf("%s %2d %s: %s%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str(),
                !o.pass && expected.count(id) ? " [known failure]" : "");
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expected) {
    for (int id : expected)
      if (!failed.count(id)) std::printf("criterion %d was expected to fail but passed\n", id);
    return 1;
  }
  return 0;
}
