#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>

#include "jointslab/constructions.hpp"
#include "jointslab/error.hpp"
#include "jointslab/joints.hpp"
#include "support.hpp"

using namespace jointslab;

namespace {

// Surface membership by evaluating at every point of the line; enough when
// the line has more points than the polynomial's degree.
bool on_surface_by_points(const MultiPoly& h, const Line& l) {
  for (const auto& t : h.field().elements())
    if (!h(l.at(t)).is_zero()) return false;
  return true;
}

// Exhaustive (base, dir) scan with dedup through canonical forms.
std::set<Line> oracle_surface_lines(const MultiPoly& h) {
  const Field& f = h.field();
  std::set<Line> out;
  const auto pts = all_points(f, 3);
  for (const auto& b : pts)
    for (const auto& d : pts) {
      if (d.is_zero()) continue;
      Line l(b, d);
      if (on_surface_by_points(h, l)) out.insert(l);
    }
  return out;
}

}  // namespace

TEST_CASE("grid exact counts") {
  for (std::uint32_t p : {5u, 7u}) {
    const Field& f = Field::get(p);
    for (std::uint32_t m = 1; m <= 4; ++m) {
      const LineSet g = grid_lines(m, 3, f);
      CHECK(g.size() == 3 * m * m);
      const auto joints = find_joints(g);
      CHECK(joints.size() == m * m * m);
      for (const auto& j : joints) {
        CHECK(j.r == 3);
        CHECK(j.N == 1);
        for (std::size_t i = 0; i < 3; ++i) CHECK(j.x[i].index() < m);
      }
    }
  }
  CHECK_THROWS_AS(grid_lines(6, 3, Field::get(5)), InputError);
  CHECK_THROWS_AS(grid_lines(0, 3, Field::get(5)), InputError);
  CHECK(grid_lines(2, 4, Field::get(3)).size() == 4 * 8);
}

TEST_CASE("grid examples") {
  const Field& f = Field::get(7);
  const LineSet g2 = grid_lines(2, 3, f);
  CHECK(g2.size() == 12);
  CHECK(find_joints(g2).size() == 8);
  const LineSet g4 = grid_lines(4, 3, f);
  CHECK(g4.size() == 48);
  CHECK(find_joints(g4).size() == 64);  // (48 / 3)^(3/2)
  const auto one = find_joints(grid_lines(1, 3, f));
  CHECK(one.size() == 1);
}

TEST_CASE("plane counterexample") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const LineSet ls = plane_counterexample(p);
    CHECK(ls.size() == 2 * p * p + p);
    const auto joints = find_joints(ls);
    CHECK(joints.size() == p * p);
    for (const auto& j : joints) {
      CHECK(j.x[2].is_zero());
      CHECK(j.r == p + 2);
      CHECK(j.N == binomial(p + 1, 2));
    }
    CHECK_FALSE(check_full_joint_hypothesis(joints, 3));
  }
  const auto s3 = summarize(plane_counterexample(3));
  const auto s5 = summarize(plane_counterexample(5));
  CHECK(s5.S_r / std::pow(static_cast<double>(s5.L), 1.5) >
        s3.S_r / std::pow(static_cast<double>(s3.L), 1.5));
}

TEST_CASE("Heisenberg p = 2 against brute force") {
  const MultiPoly h = heisenberg_poly(2);
  const LineSet ls = heisenberg_lines(2);
  const auto oracle = oracle_surface_lines(h);
  CHECK(std::set<Line>(ls.lines().begin(), ls.lines().end()) == oracle);
  CHECK(std::is_sorted(ls.lines().begin(), ls.lines().end()));

  std::size_t count = 0;
  for (const auto& x : all_points(h.field(), 3)) count += h(x).is_zero();
  CHECK(surface_points(h).size() == count);
  MESSAGE("Heisenberg p=2: ", oracle.size(), " lines, ", count, " points");

  // The predicate separates the output from a line off the surface.
  Rng rng(107);
  for (int k = 0; k < 50; ++k) {
    const Line l(testing::random_point(rng, h.field(), 3), testing::random_dir(rng, h.field(), 3));
    CHECK(vanishes_on_line(h, l) == static_cast<bool>(oracle.count(l)));
  }
}

TEST_CASE("transversals") {
  const MultiPoly h = heisenberg_poly(2);
  const auto pts = surface_points(h);
  const auto per = attach_transversals(pts, h, TransversalMode::kPerPoint);
  CHECK(per.lines.size() == pts.size());
  CHECK(per.anchors.size() == pts.size());
  for (std::size_t i = 0; i < per.lines.size(); ++i) {
    CHECK(per.lines[i].contains(per.anchors[i]));
    CHECK_FALSE(vanishes_on_line(h, per.lines[i]));
  }

  const auto greedy = attach_transversals(pts, h, TransversalMode::kGreedyCover);
  CHECK(greedy.lines.size() <= pts.size());
  for (const auto& x : pts) {
    bool covered = false;
    for (const auto& l : greedy.lines) covered = covered || l.contains(x);
    CHECK(covered);
  }
  for (const auto& l : greedy.lines) CHECK_FALSE(vanishes_on_line(h, l));
}

TEST_CASE("Heisenberg counterexample makes every surface point a joint") {
  const MultiPoly h = heisenberg_poly(2);
  const auto pts = surface_points(h);
  for (auto mode : {TransversalMode::kPerPoint, TransversalMode::kGreedyCover}) {
    const LineSet ls = heisenberg_counterexample(2, mode);
    std::set<Point> joints;
    for (const auto& j : find_joints(ls)) joints.insert(j.x);
    for (const auto& x : pts) CHECK(joints.count(x));
  }
}

TEST_CASE("enumeration budget") {
  CHECK_THROWS_AS(heisenberg_lines(3, 1000), InputError);
  try {
    heisenberg_lines(3, 1000);
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("JOINTSLAB_ENUM_BUDGET") != std::string::npos);
  }
}

TEST_CASE("random_lines") {
  const Field& f = Field::get(5);
  const LineSet a = random_lines(20, 3, f, 99), b = random_lines(20, 3, f, 99);
  CHECK(a.lines() == b.lines());
  CHECK(random_lines(20, 3, f, 100).lines() != a.lines());

  const Field& f2 = Field::get(2);
  const LineSet full = random_lines(28, 3, f2, 1);
  const auto all = all_lines(f2, 3);
  CHECK(std::set<Line>(full.lines().begin(), full.lines().end()) == std::set<Line>(all.begin(), all.end()));
  CHECK_THROWS_AS(random_lines(29, 3, f2, 1), InputError);
  CHECK_THROWS_AS(random_lines(0, 3, f2, 1), InputError);
}

TEST_CASE("construction report recounts") {
  const auto r = make_construction_report("plane p=3", plane_counterexample(3), {{"L", "2p^2 + p"}});
  CHECK(r.L == 21);
  CHECK(r.joints == 9);
  CHECK(r.S_r == doctest::Approx(9 * std::pow(5.0, 1.5)).epsilon(1e-12));
}
