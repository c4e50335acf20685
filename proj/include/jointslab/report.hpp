#pragma once

// Bound reports, the Kollar-type inequality checker, and randomized
// verification campaigns for the two vanishing-polynomial constructions.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jointslab/geometry.hpp"
#include "jointslab/joints.hpp"
#include "jointslab/poly.hpp"

namespace jointslab {

struct BoundReport {
  std::string config;
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::size_t n = 0;
  std::size_t L = 0;
  std::size_t J = 0;
  double S_N = 0;
  double S_r = 0;
  double rhs = 0;  // L^(n/(n-1))
  double ratio_N = 0;
  double ratio_r = 0;
  bool hypothesis = true;
  std::optional<RadicalSum> exact_S_N;
  std::optional<RadicalSum> exact_S_r;
};

BoundReport run_bound_report(const LineSet& ls, std::string config);

// config,p,q,n,L,J,S_N,S_r,rhs,ratio_N,ratio_r,hypothesis
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& r);
std::string bound_report_csv(std::span<const BoundReport> reports);
std::string bound_report_markdown(std::span<const BoundReport> reports);

// Least-squares slope of log(ratio_r) against log(p).
double log_log_slope(std::span<const double> xs, std::span<const double> ys);

struct KollarPoint {
  Point x;
  std::uint64_t r = 0;
};

struct KollarCheck {
  std::vector<std::uint32_t> degrees;  // a_1..a_{n-1}
  std::uint32_t M = 0;
  std::vector<KollarPoint> points;     // points with r(x) > M
  double lhs = 0;                      // sum r(x)^(n/(n-1))
  std::uint64_t rhs = 0;               // (sum a_i) (prod a_i)
  bool holds = true;
  // True when every surface splits into linear forms and no two share one;
  // otherwise coprimality is the caller's assertion.
  bool coprime_verified = false;
};

// Report-only. Throws InputError when a line leaves a surface (naming both
// indices), when there are not n - 1 surfaces, or when two fully linear
// surfaces share a component.
KollarCheck check_kollar(std::span<const MultiPoly> surfaces,
                         const LineSet& ls, std::uint32_t M);

enum class Lemma { kPoints, kLines };

struct CampaignParams {
  std::size_t n = 3;
  std::uint32_t p = 101;
  std::size_t max_points = 12;  // points campaign
  std::uint32_t m_min = 3;
  std::uint32_t m_max = 5;
  std::size_t max_lines = 8;    // lines campaign
  bool check_minimality = true;
  unsigned threads = 0;         // 0: hardware concurrency
};

struct CampaignRow {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::string instance;  // points: multiplicities joined by ';'; lines: L
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::uint32_t degree = 0;
  double bound = 0;
  std::uint32_t bound_ceil = 0;
  bool vanishing_ok = false;
  bool minimal_ok = false;
  bool pass = false;
};

struct Campaign {
  Lemma lemma = Lemma::kPoints;
  CampaignParams params;
  std::vector<CampaignRow> rows;

  bool passed() const;
  std::string csv() const;
};

Campaign verify_lemma_campaign(Lemma which, std::size_t trials,
                               std::uint64_t seed, CampaignParams params = {});

// Exact integer forms of the degree bounds.
// Smallest d with d^(n-1) >= n^(n-1) L, i.e. ceil(n L^(1/(n-1))).
std::uint32_t lines_bound_ceil(std::size_t L, std::size_t n);
// d <= 2 (sum m^n)^(1/n)  <=>  d^n <= 2^n sum m^n.
bool within_large_m_bound(std::uint32_t d, std::span<const std::uint32_t> ms,
                          std::size_t n);

}  // namespace jointslab
