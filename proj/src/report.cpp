#include "jointslab/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "jointslab/constructions.hpp"
#include "jointslab/error.hpp"
#include "jointslab/interp.hpp"
#include "jointslab/io.hpp"
#include "jointslab/matrix.hpp"
#include "jointslab/random.hpp"

namespace jointslab {

using io::format_real;

BoundReport run_bound_report(const LineSet& ls, std::string config) {
  const JointSummary s = summarize(ls);
  BoundReport r;
  r.config = std::move(config);
  r.p = ls.field().characteristic();
  r.q = ls.field().degree();
  r.n = ls.dim();
  r.L = ls.size();
  r.J = s.joints.size();
  r.S_N = s.S_N;
  r.S_r = s.S_r;
  const double n = static_cast<double>(r.n);
  r.rhs = std::pow(static_cast<double>(r.L), n / (n - 1));
  r.ratio_N = r.rhs > 0 ? r.S_N / r.rhs : 0;
  r.ratio_r = r.rhs > 0 ? r.S_r / r.rhs : 0;
  r.hypothesis = s.hypothesis_holds;
  r.exact_S_N = s.exact_S_N;
  r.exact_S_r = s.exact_S_r;
  return r;
}

std::string bound_report_csv_header() {
  return "config,p,q,n,L,J,S_N,S_r,rhs,ratio_N,ratio_r,hypothesis";
}

std::string bound_report_csv_row(const BoundReport& r) {
  std::ostringstream os;
  os << r.config << ',' << r.p << ',' << r.q << ',' << r.n << ',' << r.L << ','
     << r.J << ',' << format_real(r.S_N) << ',' << format_real(r.S_r) << ','
     << format_real(r.rhs) << ',' << format_real(r.ratio_N) << ','
     << format_real(r.ratio_r) << ',' << (r.hypothesis ? "true" : "false");
  return os.str();
}

std::string bound_report_csv(std::span<const BoundReport> reports) {
  std::string out = bound_report_csv_header() + "\n";
  for (const auto& r : reports) out += bound_report_csv_row(r) + "\n";
  return out;
}

std::string bound_report_markdown(std::span<const BoundReport> reports) {
  std::ostringstream os;
  os << "| config | p | q | n | L | J | S_N | S_r | L^(n/(n-1)) | S_N ratio "
        "| S_r ratio | full-joint |\n";
  os << "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---|\n";
  for (const auto& r : reports)
    os << "| " << r.config << " | " << r.p << " | " << r.q << " | " << r.n
       << " | " << r.L << " | " << r.J << " | " << format_real(r.S_N) << " | "
       << format_real(r.S_r) << " | " << format_real(r.rhs) << " | "
       << format_real(r.ratio_N) << " | " << format_real(r.ratio_r) << " | "
       << (r.hypothesis ? "yes" : "no") << " |\n";
  return os.str();
}

double log_log_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw InputError("slope needs at least two paired samples");
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// ---------------------------------------------------------------------------

namespace {

// Linear forms of a fully split polynomial, or nullopt if it does not split.
std::optional<std::set<std::string>> linear_components(const MultiPoly& f) {
  try {
    const auto fac = factor_linear(f);
    if (!fac.remainder.is_constant()) return std::nullopt;
    std::set<std::string> forms;
    for (const auto& lf : fac.factors) forms.insert(lf.form.to_string());
    return forms;
  } catch (const InputError&) {
    return std::nullopt;
  }
}

}  // namespace

KollarCheck check_kollar(std::span<const MultiPoly> surfaces,
                         const LineSet& ls, std::uint32_t M) {
  const std::size_t n = ls.dim();
  if (surfaces.size() + 1 != n)
    throw InputError("expected " + std::to_string(n - 1) + " surfaces, got " +
                     std::to_string(surfaces.size()));
  KollarCheck out;
  out.M = M;
  for (std::size_t s = 0; s < surfaces.size(); ++s) {
    const MultiPoly& f = surfaces[s];
    if (f.nvars() != n || &f.field() != &ls.field())
      throw InputError("surface " + std::to_string(s) +
                       " does not live in the line set's space");
    if (f.is_constant())
      throw InputError("surface " + std::to_string(s) + " is constant");
    out.degrees.push_back(static_cast<std::uint32_t>(f.degree()));
    for (std::size_t l = 0; l < ls.size(); ++l)
      if (!vanishes_on_line(f, ls[l]))
        throw InputError("line " + std::to_string(l) +
                         " is not contained in surface " + std::to_string(s));
  }

  std::vector<std::optional<std::set<std::string>>> comps;
  for (const auto& f : surfaces) comps.push_back(linear_components(f));
  out.coprime_verified =
      std::all_of(comps.begin(), comps.end(), [](const auto& c) { return c; });
  if (out.coprime_verified)
    for (std::size_t a = 0; a < comps.size(); ++a)
      for (std::size_t b = a + 1; b < comps.size(); ++b)
        for (const auto& form : *comps[a])
          if (comps[b]->count(form))
            throw InputError("surfaces " + std::to_string(a) + " and " +
                             std::to_string(b) + " share the component " +
                             form);

  std::map<Point, std::set<std::size_t>> through;
  for (std::size_t a = 0; a < ls.size(); ++a) {
    if (M == 0)
      for (const auto& x : points_on(ls[a])) through[x].insert(a);
    for (std::size_t b = a + 1; b < ls.size(); ++b)
      if (auto x = intersect(ls[a], ls[b])) {
        through[*x].insert(a);
        through[*x].insert(b);
      }
  }

  const double e = static_cast<double>(n) / static_cast<double>(n - 1);
  for (const auto& [x, lines] : through) {
    if (lines.size() <= M) continue;
    for (std::size_t s = 0; s < surfaces.size(); ++s)
      if (!surfaces[s].evaluate(x).is_zero())
        throw Error("counted point " + x.to_string() + " is off surface " +
                    std::to_string(s));
    out.points.push_back({x, lines.size()});
    out.lhs += std::pow(static_cast<double>(lines.size()), e);
  }

  std::uint64_t sum = 0, prod = 1;
  for (auto a : out.degrees) {
    sum += a;
    prod *= a;
  }
  out.rhs = sum * prod;
  if (n == 3) {
    RadicalSum lhs, rhs;
    for (const auto& kp : out.points) lhs.add_sqrt(kp.r * kp.r * kp.r);
    rhs.add_sqrt(out.rhs * out.rhs);
    if (auto c = compare_exact(lhs, rhs)) {
      out.holds = *c <= 0;
      return out;
    }
  }
  out.holds = out.lhs <= static_cast<double>(out.rhs) * (1 + 1e-12);
  return out;
}

// ---------------------------------------------------------------------------

std::uint32_t lines_bound_ceil(std::size_t L, std::size_t n) {
  unsigned __int128 target = L;
  for (std::size_t i = 0; i + 1 < n; ++i) target *= n;
  for (std::uint32_t d = 0;; ++d) {
    unsigned __int128 v = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) v *= d;
    if (v >= target) return d;
  }
}

namespace {

unsigned __int128 ipow(std::uint64_t b, std::size_t e) {
  unsigned __int128 v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= b;
  return v;
}

// Largest integer degree admitted by the point bound for these multiplicities.
std::uint32_t points_max_degree(std::span<const std::uint32_t> ms,
                                std::size_t n) {
  const bool large = std::all_of(ms.begin(), ms.end(),
                                 [n](std::uint32_t m) { return m >= n; });
  unsigned __int128 budget = 0;
  for (auto m : ms) budget += large ? ipow(2, n) * ipow(m, n) : ipow(m + n, n);
  std::uint32_t d = 0;
  while (ipow(d + 1, n) <= budget) ++d;
  return d;
}

bool is_minimal_points(const std::vector<MultiplicityPoint>& spec,
                       std::uint32_t degree, std::size_t n) {
  if (degree == 0) return true;
  const auto monos = monomials_up_to(n, degree - 1);
  return rank(point_constraint_matrix(spec, monos)) == monos.size();
}

bool is_minimal_lines(const LineSet& ls, std::uint32_t degree) {
  if (degree == 0) return true;
  const auto monos = monomials_up_to(ls.dim(), degree - 1);
  return rank(line_constraint_matrix(ls, monos, degree - 1)) == monos.size();
}

CampaignRow run_points_trial(const CampaignParams& prm, std::size_t trial,
                             std::uint64_t seed) {
  CampaignRow row;
  row.trial = trial;
  row.seed = seed;
  Rng rng(seed);
  const Field& f = Field::get(prm.p, 1);
  const auto k = static_cast<std::size_t>(
      rng.between(1, static_cast<std::int64_t>(prm.max_points)));
  std::vector<MultiplicityPoint> spec;
  std::set<Point> seen;
  std::vector<std::uint32_t> ms;
  while (spec.size() < k) {
    std::vector<FieldElem> c;
    for (std::size_t i = 0; i < prm.n; ++i)
      c.emplace_back(f, static_cast<std::uint32_t>(rng.below(f.order())));
    Point x(std::move(c));
    if (!seen.insert(x).second) continue;
    const auto m =
        static_cast<std::uint32_t>(rng.between(prm.m_min, prm.m_max));
    ms.push_back(m);
    spec.push_back({std::move(x), m});
  }
  for (std::size_t i = 0; i < ms.size(); ++i)
    row.instance += (i ? ";" : "") + std::to_string(ms[i]);

  const InterpResult res = vanish_at_points(spec);
  row.rows = res.constraint_rows;
  row.cols = res.monomial_cols;
  row.degree = res.degree;
  row.bound = res.bound_large_m.value_or(res.bound);
  row.bound_ceil = points_max_degree(ms, prm.n);
  row.vanishing_ok = vanishes_to_orders(res.poly, spec);
  row.minimal_ok =
      !prm.check_minimality || is_minimal_points(spec, res.degree, prm.n);
  row.pass = row.vanishing_ok && row.minimal_ok && row.degree <= row.bound_ceil;
  return row;
}

CampaignRow run_lines_trial(const CampaignParams& prm, std::size_t trial,
                            std::uint64_t seed) {
  CampaignRow row;
  row.trial = trial;
  row.seed = seed;
  Rng rng(seed);
  const Field& f = Field::get(prm.p, 1);
  const auto L = static_cast<std::size_t>(
      rng.between(1, static_cast<std::int64_t>(prm.max_lines)));
  const LineSet ls = random_lines(L, prm.n, f, rng.next());
  row.instance = std::to_string(L);

  const InterpResult res = vanish_on_lines(ls);
  row.rows = res.constraint_rows;
  row.cols = res.monomial_cols;
  row.degree = res.degree;
  row.bound = res.bound;
  row.bound_ceil = lines_bound_ceil(L, prm.n);
  row.vanishing_ok = vanishes_on_all_lines(res.poly, ls);
  row.minimal_ok = !prm.check_minimality || is_minimal_lines(ls, res.degree);
  row.pass = row.vanishing_ok && row.minimal_ok && row.degree <= row.bound_ceil;
  return row;
}

}  // namespace

bool within_large_m_bound(std::uint32_t d, std::span<const std::uint32_t> ms,
                          std::size_t n) {
  unsigned __int128 s = 0;
  for (auto m : ms) s += ipow(m, n);
  return ipow(d, n) <= ipow(2, n) * s;
}

bool Campaign::passed() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const CampaignRow& r) { return r.pass; });
}

std::string Campaign::csv() const {
  std::ostringstream os;
  const bool points = lemma == Lemma::kPoints;
  os << "trial,seed,n,p," << (points ? "multiplicities" : "L")
     << ",rows,cols,min_degree,bound," << (points ? "max_degree" : "bound_ceil")
     << ",vanishing,minimal,pass\n";
  for (const auto& r : rows)
    os << r.trial << ',' << r.seed << ',' << params.n << ',' << params.p << ','
       << r.instance << ',' << r.rows << ',' << r.cols << ',' << r.degree << ','
       << format_real(r.bound) << ',' << r.bound_ceil << ','
       << (r.vanishing_ok ? "true" : "false") << ','
       << (r.minimal_ok ? "true" : "false") << ','
       << (r.pass ? "true" : "false") << '\n';
  return os.str();
}

Campaign verify_lemma_campaign(Lemma which, std::size_t trials,
                               std::uint64_t seed, CampaignParams params) {
  if (trials < 1) throw InputError("campaigns need at least one trial");
  if (params.m_min < 1 || params.m_min > params.m_max)
    throw InputError("invalid multiplicity range");
  Field::get(params.p, 1);  // validates p before worker threads start

  Campaign c;
  c.lemma = which;
  c.params = params;
  c.rows.resize(trials);

  unsigned workers = params.threads ? params.threads
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(trials);
  auto work = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < trials;) {
      try {
        const std::uint64_t s = stream_seed(seed, t);
        c.rows[t] = which == Lemma::kPoints ? run_points_trial(params, t, s)
                                            : run_lines_trial(params, t, s);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return c;
}

}  // namespace jointslab
