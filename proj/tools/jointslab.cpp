// jointslab command-line driver.
//
// Exit codes: 0 on success, 1 when a verification fails, 2 on bad input.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jointslab/constructions.hpp"
#include "jointslab/error.hpp"
#include "jointslab/interp.hpp"
#include "jointslab/io.hpp"
#include "jointslab/joints.hpp"
#include "jointslab/prune.hpp"
#include "jointslab/report.hpp"

namespace fs = std::filesystem;
using namespace jointslab;
using io::json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kBadInput = 2;

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    io::write_text_file(out, text);
}

// --- gen -------------------------------------------------------------------

struct GenOpts {
  std::string kind;
  std::uint32_t m = 2;
  std::size_t n = 3;
  std::uint32_t p = 5;
  std::uint32_t q = 1;
  std::size_t count = 10;
  std::uint64_t seed = 1;
  std::string mode = "greedy";
  std::string out;
};

int run_gen(const GenOpts& o) {
  Provenance prov;
  prov.generator = o.kind;
  std::optional<LineSet> ls;
  if (o.kind == "grid") {
    ls = grid_lines(o.m, o.n, Field::get(o.p, o.q));
    prov.params = {{"m", o.m}, {"n", static_cast<std::int64_t>(o.n)}, {"p", o.p}, {"q", o.q}};
  } else if (o.kind == "plane") {
    ls = plane_counterexample(o.p);
    prov.params = {{"p", o.p}};
  } else if (o.kind == "heisenberg") {
    if (o.mode == "lines")
      ls = heisenberg_lines(o.p);
    else
      ls = heisenberg_counterexample(
          o.p, o.mode == "per-point" ? TransversalMode::kPerPoint : TransversalMode::kGreedyCover);
    prov.generator += ":" + o.mode;
    prov.params = {{"p", o.p}};
  } else {
    ls = random_lines(o.count, o.n, Field::get(o.p, o.q), o.seed);
    prov.params = {{"count", static_cast<std::int64_t>(o.count)},
                   {"n", static_cast<std::int64_t>(o.n)},
                   {"p", o.p},
                   {"q", o.q}};
    prov.seed = o.seed;
  }
  io::write_text_file(o.out, io::dump(io::to_json(*ls)));
  io::write_text_file(o.out + ".provenance.json", io::dump(io::to_json(prov)));
  std::cout << o.out << ": " << ls->size() << " lines\n";
  return kOk;
}

// --- joints ----------------------------------------------------------------

int run_joints(const std::vector<std::string>& files, const std::string& report,
               bool markdown) {
  std::vector<BoundReport> rows;
  json summaries = json::array();
  for (const auto& file : files) {
    const LineSet ls = io::lineset_from_json(io::read_json_file(file));
    const JointSummary s = summarize(ls);
    json j = io::to_json(s);
    j["file"] = fs::path(file).filename().string();
    summaries.push_back(std::move(j));
    rows.push_back(run_bound_report(ls, fs::path(file).stem().string()));
  }
  if (markdown)
    std::cout << bound_report_markdown(rows);
  else
    std::cout << io::dump(summaries.size() == 1 ? summaries[0] : summaries);
  if (!report.empty()) io::write_text_file(report, bound_report_csv(rows));
  return kOk;
}

// --- interp ----------------------------------------------------------------

int finish_interp(const InterpResult& r, bool ok, const std::string& out) {
  json j = io::to_json(r);
  j["verified"] = ok;
  emit(io::dump(j), out);
  return ok ? kOk : kCheckFailed;
}

int run_interp(const std::string& which, const std::string& file, const std::string& out) {
  const json in = io::read_json_file(file);
  if (which == "points") {
    const auto spec = io::multiplicity_from_json(in);
    const InterpResult r = vanish_at_points(spec);
    bool ok = vanishes_to_orders(r.poly, spec) && r.degree <= r.bound + 1e-9;
    if (r.bound_large_m) ok = ok && r.degree <= *r.bound_large_m + 1e-9;
    return finish_interp(r, ok, out);
  }
  const LineSet ls = io::lineset_from_json(in);
  const InterpResult r = vanish_on_lines(ls);
  return finish_interp(
      r, vanishes_on_all_lines(r.poly, ls) && r.degree <= lines_bound_ceil(ls.size(), ls.dim()),
      out);
}

// --- prune -----------------------------------------------------------------

int run_prune(const std::string& file, const std::string& factors_file,
              std::optional<std::uint32_t> M, const std::string& out) {
  const LineSet ls = io::lineset_from_json(io::read_json_file(file));
  const auto entries = io::factors_from_json(io::read_json_file(factors_file));
  const auto polys = io::expand_factors(entries);
  const auto joints = find_joints(ls);
  if (joints.empty()) throw InputError(file + ": configuration has no joints");
  const FactorData fd = make_factor_data(polys, joints);
  const PruneStep step = prune_step(ls, joints, fd, M.value_or(default_M(ls.dim())));
  emit(io::dump(io::to_json(step, fd)), out);
  return step.identity_holds ? kOk : kCheckFailed;
}

// --- verify ----------------------------------------------------------------

int run_verify(const std::string& which, std::size_t trials, std::uint64_t seed,
               const CampaignParams& params, const std::string& out) {
  const Campaign c = verify_lemma_campaign(
      which == "lemma1" ? Lemma::kPoints : Lemma::kLines, trials, seed, params);
  emit(c.csv(), out);
  std::size_t passed = 0;
  for (const auto& r : c.rows) passed += r.pass;
  std::cerr << which << ": " << passed << "/" << c.rows.size() << " trials passed\n";
  return c.passed() ? kOk : kCheckFailed;
}

// --- kollar ----------------------------------------------------------------

int run_kollar(const std::vector<std::string>& surface_files, const std::string& lines_file,
               std::uint32_t M, const std::string& out) {
  std::vector<MultiPoly> surfaces;
  for (const auto& f : surface_files) surfaces.push_back(io::poly_from_json(io::read_json_file(f)));
  const LineSet ls = io::lineset_from_json(io::read_json_file(lines_file));
  const KollarCheck k = check_kollar(surfaces, ls, M);
  json pts = json::array();
  for (const auto& kp : k.points) pts.push_back({{"x", io::to_json(kp.x)}, {"r", kp.r}});
  const json j{{"degrees", k.degrees},
               {"M", k.M},
               {"points", std::move(pts)},
               {"lhs", io::round_sig(k.lhs)},
               {"rhs", k.rhs},
               {"holds", k.holds},
               {"coprime_verified", k.coprime_verified}};
  emit(io::dump(j), out);
  return kOk;  // report-only
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joints of line configurations over finite fields"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "Generate a line configuration");
  g->add_option("kind", gen.kind, "grid | plane | heisenberg | random")
      ->required()
      ->check(CLI::IsMember({"grid", "plane", "heisenberg", "random"}));
  g->add_option("--m", gen.m, "Grid side");
  g->add_option("--n", gen.n, "Dimension");
  g->add_option("--p", gen.p, "Characteristic");
  g->add_option("--q", gen.q, "Extension degree");
  g->add_option("--count", gen.count, "Number of random lines");
  g->add_option("--seed", gen.seed, "Random seed");
  g->add_option("--mode", gen.mode, "Heisenberg transversals: greedy | per-point | lines")
      ->check(CLI::IsMember({"greedy", "per-point", "lines"}));
  g->add_option("-o,--out", gen.out, "Output line-set JSON")->required();

  std::vector<std::string> joint_files;
  std::string joint_report;
  bool markdown = false;
  auto* jn = app.add_subcommand("joints", "Find joints and report the weighted sums");
  jn->add_option("files", joint_files, "Line-set JSON files")->required();
  jn->add_option("--report", joint_report, "Write the bound report CSV here");
  jn->add_flag("--markdown", markdown, "Print a markdown bound table instead of JSON");

  std::string interp_kind, interp_file, interp_out;
  auto* ip = app.add_subcommand("interp", "Minimal-degree vanishing polynomial");
  ip->add_option("kind", interp_kind, "points | lines")
      ->required()
      ->check(CLI::IsMember({"points", "lines"}));
  ip->add_option("file", interp_file, "Multiplicity spec or line-set JSON")->required();
  ip->add_option("-o,--out", interp_out, "Output JSON (default stdout)");

  std::string prune_file, prune_factors, prune_out;
  std::optional<std::uint32_t> prune_M;
  auto* pr = app.add_subcommand("prune", "One weighted-incidence pruning step");
  pr->add_option("file", prune_file, "Line-set JSON")->required();
  pr->add_option("--factors", prune_factors, "Factor-list JSON")->required();
  pr->add_option("--M", prune_M, "Refinement constant (default 3n)")->check(CLI::PositiveNumber);
  pr->add_option("-o,--out", prune_out, "Output JSON (default stdout)");

  std::string verify_which, verify_out;
  std::size_t trials = 50;
  std::uint64_t verify_seed = 1;
  CampaignParams params;
  bool no_minimality = false;
  auto* vf = app.add_subcommand("verify", "Randomized degree-bound campaign");
  vf->add_option("lemma", verify_which, "lemma1 | lemma2")
      ->required()
      ->check(CLI::IsMember({"lemma1", "lemma2"}));
  vf->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  vf->add_option("--seed", verify_seed, "Campaign seed");
  vf->add_option("--n", params.n, "Dimension");
  vf->add_option("--p", params.p, "Prime field");
  vf->add_option("--max-points", params.max_points, "Largest point count (lemma1)");
  vf->add_option("--m-min", params.m_min, "Smallest multiplicity (lemma1)");
  vf->add_option("--m-max", params.m_max, "Largest multiplicity (lemma1)");
  vf->add_option("--max-lines", params.max_lines, "Largest line count (lemma2)");
  vf->add_option("--threads", params.threads, "Worker threads (0 = all cores)");
  vf->add_flag("--no-minimality", no_minimality, "Skip the degree - 1 nullspace check");
  vf->add_option("-o,--out", verify_out, "Output CSV (default stdout)");

  std::vector<std::string> kollar_surfaces;
  std::string kollar_lines, kollar_out;
  std::uint32_t kollar_M = 0;
  auto* ko = app.add_subcommand("kollar", "Report both sides of the surface inequality");
  ko->add_option("--surfaces", kollar_surfaces, "Polynomial JSON files")->required();
  ko->add_option("--lines", kollar_lines, "Line-set JSON")->required();
  ko->add_option("--M", kollar_M, "Count points with r(x) > M");
  ko->add_option("-o,--out", kollar_out, "Output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*g) return run_gen(gen);
    if (*jn) return run_joints(joint_files, joint_report, markdown);
    if (*ip) return run_interp(interp_kind, interp_file, interp_out);
    if (*pr) return run_prune(prune_file, prune_factors, prune_M, prune_out);
    if (*vf) {
      params.check_minimality = !no_minimality;
      return run_verify(verify_which, trials, verify_seed, params, verify_out);
    }
    if (*ko) return run_kollar(kollar_surfaces, kollar_lines, kollar_M, kollar_out);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kOk;
}
