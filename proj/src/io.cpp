#include "jointslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "jointslab/error.hpp"

namespace jointslab::io {

namespace {

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

template <typename F>
decltype(auto) guarded(const std::string& where, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

std::size_t read_dim(const json& j, const std::string& where) {
  const auto n = need(j, "n", where).get<std::int64_t>();
  if (n < 1) throw InputError(where + ": n must be >= 1");
  return static_cast<std::size_t>(n);
}

}  // namespace

json to_json(const FieldSpec& spec) {
  return json{{"p", spec.p}, {"q", spec.q}, {"modulus", spec.modulus}};
}

const Field& field_from_json(const json& j) {
  return guarded("field", [&]() -> const Field& {
    FieldSpec spec;
    const auto p = need(j, "p", "field").get<std::int64_t>();
    const auto q = j.contains("q") ? j.at("q").get<std::int64_t>() : 1;
    if (p < 2 || p > (std::int64_t{1} << 31) || q < 1 || q > 64)
      throw InputError("field: p or q out of range");
    spec.p = static_cast<std::uint32_t>(p);
    spec.q = static_cast<std::uint32_t>(q);
    if (spec.q == 1 || !j.contains("modulus")) {
      return Field::get(spec.p, spec.q);
    }
    for (const auto& c : j.at("modulus")) {
      const auto v = c.get<std::int64_t>();
      if (v < 0) throw InputError("field: negative modulus coefficient");
      spec.modulus.push_back(static_cast<std::uint32_t>(v));
    }
    return Field::get(spec);
  });
}

json to_json(const FieldElem& a) { return json(a.coeffs()); }

FieldElem elem_from_json(const Field& field, const json& j) {
  return guarded("element", [&] {
    // A bare integer or a singly nested array ([[3]]) is accepted too.
    if (j.is_number_integer()) return field.from_int(j.get<std::int64_t>());
    if (!j.is_array()) throw InputError("element: expected a coefficient array");
    if (j.size() == 1 && j[0].is_array()) return elem_from_json(field, j[0]);
    std::vector<std::int64_t> c;
    for (const auto& v : j) c.push_back(v.get<std::int64_t>());
    return field.from_coeffs(c);
  });
}

json to_json(const Point& x) {
  json arr = json::array();
  for (const auto& c : x.coords()) arr.push_back(to_json(c));
  return arr;
}

Point point_from_json(const Field& field, std::size_t n, const json& j) {
  if (!j.is_array() || j.size() != n)
    throw InputError("point: expected " + std::to_string(n) + " coordinates");
  std::vector<FieldElem> c;
  for (const auto& e : j) c.push_back(elem_from_json(field, e));
  return Point(std::move(c));
}

json to_json(const LineSet& ls) {
  json lines = json::array();
  for (const auto& l : ls.lines())
    lines.push_back({{"base", to_json(l.base())}, {"dir", to_json(l.dir())}});
  return json{{"field", to_json(ls.field().spec())},
              {"n", ls.dim()},
              {"lines", std::move(lines)}};
}

LineSet lineset_from_json(const json& j) {
  return guarded("line set", [&] {
    const Field& f = field_from_json(need(j, "field", "line set"));
    const std::size_t n = read_dim(j, "line set");
    std::vector<Line> lines;
    const auto& arr = need(j, "lines", "line set");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string where = "lines[" + std::to_string(i) + "]";
      try {
        lines.emplace_back(point_from_json(f, n, need(arr[i], "base", where)),
                           point_from_json(f, n, need(arr[i], "dir", where)));
      } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
      }
    }
    return LineSet(f, n, std::move(lines));
  });
}

json to_json(const MultiPoly& f) {
  json terms = json::array();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it)
    terms.push_back({{"exp", it->first}, {"coef", to_json(it->second)}});
  return json{{"field", to_json(f.field().spec())},
              {"n", f.nvars()},
              {"terms", std::move(terms)}};
}

MultiPoly poly_from_json(const json& j) {
  return guarded("polynomial", [&] {
    const Field& f = field_from_json(need(j, "field", "polynomial"));
    const std::size_t n = read_dim(j, "polynomial");
    MultiPoly poly(f, n);
    for (const auto& t : need(j, "terms", "polynomial")) {
      const auto exp = need(t, "exp", "term").get<std::vector<std::int64_t>>();
      if (exp.size() != n) throw InputError("term: exponent length != n");
      Exponent e;
      for (auto v : exp) {
        if (v < 0) throw InputError("term: negative exponent");
        e.push_back(static_cast<std::uint32_t>(v));
      }
      poly.add_term(e, elem_from_json(f, need(t, "coef", "term")));
    }
    return poly;
  });
}

json factors_to_json(const std::vector<FactorEntry>& factors) {
  json arr = json::array();
  for (const auto& f : factors)
    arr.push_back({{"poly", to_json(f.poly)}, {"mult", f.mult}});
  return json{{"factors", std::move(arr)}};
}

std::vector<FactorEntry> factors_from_json(const json& j) {
  return guarded("factor list", [&] {
    std::vector<FactorEntry> out;
    for (const auto& e : need(j, "factors", "factor list")) {
      const auto mult = e.contains("mult") ? e.at("mult").get<std::int64_t>() : 1;
      if (mult < 1) throw InputError("factor list: mult must be >= 1");
      out.push_back({poly_from_json(need(e, "poly", "factor")),
                     static_cast<std::uint32_t>(mult)});
    }
    if (out.empty()) throw InputError("factor list is empty");
    return out;
  });
}

std::vector<MultiPoly> expand_factors(const std::vector<FactorEntry>& factors) {
  std::vector<MultiPoly> out;
  for (const auto& f : factors)
    for (std::uint32_t k = 0; k < f.mult; ++k) out.push_back(f.poly);
  return out;
}

json multiplicity_to_json(const std::vector<MultiplicityPoint>& spec) {
  json pts = json::array();
  for (const auto& mp : spec)
    pts.push_back({{"coords", to_json(mp.x)}, {"m", mp.m}});
  return json{{"field", to_json(spec.front().x.field().spec())},
              {"n", spec.front().x.dim()},
              {"points", std::move(pts)}};
}

std::vector<MultiplicityPoint> multiplicity_from_json(const json& j) {
  return guarded("multiplicity spec", [&] {
    const Field& f = field_from_json(need(j, "field", "multiplicity spec"));
    const std::size_t n = read_dim(j, "multiplicity spec");
    std::vector<MultiplicityPoint> out;
    for (const auto& p : need(j, "points", "multiplicity spec")) {
      const auto m = need(p, "m", "point").get<std::int64_t>();
      if (m < 1) throw InputError("multiplicity spec: m must be >= 1");
      out.push_back({point_from_json(f, n, need(p, "coords", "point")),
                     static_cast<std::uint32_t>(m)});
    }
    return out;
  });
}

json to_json(const JointSummary& s) {
  json joints = json::array();
  for (const auto& j : s.joints)
    joints.push_back(
        {{"x", to_json(j.x)}, {"r", j.r}, {"N", j.N}, {"incident", j.incident}});
  json out{{"n", s.n},
           {"L", s.L},
           {"J", s.joints.size()},
           {"S_N", round_sig(s.S_N)},
           {"S_r", round_sig(s.S_r)},
           {"hypothesis_holds", s.hypothesis_holds},
           {"joints", std::move(joints)}};
  if (s.exact_S_N) out["S_N_exact"] = s.exact_S_N->to_string();
  if (s.exact_S_r) out["S_r_exact"] = s.exact_S_r->to_string();
  return out;
}

json to_json(const RefinementResult& r) {
  return json{
      {"L_i", r.lines_rich},
      {"J_i", r.joints_rich},
      {"L_i_prime", r.lines_refined},
      {"J_i_prime", r.joints_refined},
      {"sizes",
       {{"L_i", r.lines_rich.size()},
        {"J_i", r.joints_rich.size()},
        {"L_i_prime", r.lines_refined.size()},
        {"J_i_prime", r.joints_refined.size()}}},
      {"incidence",
       {{"total", r.total},
        {"poor_lines", r.poor_lines},
        {"poor_joints", r.poor_joints},
        {"unrefined_lines", r.unrefined_lines},
        {"unrefined_joints", r.unrefined_joints},
        {"kept", r.kept}}},
  };
}

json to_json(const PruneStep& step, const FactorData& factors) {
  json fs = json::array();
  for (std::size_t i = 0; i < factors.factors.size(); ++i)
    fs.push_back({{"poly", factors.factors[i].poly.to_string()},
                  {"degree", factors.factors[i].degree},
                  {"orders", factors.factors[i].orders},
                  {"weights", step.weights.weights[i]},
                  {"incidence", step.factor_incidence[i]}});
  json out{{"M", step.M},
           {"targets", step.weights.targets},
           {"factors", std::move(fs)},
           {"selected", step.selected},
           {"selected_degree", step.selected_degree},
           {"refinement", to_json(step.refinement)},
           {"partition_identity", step.identity_holds},
           {"gradient_vanishes", step.gradient_vanishes},
           {"singular_rich_joints", step.singular_rich_joints}};
  if (step.pth_root) out["pth_root"] = to_json(*step.pth_root);
  out["gradient_component"] = step.gradient_component
                                  ? json(*step.gradient_component)
                                  : json(nullptr);
  return out;
}

json to_json(const InterpResult& r) {
  json out{{"poly", to_json(r.poly)},
           {"degree", r.degree},
           {"bound", round_sig(r.bound)},
           {"constraint_rows", r.constraint_rows},
           {"monomial_cols", r.monomial_cols}};
  if (r.bound_large_m) out["bound_large_m"] = round_sig(*r.bound_large_m);
  return out;
}

json to_json(const Provenance& p) {
  json out{{"generator", p.generator}, {"params", p.params}};
  out["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  return out;
}

double round_sig(double v) { return std::stod(format_real(v)); }

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace jointslab::io
