#pragma once

// JSON file formats.
//
//   field:        {"p": 5, "q": 2, "modulus": [1, 1, 1]}       (low-to-high)
//   element:      [c_0, ..., c_{q-1}]                          (low-to-high)
//   line set:     {"field": F, "n": 3, "lines": [{"base": [e, e, e],
//                                                 "dir":  [e, e, e]}, ...]}
//   polynomial:   {"field": F, "n": 3, "terms": [{"exp": [2, 0, 1],
//                                                 "coef": e}, ...]}
//   factor list:  {"factors": [{"poly": P, "mult": 2}, ...]}
//   multiplicity: {"field": F, "n": 3, "points": [{"coords": [e, e, e],
//                                                 "m": 3}, ...]}
//
// Readers throw InputError with a path-like location on malformed input.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "jointslab/constructions.hpp"
#include "jointslab/geometry.hpp"
#include "jointslab/interp.hpp"
#include "jointslab/joints.hpp"
#include "jointslab/poly.hpp"
#include "jointslab/prune.hpp"

namespace jointslab::io {

using nlohmann::json;

json to_json(const FieldSpec& spec);
const Field& field_from_json(const json& j);

json to_json(const FieldElem& a);
FieldElem elem_from_json(const Field& field, const json& j);

json to_json(const Point& x);
Point point_from_json(const Field& field, std::size_t n, const json& j);

json to_json(const LineSet& ls);
LineSet lineset_from_json(const json& j);

json to_json(const MultiPoly& f);
MultiPoly poly_from_json(const json& j);

struct FactorEntry {
  MultiPoly poly;
  std::uint32_t mult = 1;
};
json factors_to_json(const std::vector<FactorEntry>& factors);
std::vector<FactorEntry> factors_from_json(const json& j);
// Each factor repeated `mult` times.
std::vector<MultiPoly> expand_factors(const std::vector<FactorEntry>& factors);

json multiplicity_to_json(const std::vector<MultiplicityPoint>& spec);
std::vector<MultiplicityPoint> multiplicity_from_json(const json& j);

json to_json(const JointSummary& s);
json to_json(const RefinementResult& r);
json to_json(const PruneStep& step, const FactorData& factors);
json to_json(const InterpResult& r);
json to_json(const Provenance& p);

// Rounds to 12 significant digits, the precision of every emitted real.
double round_sig(double v);
std::string format_real(double v);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
// Pretty-printed with a trailing newline.
std::string dump(const json& j);

}  // namespace jointslab::io
