#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "espo/filtration.hpp"
#include "espo/group.hpp"
#include "espo/incidence.hpp"
#include "espo/matroid.hpp"
#include "espo/multipoly.hpp"
#include "espo/point_set.hpp"
#include "espo/special_subgroup.hpp"
#include "espo/variety.hpp"

namespace espo::io {

using Json = nlohmann::ordered_json;

// Whole file as bytes; IoError when unreadable.
std::string read_file(const std::filesystem::path& path);
// IoError when the file cannot be written.
void write_file(const std::filesystem::path& path, const std::string& contents);
Json parse_json(const std::string& text, const std::string& origin);

// "additive:2" or {"kind": "additive", "dim": 2}, {"kind": "multiplicative",
// "dim": r, "primes": [...]}, {"kind": "elliptic", "a": "0", "b": "-2"}.
GroupModel group_from_json(const Json& j);

Rational rational_from_json(const Json& j);
// Exact value: a JSON integer when it fits in 64 bits, otherwise a string.
Json integer_to_json(const Integer& z);
Json rational_to_json(const Rational& q);

// Quaternion symbol, integer scalar, or a matrix (rows of numbers / rational strings).
Endomorphism endomorphism_from_json(const GroupModel& g, const Json& j);

// [[coefficient, [e0, e1, ...]], ...] with rational coefficients as strings or integers.
MultiPoly poly_from_json(std::size_t variables, const Json& j);
Json poly_to_json(const MultiPoly& p);

// {"group": ..., "n": k, "relations": [[endo, ...], ...]}
SpecialSubgroupSpec subgroup_from_json(const Json& j);

// {"arity": n, "mode": "poly|lattice|graph", "constraints": [...], "dim": k, ...}
//   poly:    "ambient": group or list of groups; constraints are polynomials in
//            the concatenated affine coordinates.
//   lattice: "group"; constraints are relation rows of endomorphisms.
//   graph:   "group"; constraints are {"target": t, "terms": [[i, endo], ...],
//            "constant": element line}.
VarietySpec variety_from_json(const Json& j);

// {"kind": "base"} | {"kind": "poly", "inner": ...} |
// {"kind": "localize", "inner": ..., "a": 2, "k": 1} |
// {"kind": "module_ext", "inner": ..., "constants": [[[...]]]} | {"kind": "quaternion_order"}
FiltrationSpec filtration_from_json(const Json& j);

// {"n": k, "backend": "table", "ranks": [...]} |
// {"backend": "linear", "field": "Q" or q, "columns": [[...], ...]} |
// {"backend": "mullattice", "values": [...]} | {"backend": "lines", "n": k, "lines": [[...], ...]} |
// {"backend": "direct_sum", "parts": [...]} |
// {"preset": "fano" | "projective_space" (m, q) | "affine_plane" (q) | "broken_quadrilateral" | "free" (n)}
RankOracle matroid_from_json(const Json& j);

// One element per line in the group's point encoding; blank lines and lines
// starting with '#' are skipped.
PointSet parse_points(const GroupModel& g, const std::string& text, const std::string& origin);
std::string format_points(const PointSet& s);

// One "A,B,C" triple per line.
std::vector<Line> parse_lines(const std::string& text, const std::string& origin);

// Index list of a mask.
Json mask_to_json(Mask m);

// Shortest round-trip decimal for a double, independent of the locale.
std::string format_double(double x);

std::string hex64(std::uint64_t x);

}  // namespace espo::io
