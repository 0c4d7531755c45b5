#include "io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "espo/errors.hpp"

namespace espo::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ValidationError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t as_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  bad("expected an integer");
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool quaternion_like(const std::string& s) {
  const std::string body = !s.empty() && s[0] == '-' ? s.substr(1) : s;
  return body == "i" || body == "j" || body == "k";
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
}

GroupModel group_from_json(const Json& j) {
  if (j.is_string()) return parse_group(j.get<std::string>());
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "additive") return GroupModel::additive(j.contains("dim") ? as_size(j["dim"], "dim") : 1);
  if (kind == "multiplicative") {
    std::vector<long> primes = field(j, "primes").get<std::vector<long>>();
    return GroupModel::multiplicative(j.contains("dim") ? as_size(j["dim"], "dim") : 1, std::move(primes));
  }
  if (kind == "elliptic") return GroupModel::elliptic(rational_from_json(field(j, "a")), rational_from_json(field(j, "b")));
  if (kind == "quaternion_torus") return quaternion_torus();
  bad("unknown group kind \"" + kind + "\"");
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad("expected a rational as an integer or a \"p/q\" string");
}

Json integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(to_string(z));
}

Json rational_to_json(const Rational& q) { return Json(to_string(q)); }

Endomorphism endomorphism_from_json(const GroupModel& g, const Json& j) {
  if (j.is_number_integer()) return Endomorphism::scalar(g, integer_from_json(j));
  if (j.is_string()) {
    const std::string s = trim(j.get<std::string>());
    if (quaternion_like(s)) {
      if (!(g == quaternion_torus())) bad("quaternion symbol \"" + s + "\" needs the quaternion torus");
      return quaternion_symbol(s);
    }
    return Endomorphism::scalar(g, parse_integer(s));
  }
  if (!j.is_array()) bad("endomorphism must be an integer, a symbol or a matrix");
  const std::size_t n = g.dimension();
  if (j.size() != n) throw DimensionError("endomorphism matrix must have " + std::to_string(n) + " rows");
  Endomorphism e = Endomorphism::zero(g);
  switch (g.kind()) {
    case GroupKind::additive: {
      std::vector<std::vector<Rational>> rows;
      for (const auto& r : j) {
        std::vector<Rational> row;
        for (const auto& x : r) row.push_back(rational_from_json(x));
        rows.push_back(std::move(row));
      }
      e = Endomorphism::additive(RatMatrix::from_rows(rows));
      break;
    }
    case GroupKind::multiplicative: {
      std::vector<std::vector<Integer>> rows;
      for (const auto& r : j) {
        std::vector<Integer> row;
        for (const auto& x : r) row.push_back(integer_from_json(x));
        rows.push_back(std::move(row));
      }
      e = Endomorphism::multiplicative(IntMatrix::from_rows(rows));
      break;
    }
    case GroupKind::elliptic:
      if (!j[0].is_array() || j[0].size() != 1) throw DimensionError("elliptic endomorphisms are 1x1");
      e = Endomorphism::elliptic(integer_from_json(j[0][0]));
      break;
  }
  e.validate(g);
  return e;
}

MultiPoly poly_from_json(std::size_t variables, const Json& j) {
  if (!j.is_array()) bad("polynomial must be a list of [coefficient, exponents] terms");
  MultiPoly p(variables);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[1].is_array()) bad("polynomial term must be [coefficient, [exponents]]");
    Exponents e;
    for (const auto& x : term[1]) e.push_back(static_cast<unsigned>(as_size(x, "exponent")));
    if (e.size() != variables)
      throw DimensionError("term has " + std::to_string(e.size()) + " exponents, expected " + std::to_string(variables));
    p.add_term(rational_from_json(term[0]), std::move(e));
  }
  return p;
}

Json poly_to_json(const MultiPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) out.push_back(Json::array({rational_to_json(c), e}));
  return out;
}

SpecialSubgroupSpec subgroup_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "quaternion_rep") return quaternion_rep();
  SpecialSubgroupSpec s;
  s.group = group_from_json(field(j, "group"));
  s.factors = as_size(field(j, "n"), "n");
  for (const auto& row : field(j, "relations")) {
    if (!row.is_array() || row.size() != s.factors) throw DimensionError("each relation needs one endomorphism per factor");
    std::vector<Endomorphism> r;
    for (const auto& e : row) r.push_back(endomorphism_from_json(s.group, e));
    s.relations.push_back(std::move(r));
  }
  return s;
}

VarietySpec variety_from_json(const Json& j) {
  const std::string mode = field(j, "mode").get<std::string>();
  std::optional<std::size_t> dim;
  if (j.contains("dim")) dim = as_size(j["dim"], "dim");
  if (mode == "lattice") {
    if (j.contains("subgroup")) return VarietySpec::lattice(subgroup_from_json(j["subgroup"]), dim);
    SpecialSubgroupSpec s;
    s.group = group_from_json(field(j, "group"));
    s.factors = as_size(field(j, "arity"), "arity");
    for (const auto& row : field(j, "constraints")) {
      if (!row.is_array() || row.size() != s.factors) throw DimensionError("each relation needs one endomorphism per factor");
      std::vector<Endomorphism> r;
      for (const auto& e : row) r.push_back(endomorphism_from_json(s.group, e));
      s.relations.push_back(std::move(r));
    }
    return VarietySpec::lattice(std::move(s), dim);
  }
  const std::size_t arity = as_size(field(j, "arity"), "arity");
  if (mode == "graph") {
    const GroupModel g = group_from_json(field(j, "group"));
    std::vector<GraphRelation> rels;
    for (const auto& c : field(j, "constraints")) {
      GraphRelation r;
      r.target = as_size(field(c, "target"), "target");
      for (const auto& t : field(c, "terms")) {
        if (!t.is_array() || t.size() != 2) bad("graph term must be [index, endomorphism]");
        r.terms.emplace_back(as_size(t[0], "term index"), endomorphism_from_json(g, t[1]));
      }
      if (c.contains("constant")) r.constant = parse_element(g, c["constant"].get<std::string>());
      rels.push_back(std::move(r));
    }
    return VarietySpec::graph(g, arity, std::move(rels), dim);
  }
  if (mode == "poly") {
    std::vector<GroupModel> ambient;
    const Json& a = field(j, "ambient");
    if (a.is_array()) {
      for (const auto& g : a) ambient.push_back(group_from_json(g));
    } else {
      ambient.assign(arity, group_from_json(a));
    }
    if (ambient.size() != arity) throw DimensionError("ambient lists " + std::to_string(ambient.size()) + " groups for arity " + std::to_string(arity));
    std::size_t vars = 0;
    for (const auto& g : ambient) vars += affine_width(g);
    std::vector<MultiPoly> polys;
    for (const auto& c : field(j, "constraints")) polys.push_back(poly_from_json(vars, c));
    if (!dim) bad("poly varieties need \"dim\"");
    return VarietySpec::poly(std::move(ambient), std::move(polys), *dim);
  }
  bad("unknown variety mode \"" + mode + "\"");
}

FiltrationSpec filtration_from_json(const Json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : field(j, "kind").get<std::string>();
  if (kind == "base") return FiltrationSpec::base();
  if (kind == "quaternion_order") return FiltrationSpec::quaternion_order();
  const FiltrationSpec inner = j.contains("inner") ? filtration_from_json(j["inner"]) : FiltrationSpec::base();
  if (kind == "poly") return FiltrationSpec::poly(inner);
  if (kind == "localize") {
    const unsigned k = j.contains("k") ? static_cast<unsigned>(as_size(j["k"], "k")) : 1;
    return FiltrationSpec::localize(inner, integer_from_json(field(j, "a")), k);
  }
  if (kind == "module_ext") {
    StructureConstants c;
    for (const auto& plane : field(j, "constants")) {
      std::vector<std::vector<Integer>> rows;
      for (const auto& row : plane) {
        std::vector<Integer> r;
        for (const auto& x : row) r.push_back(integer_from_json(x));
        rows.push_back(std::move(r));
      }
      c.push_back(std::move(rows));
    }
    return FiltrationSpec::module_ext(inner, std::move(c));
  }
  bad("unknown filtration kind \"" + kind + "\"");
}

RankOracle matroid_from_json(const Json& j) {
  if (j.contains("preset")) {
    const std::string p = j["preset"].get<std::string>();
    if (p == "fano") return fano();
    if (p == "broken_quadrilateral") return broken_quadrilateral();
    if (p == "projective_space")
      return projective_space(static_cast<unsigned>(as_size(field(j, "m"), "m")), static_cast<unsigned>(as_size(field(j, "q"), "q")));
    if (p == "affine_plane") return affine_plane(static_cast<unsigned>(as_size(field(j, "q"), "q")));
    if (p == "free") return free_matroid(as_size(field(j, "n"), "n"));
    bad("unknown matroid preset \"" + p + "\"");
  }
  const std::string backend = field(j, "backend").get<std::string>();
  if (backend == "table") {
    std::vector<unsigned> ranks;
    for (const auto& r : field(j, "ranks")) ranks.push_back(static_cast<unsigned>(as_size(r, "rank")));
    return RankOracle::table(as_size(field(j, "n"), "n"), std::move(ranks));
  }
  if (backend == "linear") {
    const Json& cols = field(j, "columns");
    const Json fieldv = j.contains("field") ? j["field"] : Json("Q");
    if (fieldv.is_string() && fieldv.get<std::string>() == "Q") {
      std::vector<std::vector<Rational>> columns;
      for (const auto& c : cols) {
        std::vector<Rational> v;
        for (const auto& x : c) v.push_back(rational_from_json(x));
        columns.push_back(std::move(v));
      }
      const std::size_t rows = columns.empty() ? 0 : columns.front().size();
      RatMatrix m(rows, columns.size());
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw DimensionError("ragged matroid columns");
        for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
      }
      return RankOracle::linear_rational(std::move(m));
    }
    const unsigned q = static_cast<unsigned>(as_size(fieldv, "field"));
    std::vector<std::vector<unsigned>> columns;
    for (const auto& c : cols) {
      std::vector<unsigned> v;
      for (const auto& x : c) v.push_back(static_cast<unsigned>(as_size(x, "field element")));
      columns.push_back(std::move(v));
    }
    return RankOracle::linear_field(q, std::move(columns));
  }
  if (backend == "mullattice") {
    std::vector<Rational> values;
    for (const auto& v : field(j, "values")) values.push_back(rational_from_json(v));
    return RankOracle::mullattice(std::move(values));
  }
  if (backend == "lines") {
    std::vector<Mask> lines;
    for (const auto& l : field(j, "lines")) {
      std::vector<std::size_t> idx;
      for (const auto& x : l) idx.push_back(as_size(x, "point index"));
      lines.push_back(mask_of(idx));
    }
    return RankOracle::from_lines(as_size(field(j, "n"), "n"), std::move(lines));
  }
  if (backend == "direct_sum") {
    const Json& parts = field(j, "parts");
    if (!parts.is_array() || parts.empty()) bad("direct_sum needs at least one part");
    RankOracle o = matroid_from_json(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) o = RankOracle::direct_sum(o, matroid_from_json(parts[i]));
    return o;
  }
  bad("unknown matroid backend \"" + backend + "\"");
}

PointSet parse_points(const GroupModel& g, const std::string& text, const std::string& origin) {
  PointSet s(g);
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    try {
      s.insert(parse_element(g, t));
    } catch (const ValidationError& e) {
      throw ValidationError(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return s;
}

std::string format_points(const PointSet& s) {
  std::string out;
  for (const auto& p : s.sorted()) {
    out += format_element(s.ambient(), p);
    out += '\n';
  }
  return out;
}

std::vector<Line> parse_lines(const std::string& text, const std::string& origin) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<Rational> c;
    std::size_t start = 0;
    try {
      for (std::size_t pos; (pos = t.find(',', start)) != std::string::npos; start = pos + 1)
        c.push_back(parse_rational(std::string_view(t).substr(start, pos - start)));
      c.push_back(parse_rational(std::string_view(t).substr(start)));
      if (c.size() != 3) bad("expected three coefficients A,B,C");
      lines.push_back(normalize_line({c[0], c[1], c[2]}));
    } catch (const ValidationError& e) {
      throw ValidationError(origin + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return lines;
}

Json mask_to_json(Mask m) { return Json(mask_elements(m)); }

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string hex64(std::uint64_t x) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace espo::io
