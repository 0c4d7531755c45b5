#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <optional>
#include <sstream>

#include "espo/cgp.hpp"
#include "espo/counterexample.hpp"
#include "espo/errors.hpp"
#include "espo/incidence.hpp"
#include "espo/matroid.hpp"
#include "espo/parallel.hpp"
#include "espo/random.hpp"
#include "espo/sets.hpp"
#include "espo/sumprod.hpp"
#include "io.hpp"

namespace espo::cli {

namespace {

using io::Json;

struct Common {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string format = "json";
  std::string out;
  bool timing = false;
};

struct Report {
  Json inputs = Json::object();
  Json result = Json::object();
  Json advisory = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::uint64_t file_digest = 0xcbf29ce484222325ULL;

  // Reads a file and folds its bytes into the inputs digest.
  std::string load(const std::string& path) {
    std::string text = io::read_file(path);
    file_digest = fnv1a(text, file_digest);
    return text;
  }
};

std::string str(std::uint64_t v) { return std::to_string(v); }

std::string csv_cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return io::format_double(v.get<double>());
  return v.dump();
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  if (!r.csv_header.empty()) {
    row(r.csv_header);
    for (const auto& cells : r.csv_rows) row(cells);
    return os.str();
  }
  row({"key", "value"});
  for (const auto& [k, v] : r.result.items())
    if (v.is_primitive()) row({k, csv_cell(v)});
  return os.str();
}

Json json_or_null(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

Json verdict_json(const AxiomCheck& c) {
  Json j;
  j["axiom"] = c.axiom;
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["holds"] = c.holds;
  j["first_failure"] = c.first_failure ? Json(*c.first_failure) : Json(nullptr);
  return j;
}

// The variety x z w = 1 = y z^2 w^2 over the multiplicative line on 2.
VarietySpec geometric_variety() {
  const GroupModel g = GroupModel::multiplicative(1, {2});
  auto s = [&](long n) { return Endomorphism::scalar(g, n); };
  return VarietySpec::lattice({g, 4, {{s(1), s(0), s(1), s(1)}, {s(0), s(1), s(2), s(2)}}});
}

// ---- count ---------------------------------------------------------------

struct CountArgs {
  std::string variety;
  std::vector<std::string> sets;
  std::string strategy = "auto";
  std::uint64_t budget = 200'000'000;
  std::string constant = "1";
};

void run_count(const CountArgs& a, const Common& c, Report& r) {
  const VarietySpec v = io::variety_from_json(io::parse_json(r.load(a.variety), a.variety));
  if (a.sets.size() != 1 && a.sets.size() != v.arity())
    throw DimensionError("expected 1 or " + str(v.arity()) + " point files, got " + str(a.sets.size()));
  std::vector<PointSet> sets;
  std::vector<std::string> texts;
  for (const auto& path : a.sets) texts.push_back(r.load(path));
  for (std::size_t i = 0; i < v.arity(); ++i) {
    const std::size_t k = a.sets.size() == 1 ? 0 : i;
    sets.push_back(io::parse_points(v.ambient()[i], texts[k], a.sets[k]));
  }
  const Strategy strategy = parse_strategy(a.strategy);
  const Rational constant = parse_rational(a.constant);
  r.inputs["strategy"] = to_string(strategy);
  r.inputs["budget"] = a.budget;
  r.inputs["constant"] = io::rational_to_json(constant);

  const CountResult res = count_intersection(v, sets, {strategy, c.threads, a.budget});
  std::uint64_t N = 0;
  for (const auto& s : sets) N = std::max<std::uint64_t>(N, s.size());
  const BoundVerdict b = trivial_bound_check(v, N, res.count, constant);
  r.result["mode"] = to_string(v.mode());
  r.result["arity"] = v.arity();
  r.result["dim"] = v.declared_dimension();
  r.result["count"] = res.count;
  r.result["strategy"] = to_string(res.strategy);
  r.result["free_coordinates"] = res.free_coordinates;
  r.result["enumerated"] = res.enumerated;
  r.result["N"] = N;
  r.result["bound"] = io::integer_to_json(b.bound_base);
  r.result["ratio"] = io::rational_to_json(b.ratio);
  r.result["bound_passed"] = b.passed;
  r.csv_header = {"N", "count", "bound", "ratio"};
  r.csv_rows.push_back({str(N), str(res.count), to_string(b.bound_base), to_string(b.ratio)});
}

// ---- fit -----------------------------------------------------------------

struct FitArgs {
  std::string family;
  std::vector<unsigned> values;
  std::string samples;
  unsigned power = 2;
};

void run_fit(const FitArgs& a, const Common& c, Report& r) {
  struct Sample {
    std::uint64_t N, count;
  };
  std::vector<Sample> samples;
  if (!a.samples.empty()) {
    if (!a.family.empty()) throw ValidationError("--family and --samples are exclusive");
    std::istringstream in(r.load(a.samples));
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
      ++number;
      if (line.empty() || line[0] == '#' || line.rfind("N,", 0) == 0) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) throw ValidationError(a.samples + ":" + str(number) + ": expected N,count");
      const std::string second = line.substr(comma + 1);
      const Integer n = parse_integer(line.substr(0, comma));
      const Integer k = parse_integer(second.substr(0, second.find(',')));
      if (n < 0 || k < 0) throw ValidationError(a.samples + ":" + str(number) + ": negative value");
      samples.push_back({static_cast<std::uint64_t>(to_int64(n)), static_cast<std::uint64_t>(to_int64(k))});
    }
    r.inputs["source"] = "samples";
  } else {
    const std::string family = a.family.empty() ? "geometric" : a.family;
    std::vector<unsigned> values = a.values;
    if (family == "geometric") {
      if (values.empty()) values = {8, 16, 32, 64};
      const GroupModel g = GroupModel::multiplicative(1, {2});
      const VarietySpec v = geometric_variety();
      for (unsigned M : values) {
        const PointSet x = progression(g, GroupElement::multiplicative({1}), M);
        const std::vector<PointSet> sets{x, x, x, x};
        samples.push_back({x.size(), count_intersection(v, sets, {Strategy::join, c.threads}).count});
      }
    } else if (family == "counterexample") {
      if (values.empty()) values = {2, 3};
      for (unsigned N : values) samples.push_back({grid(N).size(), grid_star_count(N, {Strategy::join, c.threads}).count});
    } else {
      throw ValidationError("unknown family \"" + family + "\"");
    }
    r.inputs["family"] = family;
    r.inputs["values"] = values;
  }
  r.inputs["power"] = a.power;

  std::vector<std::pair<double, double>> points;
  Json rows = Json::array();
  r.csv_header = {"N", "count", "bound", "ratio"};
  for (const auto& s : samples) {
    const BoundVerdict b = trivial_bound_check(a.power, s.N, s.count, 1);
    rows.push_back({{"N", s.N}, {"count", s.count}, {"bound", io::integer_to_json(b.bound_base)},
                    {"ratio", io::rational_to_json(b.ratio)}});
    r.csv_rows.push_back({str(s.N), str(s.count), to_string(b.bound_base), to_string(b.ratio)});
    points.emplace_back(static_cast<double>(s.N), static_cast<double>(s.count));
  }
  r.result["samples"] = rows;
  const FitResult fit = fit_exponent(points);
  r.advisory["slope"] = fit.slope;
  r.advisory["intercept"] = fit.intercept;
  r.advisory["max_residual"] = fit.max_residual;
}

// ---- cgp -----------------------------------------------------------------

struct CgpArgs {
  std::string points;
  std::string group = "additive:2";
  unsigned grid = 0;
  unsigned C = 1;
  unsigned tau = 6;
  std::string mode = "exhaustive";
  std::uint64_t budget = 10'000;
  std::uint64_t subset_cap = 5'000'000;
};

void run_cgp(const CgpArgs& a, const Common& c, Report& r) {
  std::optional<PointSet> pts;
  if (a.grid > 0) {
    if (!a.points.empty()) throw ValidationError("--grid and --points are exclusive");
    pts = grid(a.grid);
    r.inputs["grid"] = a.grid;
  } else {
    if (a.points.empty()) throw ValidationError("cgp needs --points or --grid");
    const GroupModel g = parse_group(a.group);
    pts = io::parse_points(g, r.load(a.points), a.points);
    r.inputs["group"] = format_group(g);
  }
  CurveOptions opt;
  opt.mode = parse_cgp_mode(a.mode);
  opt.budget = a.budget;
  opt.subset_cap = a.subset_cap;
  opt.seed = c.seed;
  opt.workers = c.threads;
  r.inputs["C"] = a.C;
  r.inputs["tau"] = a.tau;
  r.inputs["mode"] = to_string(opt.mode);
  r.inputs["budget"] = a.budget;
  r.inputs["subset_cap"] = a.subset_cap;

  const CgpVerdict v = cgp_verdict(*pts, a.C, a.tau, opt);
  r.result["passed"] = v.passed;
  r.result["tau"] = v.tau;
  r.result["complexity"] = v.complexity;
  r.result["worst_count"] = v.worst_count;
  r.result["size"] = v.size;
  r.result["witness"] = v.witness ? io::poly_to_json(*v.witness) : Json(nullptr);
  r.result["mode"] = to_string(v.mode);
  r.result["iterations"] = json_or_null(v.iterations);
  r.result["partial"] = v.partial;
  r.result["exact"] = v.exact;
}

// ---- construct -----------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::string group = "multiplicative:1:2";
  std::string base;
  std::size_t M = 10;
  bool one_sided = false;
  long N = 1;
  std::string generator = "2,3,5,7";
  std::string filtration = "base";
  unsigned n = 1;
  unsigned check_max = 10;
  unsigned cf3_from = 0;
  bool materialize = false;
  std::vector<std::string> generators;
  std::size_t cap = 20'000'000;
  std::string points_out;
};

FiltrationSpec load_filtration(const std::string& source, Report& r) {
  if (source == "base" || source == "quaternion_order") return io::filtration_from_json(Json(source));
  return io::filtration_from_json(io::parse_json(r.load(source), source));
}

Json shape_json(const LevelShape& s) {
  Json bounds = Json::array();
  for (const auto& [slot, b] : s.bounds) bounds.push_back({{"slot", slot}, {"bound", io::integer_to_json(b)}});
  return {{"scale", io::rational_to_json(s.scale)}, {"bounds", bounds}};
}

void emit_points(const PointSet& s, const ConstructArgs& a, Report& r) {
  r.result["size"] = s.size();
  Json elems = Json::array();
  for (const auto& p : s.sorted()) elems.push_back(format_element(s.ambient(), p));
  r.result["group"] = format_group(s.ambient());
  r.result["elements"] = elems;
  if (!a.points_out.empty()) io::write_file(a.points_out, io::format_points(s));
}

void run_construct(const ConstructArgs& a, const Common& c, Report& r) {
  r.inputs["kind"] = a.kind;
  if (a.kind == "progression") {
    const GroupModel g = parse_group(a.group);
    if (a.base.empty()) throw ValidationError("progression needs --base");
    const GroupElement base = parse_element(g, a.base);
    r.inputs["group"] = format_group(g);
    r.inputs["base"] = format_element(g, base);
    r.inputs["M"] = a.M;
    r.inputs["one_sided"] = a.one_sided;
    emit_points(progression(g, base, a.M, a.one_sided ? ProgressionKind::one_sided : ProgressionKind::symmetric), a, r);
  } else if (a.kind == "quaternion") {
    const GroupModel g = quaternion_torus();
    std::vector<Rational> values;
    std::istringstream in(a.generator);
    for (std::string part; std::getline(in, part, ',');) values.push_back(parse_rational(part));
    const GroupElement gen = multiplicative_from_values(g, values);
    r.inputs["N"] = a.N;
    r.inputs["generator"] = format_element(g, gen);
    emit_points(quaternion_ball_image(g, a.N, gen), a, r);
  } else if (a.kind == "filtration") {
    const FiltrationSpec spec = load_filtration(a.filtration, r);
    r.inputs["filtration"] = spec.describe();
    r.inputs["n"] = a.n;
    r.inputs["check_max"] = a.check_max;
    r.inputs["cf3_from"] = a.cf3_from;
    r.inputs["materialize"] = a.materialize;
    r.result["filtration"] = spec.describe();
    r.result["level_size"] = io::integer_to_json(spec.level_size(a.n));
    r.result["shape"] = shape_json(spec.shape(a.n));
    Json axioms = Json::array();
    axioms.push_back(verdict_json(check_cf0_chain(spec, a.check_max)));
    axioms.push_back(verdict_json(check_cf1(spec, 1, a.check_max)));
    axioms.push_back(verdict_json(check_cf3_surrogate(spec, a.cf3_from, a.check_max)));
    r.result["axioms"] = axioms;
    if (a.materialize) {
      Json elems = Json::array();
      for (const auto& e : spec.level(a.n, a.cap)) elems.push_back(e.to_string());
      r.result["elements"] = elems;
    }
    r.csv_header = {"n", "level_size"};
    for (unsigned n = 0; n <= a.check_max; ++n) r.csv_rows.push_back({std::to_string(n), to_string(spec.level_size(n))});
  } else if (a.kind == "module") {
    const GroupModel g = parse_group(a.group);
    const FiltrationSpec spec = load_filtration(a.filtration, r);
    std::vector<GroupElement> gens;
    Json gen_json = Json::array();
    for (const auto& s : a.generators) {
      gens.push_back(parse_element(g, s));
      gen_json.push_back(format_element(g, gens.back()));
    }
    r.inputs["group"] = format_group(g);
    r.inputs["filtration"] = spec.describe();
    r.inputs["n"] = a.n;
    r.inputs["generators"] = gen_json;
    r.inputs["cap"] = a.cap;
    emit_points(approximate_module(g, spec, a.n, gens, a.cap, c.threads), a, r);
  } else {
    throw ValidationError("unknown construction \"" + a.kind + "\"");
  }
}

// ---- matroid -------------------------------------------------------------

struct MatroidArgs {
  std::string matroid;
  std::uint64_t samples = 200'000;
  std::size_t flat_cap = 4096;
  std::uint64_t node_budget = 2'000'000;
};

void run_matroid(const MatroidArgs& a, const Common& c, Report& r) {
  const RankOracle o = io::matroid_from_json(io::parse_json(r.load(a.matroid), a.matroid));
  r.inputs["samples"] = a.samples;
  r.inputs["flat_cap"] = a.flat_cap;
  r.inputs["node_budget"] = a.node_budget;
  r.result["n"] = o.size();
  r.result["backend"] = o.backend();
  r.result["rank"] = o.rank();

  const PregeometryVerdict p = check_pregeometry(o, c.seed, a.samples);
  Json pj;
  pj["holds"] = p.holds;
  pj["partial"] = p.partial;
  pj["checks"] = p.checks;
  if (!p.holds) {
    pj["failed_axiom"] = p.failed_axiom;
    pj["set"] = io::mask_to_json(p.set);
    pj["elements"] = p.elements;
  }
  r.result["pregeometry"] = pj;
  if (!p.holds) return;

  const Geometry g = Geometry::projectivize(o);
  Json classes = Json::array();
  for (Mask m : g.point_elements()) classes.push_back(io::mask_to_json(m));
  Json geo;
  geo["points"] = g.point_count();
  geo["lines"] = g.lines().size();
  geo["dimension"] = g.dimension();
  geo["point_elements"] = classes;
  r.result["geometry"] = geo;

  const ModularityVerdict m = check_modularity(g, a.flat_cap);
  Json mj;
  mj["holds"] = m.holds;
  mj["partial"] = m.partial;
  mj["flat_count"] = m.flat_count;
  mj["witness"] = m.witness ? Json::array({io::mask_to_json(m.witness->first), io::mask_to_json(m.witness->second)})
                            : Json(nullptr);
  r.result["modularity"] = mj;

  const VeblenVerdict v = check_veblen(g);
  r.result["veblen"] = {{"holds", v.holds}, {"witness", v.witness ? Json(*v.witness) : Json(nullptr)}};

  const PgRecognition pg = recognize_pg(g, a.node_budget);
  r.result["projective_space"] = {{"status", to_string(pg.status)}, {"q", pg.q}, {"m", pg.m},
                                  {"reason", pg.reason}, {"nodes", pg.nodes}};

  if (m.holds && !m.partial) {
    const Decomposition d = decompose_nonorthogonality(g);
    r.result["decomposition"] = {{"classes", d.classes}, {"transitive", d.transitive}};
  }
}

// ---- counterexample ------------------------------------------------------

struct CounterexampleArgs {
  unsigned N = 2;
  std::uint64_t samples = 100;
  std::string strategy = "auto";
  bool skip_cgp = false;
};

void run_counterexample(const CounterexampleArgs& a, const Common& c, Report& r) {
  const Strategy strategy = parse_strategy(a.strategy);
  r.inputs["N"] = a.N;
  r.inputs["samples"] = a.samples;
  r.inputs["strategy"] = to_string(strategy);
  r.inputs["skip_cgp"] = a.skip_cgp;
  const PointSet x = grid(a.N);
  const CountResult res = grid_star_count(a.N, {strategy, c.threads});
  const Integer square = Integer(static_cast<unsigned long>(x.size())) * static_cast<unsigned long>(x.size());
  r.result["N"] = a.N;
  r.result["size"] = x.size();
  r.result["count"] = res.count;
  r.result["strategy"] = to_string(res.strategy);
  r.result["ratio_to_square"] = io::rational_to_json(make_rational(Integer(str(res.count)), square));
  r.result["square_bound_holds"] = Integer(str(res.count)) * 36 >= square;
  r.result["vertical_line_count"] = vertical_line_count(a.N);
  if (!a.skip_cgp) {
    const LineMax lm = max_on_line(x);
    CurveOptions opt;
    opt.seed = c.seed;
    opt.workers = c.threads;
    const CgpVerdict v = cgp_verdict(x, 1, 6, opt);
    r.result["max_on_line"] = lm.count;
    r.result["cgp_verdict"] = {{"C", 1}, {"tau", 6}, {"passed", v.passed}, {"worst_count", v.worst_count}};
  }
  const Z22Verdict z = verify_z22(a.samples, c.seed);
  r.result["z22_ok"] = z.holds && z.expansion_a_equal && z.expansion_b_equal;
  r.result["z22"] = {{"samples", z.samples},
                     {"residual_a", io::rational_to_json(z.residual_a)},
                     {"residual_b", io::rational_to_json(z.residual_b)},
                     {"expansion_a_equal", z.expansion_a_equal},
                     {"expansion_b_equal", z.expansion_b_equal},
                     {"corrected_residual_a", io::rational_to_json(z.corrected_residual_a)},
                     {"corrected_holds", z.corrected_holds},
                     {"difference_a", io::poly_to_json(z.difference_a)}};
}

// ---- sumprod -------------------------------------------------------------

struct SumProdArgs {
  std::string construction = "interval";
  std::size_t size = 16;
  bool swap = false;
  std::string a = "0", b = "-2", px = "3", py = "5";
  std::size_t cap = 40;
};

void run_sumprod_cmd(const SumProdArgs& a, const Common& c, Report& r) {
  SumProdOptions opt;
  opt.construction = parse_construction(a.construction);
  opt.size = a.size;
  opt.swap = a.swap;
  opt.a = parse_rational(a.a);
  opt.b = parse_rational(a.b);
  opt.px = parse_rational(a.px);
  opt.py = parse_rational(a.py);
  opt.elliptic_cap = a.cap;
  opt.workers = c.threads;
  r.inputs["construction"] = to_string(opt.construction);
  r.inputs["size"] = a.size;
  r.inputs["swap"] = a.swap;
  if (opt.construction == SumProdConstruction::elliptic) {
    r.inputs["curve"] = {io::rational_to_json(opt.a), io::rational_to_json(opt.b)};
    r.inputs["generator"] = {io::rational_to_json(opt.px), io::rational_to_json(opt.py)};
    r.inputs["cap"] = a.cap;
  }
  const SumProdReport s = run_sumprod(opt);
  r.result["construction"] = s.construction;
  r.result["group1"] = s.group1;
  r.result["group2"] = s.group2;
  r.result["size"] = s.size;
  r.result["sum1"] = s.sum1;
  r.result["sum2"] = s.sum2;
  r.result["max"] = s.max;
  r.advisory["exponent"] = s.exponent ? Json(*s.exponent) : Json(nullptr);
  r.csv_header = {"construction", "|A|", "sum1", "sum2", "max", "exponent"};
  r.csv_rows.push_back({s.construction, str(s.size), str(s.sum1), str(s.sum2), str(s.max),
                        s.exponent ? io::format_double(*s.exponent) : ""});
}

// ---- incidences ----------------------------------------------------------

struct IncidenceArgs {
  std::string points;
  unsigned grid = 0;
  std::string lines;
};

void run_incidences(const IncidenceArgs& a, const Common&, Report& r) {
  const GroupModel plane = GroupModel::additive(2);
  PointSet pts(plane);
  if (a.grid > 0) {
    if (!a.points.empty()) throw ValidationError("--grid and --points are exclusive");
    for (unsigned x = 0; x < a.grid; ++x)
      for (unsigned y = 0; y < a.grid; ++y) pts.insert(GroupElement::additive({Rational(x), Rational(y)}));
    r.inputs["grid"] = a.grid;
  } else {
    if (a.points.empty()) throw ValidationError("incidences needs --points or --grid");
    pts = io::parse_points(plane, r.load(a.points), a.points);
  }
  const std::vector<Line> lines = io::parse_lines(r.load(a.lines), a.lines);
  const IncidenceResult res = point_line_incidences(pts, lines);
  r.result["points"] = pts.size();
  r.result["lines"] = lines.size();
  r.result["count"] = res.count;
  r.advisory["reference"] = res.reference;
}

// ---- driver --------------------------------------------------------------

using Handler = std::function<void(const Common&, Report&)>;

std::string render(const std::string& command, const Common& c, Report& r, double seconds) {
  if (c.format == "csv") return render_csv(r);
  Json inputs_for_digest = r.inputs;
  std::uint64_t digest = fnv1a(command);
  digest = fnv1a(inputs_for_digest.dump(), digest);
  digest = fnv1a(io::hex64(r.file_digest), digest);
  digest = fnv1a(std::to_string(c.seed), digest);
  Json report;
  report["tool"] = "espo";
  report["version"] = ESPO_VERSION;
  report["command"] = command;
  report["seed"] = c.seed;
  report["inputs_digest"] = io::hex64(digest);
  report["inputs"] = r.inputs;
  report["result"] = r.result;
  if (c.timing) r.advisory["wall_seconds"] = seconds;
  if (!r.advisory.empty()) report["advisory (floating)"] = r.advisory;
  return report.dump(2) + "\n";
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting experiments for subvarieties of algebraic groups", "espo"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ESPO_VERSION);
  app.set_config("--config", "", "TOML or INI file with option defaults; flags win");

  Common common;
  app.add_option("--seed", common.seed, "Global seed for randomized procedures");
  app.add_option("--threads", common.threads, "Worker count (0: ESPO_THREADS or hardware)");
  app.add_option("--format", common.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", common.out, "Write the report to this file");
  app.add_flag("--timing", common.timing, "Include wall time (advisory) in the report");

  std::string command;
  Handler handler;
  auto sub = [&](const char* name, const char* help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, &handler, name, h] {
      command = name;
      handler = h;
    });
    return s;
  };

  CountArgs count;
  CLI::App* s = sub("count", "Exact |V cap X_1 x ... x X_n|", [&](const Common& c, Report& r) { run_count(count, c, r); });
  s->add_option("--variety", count.variety, "Variety JSON")->required();
  s->add_option("--sets", count.sets, "Point files (one, or one per coordinate)")->required();
  s->add_option("--strategy", count.strategy, "brute, join or auto");
  s->add_option("--budget", count.budget, "Maximum enumerated tuples");
  s->add_option("--constant", count.constant, "Constant of the trivial bound check");

  FitArgs fit;
  s = sub("fit", "Exponent fit of counts against set size", [&](const Common& c, Report& r) { run_fit(fit, c, r); });
  s->add_option("--family", fit.family, "geometric or counterexample");
  s->add_option("--values", fit.values, "Parameters of the family");
  s->add_option("--samples", fit.samples, "CSV file with N,count rows");
  s->add_option("--power", fit.power, "Exponent of the bound N^power");

  CgpArgs cgp;
  s = sub("cgp", "Curve general position verdict", [&](const Common& c, Report& r) { run_cgp(cgp, c, r); });
  s->add_option("--points", cgp.points, "Point file");
  s->add_option("--group", cgp.group, "Group of the point file");
  s->add_option("--grid", cgp.grid, "Use the counterexample grid X_N");
  s->add_option("--C", cgp.C, "Curve degree");
  s->add_option("--tau", cgp.tau, "Exponent tau");
  s->add_option("--mode", cgp.mode, "exhaustive or heuristic");
  s->add_option("--budget", cgp.budget, "Random subsets in heuristic mode");
  s->add_option("--subset-cap", cgp.subset_cap, "Exhaustive subset limit");

  ConstructArgs con;
  s = sub("construct", "Build point sets and filtrations", [&](const Common& c, Report& r) { run_construct(con, c, r); });
  s->add_option("--kind", con.kind, "progression, quaternion, filtration or module")->required();
  s->add_option("--group", con.group, "Group");
  s->add_option("--base", con.base, "Progression base element");
  s->add_option("--M", con.M, "Progression length parameter");
  s->add_flag("--one-sided", con.one_sided, "Use {k * base : 0 <= k < M}");
  s->add_option("--N", con.N, "Quaternion ball radius");
  s->add_option("--generator", con.generator, "Quaternion generator values a,b,c,d");
  s->add_option("--filtration", con.filtration, "Filtration JSON file, or base / quaternion_order");
  s->add_option("--n", con.n, "Filtration level");
  s->add_option("--check-max", con.check_max, "Largest level checked against the axioms");
  s->add_option("--cf3-from", con.cf3_from, "First level of the growth check");
  s->add_flag("--materialize", con.materialize, "List the elements of level n");
  s->add_option("--generators", con.generators, "Module generators in point encoding");
  s->add_option("--cap", con.cap, "Element budget");
  s->add_option("--points-out", con.points_out, "Also write the points as a point file");

  MatroidArgs mat;
  s = sub("matroid", "Pregeometry, modularity and projective space checks",
          [&](const Common& c, Report& r) { run_matroid(mat, c, r); });
  s->add_option("--matroid", mat.matroid, "Matroid JSON")->required();
  s->add_option("--samples", mat.samples, "Random checks above the exhaustive limit");
  s->add_option("--flat-cap", mat.flat_cap, "Flat enumeration limit");
  s->add_option("--node-budget", mat.node_budget, "Recognition search limit");

  CounterexampleArgs cex;
  s = sub("counterexample", "Star-operation grid counts and the z22 identity",
          [&](const Common& c, Report& r) { run_counterexample(cex, c, r); });
  s->add_option("--N", cex.N, "Grid parameter");
  s->add_option("--samples", cex.samples, "Random tuples for the z22 check");
  s->add_option("--strategy", cex.strategy, "brute, join or auto");
  s->add_flag("--skip-cgp", cex.skip_cgp, "Skip the line and cgp checks");

  SumProdArgs sp;
  s = sub("sumprod", "Sumset sizes for the sum-product constructions",
          [&](const Common& c, Report& r) { run_sumprod_cmd(sp, c, r); });
  s->add_option("--construction", sp.construction, "interval, geometric or elliptic");
  s->add_option("--size", sp.size, "N, or M for the elliptic construction");
  s->add_flag("--swap", sp.swap, "Report the second pair first");
  s->add_option("--a", sp.a, "Curve coefficient a");
  s->add_option("--b", sp.b, "Curve coefficient b");
  s->add_option("--px", sp.px, "Generator x");
  s->add_option("--py", sp.py, "Generator y");
  s->add_option("--cap", sp.cap, "Largest elliptic M");

  IncidenceArgs inc;
  s = sub("incidences", "Point-line incidence count", [&](const Common& c, Report& r) { run_incidences(inc, c, r); });
  s->add_option("--points", inc.points, "Point file in additive:2");
  s->add_option("--grid", inc.grid, "Use the grid {0..N-1}^2");
  s->add_option("--lines", inc.lines, "Line file with A,B,C per line")->required();

  std::vector<std::string> argv_storage{"espo"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ESPO_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (common.threads > 0) set_default_workers(common.threads);
    Report report;
    const auto start = std::chrono::steady_clock::now();
    handler(common, report);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string text = render(command, common, report, seconds);
    if (common.out.empty())
      out << text;
    else
      io::write_file(common.out, text);
    return kExitOk;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << " (witness " << e.witness() << ")\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace espo::cli
