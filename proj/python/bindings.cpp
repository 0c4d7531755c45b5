#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "espo/counterexample.hpp"
#include "espo/errors.hpp"
#include "espo/incidence.hpp"
#include "espo/special_subgroup.hpp"
#include "espo/sumprod.hpp"
#include "io.hpp"

namespace py = pybind11;
using namespace espo;

namespace {

py::object py_int(const Integer& z) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(z.get_str().c_str(), nullptr, 10));
}

py::object py_fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(to_string(q));
}

py::dict count_variety(const std::string& variety_json, const std::vector<std::vector<std::string>>& sets,
                       const std::string& strategy, unsigned workers, std::uint64_t budget) {
  const VarietySpec v = io::variety_from_json(io::parse_json(variety_json, "variety"));
  if (sets.size() != v.arity()) throw DimensionError("expected one point list per coordinate");
  std::vector<PointSet> points;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    PointSet s(v.ambient()[i]);
    for (const auto& line : sets[i]) s.insert(parse_element(v.ambient()[i], line));
    points.push_back(std::move(s));
  }
  const Strategy st = parse_strategy(strategy);
  CountResult r;
  {
    py::gil_scoped_release release;
    r = count_intersection(v, points, {st, workers, budget});
  }
  py::dict d;
  d["count"] = r.count;
  d["strategy"] = to_string(r.strategy);
  d["free_coordinates"] = r.free_coordinates;
  d["enumerated"] = r.enumerated;
  return d;
}

}  // namespace

PYBIND11_MODULE(_espo, m) {
  m.doc() = "Exact counting on finite subsets of algebraic groups";
  m.attr("__version__") = ESPO_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run_command(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a CLI subcommand in process; returns (exit_code, stdout, stderr).");

  m.def("count", &count_variety, py::arg("variety_json"), py::arg("sets"), py::arg("strategy") = "auto",
        py::arg("workers") = 0u, py::arg("budget") = std::uint64_t{200'000'000},
        "Exact intersection count of a variety (JSON text) with a product of point lists.");

  m.def(
      "grid_star_count",
      [](unsigned N, const std::string& strategy, unsigned workers) {
        const Strategy st = parse_strategy(strategy);
        py::gil_scoped_release release;
        return grid_star_count(N, {st, workers}).count;
      },
      py::arg("N"), py::arg("strategy") = "auto", py::arg("workers") = 0u);

  m.def(
      "verify_z22",
      [](std::uint64_t samples, std::uint64_t seed) {
        Z22Verdict v;
        {
          py::gil_scoped_release release;
          v = verify_z22(samples, seed);
        }
        py::dict d;
        d["holds"] = v.holds;
        d["residual_a"] = py_fraction(v.residual_a);
        d["residual_b"] = py_fraction(v.residual_b);
        d["expansion_a_equal"] = v.expansion_a_equal;
        d["expansion_b_equal"] = v.expansion_b_equal;
        d["corrected_holds"] = v.corrected_holds;
        d["corrected_residual_a"] = py_fraction(v.corrected_residual_a);
        d["difference_a"] = v.difference_a.to_string();
        return d;
      },
      py::arg("samples") = 100, py::arg("seed") = 0);

  m.def(
      "sumprod",
      [](const std::string& construction, std::size_t size, bool swap) {
        SumProdOptions opt;
        opt.construction = parse_construction(construction);
        opt.size = size;
        opt.swap = swap;
        SumProdReport r;
        {
          py::gil_scoped_release release;
          r = run_sumprod(opt);
        }
        py::dict d;
        d["construction"] = r.construction;
        d["size"] = r.size;
        d["sum1"] = r.sum1;
        d["sum2"] = r.sum2;
        d["max"] = r.max;
        d["exponent"] = r.exponent ? py::cast(*r.exponent) : py::none();
        return d;
      },
      py::arg("construction") = "interval", py::arg("size") = 16, py::arg("swap") = false);

  m.def(
      "elliptic_multiple",
      [](const std::string& a, const std::string& b, const std::string& x, const std::string& y,
         long k) -> py::object {
        const GroupModel e = GroupModel::elliptic(parse_rational(a), parse_rational(b));
        const GroupElement p = GroupElement::affine(parse_rational(x), parse_rational(y));
        validate(e, p);
        const GroupElement q = scalar_mul(e, k, p);
        if (q.is_infinity()) return py::none();
        return py::make_tuple(py_fraction(q.point().x), py_fraction(q.point().y));
      },
      py::arg("a"), py::arg("b"), py::arg("x"), py::arg("y"), py::arg("k"),
      "k * (x, y) on y^2 = x^3 + a x + b; None for the point at infinity.");

  m.def(
      "subgroup_dimension",
      [](const std::string& spec_json) {
        return subgroup_dimension(build_special_subgroup(io::subgroup_from_json(io::parse_json(spec_json, "subgroup"))));
      },
      py::arg("spec_json"));

  m.def(
      "filtration_level_size",
      [](const std::string& spec_json, unsigned n) {
        return py_int(io::filtration_from_json(io::parse_json(spec_json, "filtration")).level_size(n));
      },
      py::arg("spec_json"), py::arg("n"));

  m.def(
      "point_line_incidences",
      [](const std::vector<std::pair<std::string, std::string>>& points,
         const std::vector<std::tuple<std::string, std::string, std::string>>& lines) {
        PointSet p(GroupModel::additive(2));
        for (const auto& [x, y] : points) p.insert(GroupElement::additive({parse_rational(x), parse_rational(y)}));
        std::vector<Line> ls;
        for (const auto& [a, b, c] : lines) ls.push_back({parse_rational(a), parse_rational(b), parse_rational(c)});
        return point_line_incidences(p, ls).count;
      },
      py::arg("points"), py::arg("lines"));
}
