#include "espo/variety.hpp"

#include <algorithm>
#include <numeric>

#include "espo/errors.hpp"
#include "espo/parallel.hpp"

namespace espo {

std::string to_string(VarietyMode mode) {
  switch (mode) {
    case VarietyMode::poly: return "poly";
    case VarietyMode::lattice: return "lattice";
    case VarietyMode::graph: return "graph";
  }
  return "?";
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::brute: return "brute";
    case Strategy::join: return "join";
    case Strategy::auto_select: return "auto";
  }
  return "?";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "brute") return Strategy::brute;
  if (text == "join") return Strategy::join;
  if (text == "auto") return Strategy::auto_select;
  throw ValidationError("unknown strategy '" + std::string(text) + "'");
}

VarietySpec VarietySpec::poly(std::vector<GroupModel> ambient, std::vector<MultiPoly> constraints,
                              std::size_t declared_dimension) {
  VarietySpec v;
  v.mode_ = VarietyMode::poly;
  v.ambient_ = std::move(ambient);
  v.offsets_.push_back(0);
  for (const auto& g : v.ambient_) v.offsets_.push_back(v.offsets_.back() + affine_width(g));
  for (const auto& p : constraints)
    if (p.variables() != v.variable_count())
      throw DimensionError("constraint has " + std::to_string(p.variables()) + " variables, expected " +
                           std::to_string(v.variable_count()));
  v.polys_ = std::move(constraints);
  if (declared_dimension > v.ambient_dimension()) throw ValidationError("declared dimension exceeds ambient dimension");
  v.declared_dim_ = declared_dimension;
  return v;
}

VarietySpec VarietySpec::lattice(SpecialSubgroupSpec spec, std::optional<std::size_t> declared_dimension) {
  VarietySpec v;
  v.mode_ = VarietyMode::lattice;
  v.ambient_.assign(spec.factors, spec.group);
  v.subgroup_ = SpecialSubgroup::build(std::move(spec));
  v.declared_dim_ = declared_dimension.value_or(v.subgroup_->dimension());
  if (v.declared_dim_ > v.ambient_dimension()) throw ValidationError("declared dimension exceeds ambient dimension");
  return v;
}

VarietySpec VarietySpec::graph(GroupModel g, std::size_t arity, std::vector<GraphRelation> relations,
                               std::optional<std::size_t> declared_dimension) {
  VarietySpec v;
  v.mode_ = VarietyMode::graph;
  v.ambient_.assign(arity, g);
  for (const auto& r : relations) {
    if (r.target >= arity) throw DimensionError("graph relation target out of range");
    for (const auto& [i, e] : r.terms) {
      if (i >= arity) throw DimensionError("graph relation term out of range");
      e.validate(g);
    }
    if (r.constant) validate(g, *r.constant);
  }
  std::vector<bool> targeted(arity, false);
  std::size_t distinct = 0;
  for (const auto& r : relations)
    if (!targeted[r.target]) targeted[r.target] = true, ++distinct;
  v.relations_ = std::move(relations);
  v.declared_dim_ = declared_dimension.value_or(g.dimension() * (arity - distinct));
  if (v.declared_dim_ > v.ambient_dimension()) throw ValidationError("declared dimension exceeds ambient dimension");
  return v;
}

std::size_t VarietySpec::ambient_dimension() const {
  std::size_t d = 0;
  for (const auto& g : ambient_) d += g.dimension();
  return d;
}

const SpecialSubgroup& VarietySpec::subgroup() const {
  if (!subgroup_) throw ValidationError("variety is not in lattice mode");
  return *subgroup_;
}

namespace {

GroupElement evaluate_relation(const GroupModel& g, const GraphRelation& r, std::span<const GroupElement> tuple) {
  GroupElement acc = r.constant ? *r.constant : identity(g);
  for (const auto& [i, e] : r.terms) acc = group_add(g, acc, apply_endomorphism(g, e, tuple[i]));
  return acc;
}

std::vector<Rational> affine_tuple(const VarietySpec& v, std::span<const GroupElement> tuple, bool& ok) {
  std::vector<Rational> out;
  out.reserve(v.variable_count());
  ok = true;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (v.ambient()[i].kind() == GroupKind::elliptic && tuple[i].is_infinity()) {
      ok = false;
      return out;
    }
    auto a = affine_coordinates(v.ambient()[i], tuple[i]);
    out.insert(out.end(), a.begin(), a.end());
  }
  return out;
}

}  // namespace

bool VarietySpec::contains(std::span<const GroupElement> tuple) const {
  if (tuple.size() != arity()) throw DimensionError("tuple length does not match variety arity");
  switch (mode_) {
    case VarietyMode::poly: {
      for (std::size_t i = 0; i < tuple.size(); ++i) validate(ambient_[i], tuple[i]);
      bool ok;
      const auto point = affine_tuple(*this, tuple, ok);
      if (!ok) return false;
      for (const auto& p : polys_)
        if (p.evaluate(point) != 0) return false;
      return true;
    }
    case VarietyMode::lattice: return subgroup_->contains(tuple);
    case VarietyMode::graph: {
      const auto& g = ambient_.front();
      for (const auto& x : tuple) validate(g, x);
      for (const auto& r : relations_)
        if (!(evaluate_relation(g, r, tuple) == tuple[r.target])) return false;
      return true;
    }
  }
  return false;
}

std::string VarietySpec::describe() const {
  std::string out = to_string(mode_) + " variety of arity " + std::to_string(arity()) + ", dim " + std::to_string(declared_dim_);
  return out;
}

namespace {

// Solution of one polynomial variable: v = -(rest / alpha).
struct LinearSolve {
  MultiPoly alpha;
  MultiPoly rest;
};

struct JoinPlan {
  std::vector<std::size_t> free;
  std::vector<std::size_t> determined;
  // graph / lattice: relation used for each determined coordinate
  std::vector<GraphRelation> relations;
  std::vector<GraphRelation> checks;
  // poly: solutions per determined coordinate, one per affine variable
  std::vector<std::vector<LinearSolve>> solves;
  std::vector<std::size_t> leftover;
  // lattice mode without a connected kernel needs a final membership test
  bool membership_filter = false;
};

// p = alpha * x_var + rest with rest free of every variable in `blocked`.
// alpha is a single term; it may involve only unblocked variables that never
// vanish (coordinate values of multiplicative factors).
bool split_linear(const MultiPoly& p, std::size_t var, const std::vector<bool>& blocked,
                  const std::vector<bool>& nonzero, LinearSolve& out) {
  if (p.degree_in(var) != 1) return false;
  MultiPoly rest(p.variables());
  std::optional<MultiPoly> alpha;
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 1) {
      if (alpha) return false;
      Exponents cofactor = e;
      cofactor[var] = 0;
      for (std::size_t k = 0; k < e.size(); ++k)
        if (cofactor[k] && (blocked[k] || !nonzero[k])) return false;
      alpha = MultiPoly::monomial(c, std::move(cofactor));
      continue;
    }
    for (std::size_t k = 0; k < e.size(); ++k)
      if (e[k] && blocked[k]) return false;
    rest.add_term(c, e);
  }
  if (!alpha) return false;
  out = {std::move(*alpha), std::move(rest)};
  return true;
}

// Greedy solve in the given coordinate order. A solution may only use
// coordinates solved later, so determined coordinates are evaluated in reverse.
std::optional<JoinPlan> plan_poly(const VarietySpec& v, const std::vector<std::size_t>& order) {
  const std::size_t n = v.arity();
  const std::size_t vars = v.variable_count();
  std::vector<bool> blocked(vars, false);
  std::vector<bool> used(v.polynomials().size(), false);
  std::vector<std::optional<std::vector<LinearSolve>>> solved(n);
  std::vector<bool> nonzero(vars, false);
  for (std::size_t c = 0; c < n; ++c)
    if (v.ambient()[c].kind() == GroupKind::multiplicative)
      for (std::size_t var = v.variable_offset(c); var < v.variable_offset(c + 1); ++var) nonzero[var] = true;
  std::vector<std::size_t> sequence;
  for (const std::size_t c : order) {
    const std::size_t lo = v.variable_offset(c), hi = v.variable_offset(c + 1);
    if (lo == hi) continue;
    // Constraints already assigned must not mention coordinate c.
    bool clash = false;
    for (std::size_t k = 0; k < v.polynomials().size() && !clash; ++k)
      if (used[k])
        for (std::size_t var = lo; var < hi; ++var)
          if (v.polynomials()[k].depends_on(var)) clash = true;
    if (clash) continue;
    auto trial = blocked;
    for (std::size_t var = lo; var < hi; ++var) trial[var] = true;
    std::vector<LinearSolve> solves;
    std::vector<std::size_t> picks;
    for (std::size_t var = lo; var < hi; ++var) {
      bool found = false;
      for (std::size_t k = 0; k < v.polynomials().size(); ++k) {
        if (used[k] || std::find(picks.begin(), picks.end(), k) != picks.end()) continue;
        LinearSolve s;
        if (split_linear(v.polynomials()[k], var, trial, nonzero, s)) {
          solves.push_back(std::move(s));
          picks.push_back(k);
          found = true;
          break;
        }
      }
      if (!found) break;
    }
    if (picks.size() != hi - lo) continue;
    for (auto k : picks) used[k] = true;
    blocked = trial;
    solved[c] = std::move(solves);
    sequence.push_back(c);
  }
  if (sequence.empty()) return std::nullopt;
  JoinPlan plan;
  for (std::size_t c = 0; c < n; ++c)
    if (!solved[c]) plan.free.push_back(c);
  for (auto it = sequence.rbegin(); it != sequence.rend(); ++it) {
    plan.determined.push_back(*it);
    plan.solves.push_back(std::move(*solved[*it]));
  }
  for (std::size_t k = 0; k < used.size(); ++k)
    if (!used[k]) plan.leftover.push_back(k);
  return plan;
}

std::optional<JoinPlan> plan_graph(const VarietySpec& v) {
  const std::size_t n = v.arity();
  std::vector<bool> is_target(n, false);
  for (const auto& r : v.relations()) is_target[r.target] = true;
  JoinPlan plan;
  std::vector<bool> done(n, false);
  for (std::size_t c = 0; c < n; ++c)
    if (!is_target[c]) done[c] = true;
  for (const auto& r : v.relations()) {
    for (const auto& [i, e] : r.terms)
      if (!done[i]) return std::nullopt;
    if (done[r.target]) {
      plan.checks.push_back(r);
    } else {
      done[r.target] = true;
      plan.determined.push_back(r.target);
      plan.relations.push_back(r);
    }
  }
  for (std::size_t c = 0; c < n; ++c)
    if (!is_target[c]) plan.free.push_back(c);
  if (plan.determined.empty()) return std::nullopt;
  return plan;
}

std::optional<JoinPlan> plan_lattice(const VarietySpec& v) {
  const auto& h = v.subgroup();
  const auto& rows = h.spec().relations;
  const auto& g = h.group();
  const std::size_t n = h.factors();
  std::vector<bool> pivot_taken(n, false);
  JoinPlan plan;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::optional<std::size_t> pivot;
    int sign = 0;
    for (std::size_t j = 0; j < n && !pivot; ++j) {
      int s;
      if (pivot_taken[j] || !rows[i][j].is_unit_scalar(s)) continue;
      bool alone = true;
      for (std::size_t other = 0; other < rows.size(); ++other)
        if (other != i && !rows[other][j].is_zero()) alone = false;
      if (alone) pivot = j, sign = s;
    }
    if (!pivot) return std::nullopt;
    pivot_taken[*pivot] = true;
    // sign * x_p + sum_{k != p} A_k x_k = 0  =>  x_p = sum_k (-sign A_k) x_k
    GraphRelation r;
    r.target = *pivot;
    for (std::size_t k = 0; k < n; ++k)
      if (k != *pivot && !rows[i][k].is_zero())
        r.terms.emplace_back(k, sign > 0 ? -rows[i][k] : rows[i][k]);
    plan.determined.push_back(*pivot);
    plan.relations.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < n; ++j)
    if (!pivot_taken[j]) plan.free.push_back(j);
  if (plan.determined.empty()) return std::nullopt;
  plan.membership_filter = g.kind() != GroupKind::additive && !h.kernel_connected();
  return plan;
}

std::optional<JoinPlan> make_plan(const VarietySpec& v) {
  switch (v.mode()) {
    case VarietyMode::poly: {
      std::vector<std::size_t> order(v.arity());
      std::iota(order.rbegin(), order.rend(), 0);
      auto best = plan_poly(v, order);
      std::reverse(order.begin(), order.end());
      auto ascending = plan_poly(v, order);
      if (ascending && (!best || ascending->free.size() < best->free.size())) best = std::move(ascending);
      return best;
    }
    case VarietyMode::lattice: return plan_lattice(v);
    case VarietyMode::graph: return plan_graph(v);
  }
  return std::nullopt;
}

std::uint64_t checked_product(const std::vector<std::size_t>& coords, std::span<const PointSet> sets, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (auto c : coords) {
    const std::uint64_t s = sets[c].size();
    if (s == 0) return 0;
    if (total > budget / s) throw BudgetError("enumeration exceeds the budget of " + std::to_string(budget) + " tuples");
    total *= s;
  }
  return total;
}

// Enumerates the product of the sets at `coords`, calling visit(tuple) with
// those coordinates filled in; partitioned over the first coordinate.
template <class Visit>
std::uint64_t enumerate(std::size_t arity, const std::vector<std::size_t>& coords, std::span<const PointSet> sets,
                        unsigned workers, Visit visit) {
  if (coords.empty()) {
    std::vector<GroupElement> tuple(arity);
    return visit(tuple, std::vector<std::size_t>{}) ? 1 : 0;
  }
  const std::size_t first = sets[coords[0]].size();
  const std::size_t blocks = std::min<std::size_t>(first, 64 * std::max(1u, resolve_workers(workers)));
  auto counts = parallel_map<std::uint64_t>(blocks, workers, [&](std::size_t b) {
    const std::size_t lo = first * b / blocks, hi = first * (b + 1) / blocks;
    std::vector<GroupElement> tuple(arity);
    std::vector<std::size_t> idx(coords.size(), 0);
    std::uint64_t local = 0;
    for (std::size_t i0 = lo; i0 < hi; ++i0) {
      idx[0] = i0;
      tuple[coords[0]] = sets[coords[0]][i0];
      for (std::size_t k = 1; k < coords.size(); ++k) {
        idx[k] = 0;
        tuple[coords[k]] = sets[coords[k]][0];
      }
      while (true) {
        if (visit(tuple, idx)) ++local;
        std::size_t pos = coords.size() - 1;
        while (pos >= 1) {
          if (++idx[pos] < sets[coords[pos]].size()) break;
          idx[pos] = 0;
          tuple[coords[pos]] = sets[coords[pos]][0];
          --pos;
        }
        if (pos == 0) break;
        tuple[coords[pos]] = sets[coords[pos]][idx[pos]];
      }
    }
    return local;
  });
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

}  // namespace

bool join_available(const VarietySpec& v) { return make_plan(v).has_value(); }

CountResult count_intersection(const VarietySpec& v, std::span<const PointSet> sets, const CountOptions& options) {
  if (sets.size() != v.arity())
    throw DimensionError("expected " + std::to_string(v.arity()) + " sets, got " + std::to_string(sets.size()));
  for (std::size_t i = 0; i < sets.size(); ++i)
    if (!(sets[i].ambient() == v.ambient()[i]))
      throw ValidationError("set " + std::to_string(i) + " lives in " + sets[i].ambient().describe() + ", expected " +
                            v.ambient()[i].describe());

  std::optional<JoinPlan> plan;
  if (options.strategy != Strategy::brute) {
    plan = make_plan(v);
    if (!plan && options.strategy == Strategy::join)
      throw StrategyError("no constraint of this " + to_string(v.mode()) + " variety is solvable for a coordinate");
  }

  CountResult result;
  const std::size_t n = v.arity();
  if (!plan) {
    result.strategy = Strategy::brute;
    result.free_coordinates.resize(n);
    std::iota(result.free_coordinates.begin(), result.free_coordinates.end(), 0);
    result.enumerated = checked_product(result.free_coordinates, sets, options.budget);
    if (result.enumerated == 0) return result;
    result.count = enumerate(n, result.free_coordinates, sets, options.workers,
                             [&](const std::vector<GroupElement>& t, const std::vector<std::size_t>&) { return v.contains(t); });
    return result;
  }

  result.strategy = Strategy::join;
  result.free_coordinates = plan->free;
  for (std::size_t i = 0; i < n; ++i)
    if (sets[i].empty()) return result;
  result.enumerated = checked_product(plan->free, sets, options.budget);

  if (v.mode() == VarietyMode::poly) {
    // Affine coordinates of every candidate, computed once.
    std::vector<std::vector<std::vector<Rational>>> affine(n);
    std::vector<std::vector<bool>> finite(n);
    for (auto c : plan->free)
      for (const auto& e : sets[c]) {
        const bool inf = v.ambient()[c].kind() == GroupKind::elliptic && e.is_infinity();
        finite[c].push_back(!inf);
        affine[c].push_back(inf ? std::vector<Rational>{} : affine_coordinates(v.ambient()[c], e));
      }
    result.count = enumerate(n, plan->free, sets, options.workers,
                             [&](std::vector<GroupElement>&, const std::vector<std::size_t>& idx) {
                               std::vector<Rational> point(v.variable_count());
                               for (std::size_t k = 0; k < plan->free.size(); ++k) {
                                 const auto c = plan->free[k];
                                 if (!finite[c][idx[k]]) return false;
                                 std::copy(affine[c][idx[k]].begin(), affine[c][idx[k]].end(),
                                           point.begin() + v.variable_offset(c));
                               }
                               for (std::size_t d = 0; d < plan->determined.size(); ++d) {
                                 const auto c = plan->determined[d];
                                 std::vector<Rational> values;
                                 for (const auto& s : plan->solves[d]) values.push_back(-s.rest.evaluate(point) / s.alpha.evaluate(point));
                                 GroupElement e;
                                 if (!element_from_affine(v.ambient()[c], values, e) || !sets[c].contains(e)) return false;
                                 std::copy(values.begin(), values.end(), point.begin() + v.variable_offset(c));
                               }
                               for (auto k : plan->leftover)
                                 if (v.polynomials()[k].evaluate(point) != 0) return false;
                               return true;
                             });
    return result;
  }

  const GroupModel& g = v.ambient().front();
  result.count = enumerate(n, plan->free, sets, options.workers,
                           [&](std::vector<GroupElement>& tuple, const std::vector<std::size_t>&) {
                             for (std::size_t d = 0; d < plan->determined.size(); ++d) {
                               GroupElement e = evaluate_relation(g, plan->relations[d], tuple);
                               if (!sets[plan->determined[d]].contains(e)) return false;
                               tuple[plan->determined[d]] = std::move(e);
                             }
                             for (const auto& r : plan->checks)
                               if (!(evaluate_relation(g, r, tuple) == tuple[r.target])) return false;
                             if (plan->membership_filter && !v.subgroup().contains(tuple)) return false;
                             return true;
                           });
  return result;
}

}  // namespace espo
