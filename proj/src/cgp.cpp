#include "espo/cgp.hpp"

#include <algorithm>
#include <map>

#include "espo/errors.hpp"
#include "espo/matrix.hpp"
#include "espo/parallel.hpp"
#include "espo/random.hpp"

namespace espo {

std::string to_string(CgpMode mode) { return mode == CgpMode::exhaustive ? "exhaustive" : "heuristic"; }

CgpMode parse_cgp_mode(std::string_view text) {
  if (text == "exhaustive") return CgpMode::exhaustive;
  if (text == "heuristic") return CgpMode::heuristic;
  throw ValidationError("unknown cgp mode '" + std::string(text) + "'");
}

std::vector<std::vector<Rational>> cgp_coordinates(const PointSet& points) {
  const auto& g = points.ambient();
  if (g.kind() == GroupKind::elliptic) throw ValidationError("general position checks need an additive or multiplicative ambient");
  std::vector<std::vector<Rational>> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(affine_coordinates(g, p));
  return out;
}

LineMax max_on_line(const PointSet& points) {
  if (points.size() < 2) throw InsufficientDataError("max_on_line needs at least two points");
  const auto xy = cgp_coordinates(points);
  if (points.ambient().dimension() != 2) throw ValidationError("max_on_line needs points in a plane");
  LineMax best;
  for (std::size_t i = 0; i + 1 < xy.size(); ++i) {
    // Slopes from point i to every later point; vertical directions keyed separately.
    std::map<Rational, std::pair<std::uint64_t, std::size_t>> slopes;
    std::uint64_t vertical = 0;
    std::size_t vertical_j = 0;
    for (std::size_t j = i + 1; j < xy.size(); ++j) {
      const Rational dx = xy[j][0] - xy[i][0];
      if (dx == 0) {
        if (vertical++ == 0) vertical_j = j;
        continue;
      }
      auto [it, fresh] = slopes.try_emplace((xy[j][1] - xy[i][1]) / dx, 0, j);
      ++it->second.first;
    }
    auto consider = [&](std::uint64_t c, std::size_t j) {
      if (c + 1 > best.count) {
        best.count = c + 1;
        best.line = line_through(xy[i][0], xy[i][1], xy[j][0], xy[j][1]);
      }
    };
    if (vertical) consider(vertical, vertical_j);
    for (const auto& [slope, entry] : slopes) consider(entry.first, entry.second);
  }
  return best;
}

namespace {

struct Overflow {};

struct Int128Ops {
  using T = __int128;
  static T mul(T a, T b) {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T sub(T a, T b) {
    T r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static T gcd(T a, T b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      T t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
};

struct BigOps {
  using T = Integer;
  static T mul(const T& a, const T& b) { return a * b; }
  static T sub(const T& a, const T& b) { return a - b; }
  static T gcd(const T& a, const T& b) { return ::gcd(a, b); }
};

// Fraction-free row echelon basis supporting push/pop for depth-first search.
template <class Ops>
class Echelon {
 public:
  using T = typename Ops::T;
  explicit Echelon(std::size_t cols) : cols_(cols) {}

  bool push(std::vector<T> row) {
    reduce(row);
    for (std::size_t c = 0; c < cols_; ++c)
      if (row[c] != 0) {
        rows_.push_back(std::move(row));
        pivots_.push_back(c);
        added_.push_back(true);
        return true;
      }
    added_.push_back(false);
    return false;
  }

  void pop() {
    if (added_.back()) rows_.pop_back(), pivots_.pop_back();
    added_.pop_back();
  }

  bool in_span(std::vector<T> row) const {
    reduce(row);
    return std::all_of(row.begin(), row.end(), [](const T& v) { return v == 0; });
  }

 private:
  void reduce(std::vector<T>& row) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::size_t c = pivots_[i];
      if (row[c] == 0) continue;
      const T a = rows_[i][c], b = row[c];
      T g = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        row[k] = Ops::sub(Ops::mul(a, row[k]), Ops::mul(b, rows_[i][k]));
        g = Ops::gcd(g, row[k]);
      }
      if (g > 1)
        for (auto& v : row) v /= g;
    }
  }

  std::size_t cols_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<bool> added_;
};

// Evaluation rows scaled to primitive integer vectors.
std::vector<std::vector<Integer>> evaluation_rows(const std::vector<std::vector<Rational>>& pts,
                                                  const std::vector<Exponents>& monomials) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& p : pts) {
    std::vector<Rational> r;
    Integer den = 1;
    for (const auto& e : monomials) {
      Rational v = 1;
      for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k]) v *= pow(p[k], static_cast<long>(e[k]));
      den = lcm(den, Integer(v.get_den()));
      r.push_back(std::move(v));
    }
    std::vector<Integer> ints;
    Integer g = 0;
    for (const auto& v : r) {
      ints.emplace_back(v * den);
      g = gcd(g, ints.back());
    }
    if (g > 1)
      for (auto& v : ints) v /= g;
    rows.push_back(std::move(ints));
  }
  return rows;
}

struct Best {
  std::uint64_t count = 0;
  std::vector<std::size_t> subset;
};

bool better(const Best& a, const Best& b) { return a.count > b.count; }

template <class Ops>
std::vector<std::vector<typename Ops::T>> convert_rows(const std::vector<std::vector<Integer>>& rows) {
  std::vector<std::vector<typename Ops::T>> out;
  for (const auto& r : rows) {
    std::vector<typename Ops::T> v;
    for (const auto& x : r) {
      if constexpr (std::is_same_v<typename Ops::T, Integer>) {
        v.push_back(x);
      } else {
        if (!x.fits_slong_p()) throw Overflow{};
        v.push_back(static_cast<__int128>(x.get_si()));
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

template <class Ops>
std::uint64_t closure_size(const Echelon<Ops>& ech, const std::vector<std::vector<typename Ops::T>>& rows) {
  std::uint64_t c = 0;
  for (const auto& r : rows)
    if (ech.in_span(r)) ++c;
  return c;
}

template <class Ops>
Best exhaustive_search(const std::vector<std::vector<Integer>>& int_rows, std::size_t k, std::size_t cols, unsigned workers) {
  const auto rows = convert_rows<Ops>(int_rows);
  const std::size_t n = rows.size();
  const std::size_t tasks = n - k + 1;
  auto parts = parallel_map<Best>(tasks, workers, [&](std::size_t first) {
    Best best;
    Echelon<Ops> ech(cols);
    std::vector<std::size_t> chosen{first};
    ech.push(rows[first]);
    // Depth-first over increasing index tuples starting at `first`.
    std::vector<std::size_t> next{first + 1};
    while (!next.empty()) {
      if (chosen.size() == k) {
        const std::uint64_t c = closure_size(ech, rows);
        if (c > best.count) best = {c, chosen};
        ech.pop();
        chosen.pop_back();
        next.pop_back();
        continue;
      }
      std::size_t& j = next.back();
      if (j + (k - chosen.size()) > n) {
        ech.pop();
        chosen.pop_back();
        next.pop_back();
        continue;
      }
      chosen.push_back(j);
      ech.push(rows[j]);
      ++j;
      next.push_back(chosen.back() + 1);
    }
    return best;
  });
  Best best;
  for (auto& p : parts)
    if (better(p, best)) best = std::move(p);
  return best;
}

template <class Ops>
Best scheduled_search(const std::vector<std::vector<Integer>>& int_rows, const std::vector<std::vector<std::size_t>>& schedule,
                      std::size_t cols, unsigned workers) {
  const auto rows = convert_rows<Ops>(int_rows);
  const std::size_t blocks = std::max<std::size_t>(1, std::min<std::size_t>(schedule.size(), 256));
  auto parts = parallel_map<Best>(blocks, workers, [&](std::size_t b) {
    Best best;
    const std::size_t lo = schedule.size() * b / blocks, hi = schedule.size() * (b + 1) / blocks;
    for (std::size_t s = lo; s < hi; ++s) {
      Echelon<Ops> ech(cols);
      for (auto i : schedule[s]) ech.push(rows[i]);
      const std::uint64_t c = closure_size(ech, rows);
      if (c > best.count) best = {c, schedule[s]};
    }
    return best;
  });
  Best best;
  for (auto& p : parts)
    if (better(p, best)) best = std::move(p);
  return best;
}

template <class F>
Best with_fallback(F&& f) {
  try {
    return f(Int128Ops{});
  } catch (const Overflow&) {
    return f(BigOps{});
  }
}

MultiPoly kernel_curve(const std::vector<std::vector<Rational>>& pts, const std::vector<std::size_t>& subset,
                       const std::vector<Exponents>& monomials, std::size_t vars) {
  RatMatrix m(subset.size(), monomials.size());
  for (std::size_t r = 0; r < subset.size(); ++r)
    for (std::size_t c = 0; c < monomials.size(); ++c) {
      Rational v = 1;
      for (std::size_t k = 0; k < vars; ++k)
        if (monomials[c][k]) v *= pow(pts[subset[r]][k], static_cast<long>(monomials[c][k]));
      m(r, c) = v;
    }
  const auto ker = subset.empty() ? KernelBasis{0, {}} : rational_kernel(m);
  MultiPoly p(vars);
  if (subset.empty() || ker.basis.empty()) {
    // No constraints: any non-constant monomial of degree 1 serves.
    p.add_term(1, monomials.back());
    return p;
  }
  for (std::size_t c = 0; c < monomials.size(); ++c) p.add_term(ker.basis.front()[c], monomials[c]);
  return p;
}

}  // namespace

CurveMax max_on_curve(const PointSet& points, unsigned degree, const CurveOptions& options) {
  if (degree < 1) throw ValidationError("curve degree must be at least 1");
  const auto pts = cgp_coordinates(points);
  const std::size_t vars = points.ambient().dimension();
  const auto monomials = monomials_up_to(vars, degree);
  const std::size_t k = monomials.size() - 1;
  CurveMax out;
  const std::size_t n = pts.size();
  if (n <= k) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    out.count = n;
    out.subset = all;
    out.witness = kernel_curve(pts, all, monomials, vars);
    out.subsets_examined = 1;
    return out;
  }
  const auto rows = evaluation_rows(pts, monomials);
  Best best;
  if (options.mode == CgpMode::exhaustive) {
    Integer subsets;
    mpz_bin_uiui(subsets.get_mpz_t(), n, k);
    if (subsets > Integer(static_cast<unsigned long>(options.subset_cap)))
      throw BudgetError("exhaustive curve search needs " + to_string(subsets) + " subsets, above the cap " +
                        std::to_string(options.subset_cap) + "; use heuristic mode");
    out.subsets_examined = subsets.get_ui();
    best = with_fallback([&](auto ops) { return exhaustive_search<decltype(ops)>(rows, k, monomials.size(), options.workers); });
  } else {
    TaskRng rng(options.seed, "cgp/max_on_curve");
    std::vector<std::vector<std::size_t>> schedule;
    schedule.reserve(options.budget);
    for (std::uint64_t s = 0; s < options.budget; ++s) {
      // Floyd's sampling of k distinct indices.
      std::vector<std::size_t> pick;
      for (std::size_t j = n - k; j < n; ++j) {
        const std::size_t t = rng.below(j + 1);
        if (std::find(pick.begin(), pick.end(), t) == pick.end())
          pick.push_back(t);
        else
          pick.push_back(j);
      }
      std::sort(pick.begin(), pick.end());
      schedule.push_back(std::move(pick));
    }
    out.exact = false;
    out.subsets_examined = options.budget;
    best = with_fallback([&](auto ops) { return scheduled_search<decltype(ops)>(rows, schedule, monomials.size(), options.workers); });
  }
  out.count = best.count;
  out.subset = best.subset;
  if (!best.subset.empty()) out.witness = kernel_curve(pts, best.subset, monomials, vars);
  return out;
}

CgpVerdict cgp_verdict(const PointSet& points, unsigned C, unsigned tau, const CurveOptions& options) {
  if (C < 1) throw ValidationError("complexity bound C must be at least 1");
  if (tau < 1) throw ValidationError("tau must be at least 1");
  CgpVerdict v;
  v.tau = tau;
  v.complexity = C;
  v.size = points.size();
  v.mode = options.mode;
  if (options.mode == CgpMode::heuristic) {
    v.iterations = options.budget;
    v.seed = options.seed;
  }
  const std::size_t dim = points.ambient().dimension();
  const bool one_dim = points.ambient().kind() == GroupKind::elliptic || dim == 1;
  if (one_dim) {
    // Proper subvarieties of a curve are finite sets of points.
    v.worst_count = points.empty() ? 0 : 1;
  } else if (points.size() <= 1) {
    v.worst_count = points.size();
  } else {
    v.partial = dim >= 3;
    std::optional<MultiPoly> witness;
    if (dim == 2) {
      const auto line = max_on_line(points);
      v.worst_count = line.count;
      MultiPoly w(2);
      w.add_term(line.line.a, {1, 0});
      w.add_term(line.line.b, {0, 1});
      w.add_term(line.line.c, {0, 0});
      witness = w;
    }
    // Degree-C hypersurfaces include every lower degree.
    if (dim != 2 || C >= 2) {
      const auto curve = max_on_curve(points, C, options);
      v.exact = curve.exact;
      if (curve.count > v.worst_count) {
        v.worst_count = curve.count;
        witness = curve.witness;
      }
    }
    v.witness = witness;
  }
  const Integer lhs = pow(Integer(static_cast<unsigned long>(v.worst_count)), static_cast<unsigned long>(tau));
  v.passed = lhs <= Integer(static_cast<unsigned long>(v.size));
  if (v.passed) v.witness.reset();
  return v;
}

}  // namespace espo
