#include "espo/matroid.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <set>

#include "espo/errors.hpp"
#include "espo/finite_field.hpp"
#include "espo/random.hpp"

namespace espo {

std::vector<std::size_t> mask_elements(Mask m) {
  std::vector<std::size_t> out;
  while (m) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

Mask mask_of(const std::vector<std::size_t>& elements) {
  Mask m = 0;
  for (auto e : elements) {
    if (e >= 64) throw ValidationError("element index " + std::to_string(e) + " out of range");
    m |= Mask{1} << e;
  }
  return m;
}

namespace {

constexpr std::size_t kTableLimit = 20;

unsigned popcount(Mask m) { return static_cast<unsigned>(std::popcount(m)); }

}  // namespace

RankOracle RankOracle::custom(std::size_t n, std::string backend, std::function<unsigned(Mask)> rank) {
  if (n > 64) throw ValidationError("ground sets are limited to 64 elements");
  RankOracle o;
  o.n_ = n;
  o.backend_ = std::move(backend);
  o.fn_ = std::move(rank);
  return o;
}

RankOracle RankOracle::table(std::size_t n, std::vector<unsigned> ranks) {
  if (n > kTableLimit) throw ValidationError("rank tables are limited to 20 elements");
  if (ranks.size() != (std::size_t{1} << n))
    throw ValidationError("rank table needs 2^" + std::to_string(n) + " entries, got " + std::to_string(ranks.size()));
  RankOracle o;
  o.n_ = n;
  o.backend_ = "table";
  o.table_ = std::make_shared<const std::vector<unsigned>>(std::move(ranks));
  return o;
}

RankOracle RankOracle::from_lines(std::size_t n, std::vector<Mask> lines) {
  const Mask ground = full_mask(n);
  for (auto l : lines) {
    if (l & ~ground) throw ValidationError("line mentions an element outside the ground set");
    if (popcount(l) < 2) throw ValidationError("a line needs at least two points");
  }
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (popcount(lines[i] & lines[j]) > 1) throw ValidationError("two lines share more than one point");
  return custom(n, "lines", [lines = std::move(lines)](Mask a) -> unsigned {
    const unsigned k = popcount(a);
    if (k <= 2) return k;
    for (auto l : lines)
      if ((a & ~l) == 0) return 2;
    return 3;
  });
}

RankOracle RankOracle::linear_rational(RatMatrix columns) {
  const std::size_t n = columns.cols();
  auto m = std::make_shared<const RatMatrix>(std::move(columns));
  return custom(n, "linear", [m](Mask a) -> unsigned {
    const auto idx = mask_elements(a);
    if (idx.empty() || m->rows() == 0) return 0;
    RatMatrix sub(m->rows(), idx.size());
    for (std::size_t r = 0; r < m->rows(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sub(r, c) = (*m)(r, idx[c]);
    return static_cast<unsigned>(espo::rank(sub));
  });
}

RankOracle RankOracle::linear_field(unsigned q, std::vector<std::vector<unsigned>> columns) {
  auto f = std::make_shared<const FiniteField>(q);
  for (const auto& c : columns) {
    if (c.size() != columns.front().size()) throw DimensionError("columns have different lengths");
    for (auto v : c)
      if (v >= q) throw ValidationError("field code " + std::to_string(v) + " is not an element of GF(" + std::to_string(q) + ")");
  }
  auto cols = std::make_shared<const std::vector<std::vector<unsigned>>>(std::move(columns));
  return custom(cols->size(), "linear", [f, cols](Mask a) -> unsigned {
    std::vector<std::vector<unsigned>> rows;
    for (auto i : mask_elements(a)) rows.push_back((*cols)[i]);
    return static_cast<unsigned>(field_rank(*f, std::move(rows)));
  });
}

RankOracle RankOracle::mullattice(std::vector<Rational> values) {
  std::vector<std::map<Integer, long>> factored;
  std::set<Integer> primes;
  for (const auto& v : values) {
    if (v <= 0) throw EncodingError("multiplicative lattice elements must be positive");
    std::map<Integer, long> f;
    auto split = [&](Integer x, long sign) {
      for (Integer d = 2; d * d <= x; ++d) {
        if (d > 1'000'000) break;
        while (x % d == 0) f[d] += sign, x /= d;
      }
      if (x > 1) {
        if (mpz_probab_prime_p(x.get_mpz_t(), 30) == 0) throw EncodingError("could not factor " + to_string(x));
        f[x] += sign;
      }
    };
    split(Integer(v.get_num()), 1);
    split(Integer(v.get_den()), -1);
    for (const auto& [p, e] : f) primes.insert(p);
    factored.push_back(std::move(f));
  }
  const std::vector<Integer> basis(primes.begin(), primes.end());
  IntMatrix exps(basis.size(), values.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    for (std::size_t i = 0; i < basis.size(); ++i) {
      auto it = factored[j].find(basis[i]);
      exps(i, j) = it == factored[j].end() ? 0 : it->second;
    }
  RankOracle o = linear_rational(to_rational(exps));
  o.backend_ = "mullattice";
  return o;
}

RankOracle RankOracle::direct_sum(const RankOracle& a, const RankOracle& b) {
  const std::size_t na = a.size();
  if (na + b.size() > 64) throw ValidationError("direct sum exceeds 64 elements");
  return custom(na + b.size(), "sum", [a, b, na](Mask m) { return a.rank(m & a.ground()) + b.rank(m >> na); });
}

unsigned RankOracle::rank(Mask a) const {
  if (a & ~ground()) throw ValidationError("subset mentions an element outside the ground set");
  if (table_) return (*table_)[a];
  return fn_(a);
}

RankOracle RankOracle::materialized() const {
  if (table_) return *this;
  if (n_ > kTableLimit) throw BudgetError("cannot tabulate a rank function on more than 20 elements");
  std::vector<unsigned> ranks(std::size_t{1} << n_);
  for (Mask a = 0; a < ranks.size(); ++a) ranks[a] = fn_(a);
  RankOracle o = table(n_, std::move(ranks));
  o.backend_ = backend_;
  return o;
}

Mask closure(const RankOracle& o, Mask a) {
  const unsigned r = o.rank(a);
  Mask out = a;
  for (std::size_t x = 0; x < o.size(); ++x) {
    const Mask bit = Mask{1} << x;
    if (!(a & bit) && o.rank(a | bit) == r) out |= bit;
  }
  return out;
}

PregeometryVerdict check_pregeometry(const RankOracle& input, std::uint64_t seed, std::uint64_t samples) {
  PregeometryVerdict v;
  const std::size_t n = input.size();
  auto fail = [&](std::string axiom, Mask a, std::vector<std::size_t> els) {
    v.holds = false;
    v.failed_axiom = std::move(axiom);
    v.set = a;
    v.elements = std::move(els);
    return v;
  };
  if (input.rank(0) != 0) return fail("empty_rank", 0, {});
  const bool exhaustive = n <= kTableLimit;
  const RankOracle o = exhaustive ? input.materialized() : input;
  auto r = [&](Mask m) { return static_cast<int>(o.rank(m)); };

  // Each check visits (A, x, y) with x, y outside A.
  auto check = [&](Mask a, std::size_t x, std::size_t y) -> bool {
    const Mask bx = Mask{1} << x, by = Mask{1} << y;
    ++v.checks;
    const int ra = r(a), rx = r(a | bx), ry = r(a | by), rxy = r(a | bx | by);
    if (rx - ra != 0 && rx - ra != 1) return fail("unit_increase", a, {x}), false;
    if (x == y) return true;
    if (rx + ry < rxy + ra) return fail("submodularity", a, {x, y}), false;
    // exchange with b = x, c = y: x in cl(A + y) \ cl(A) implies y in cl(A + x)
    if (rxy == ry && rx > ra && rxy != rx) return fail("exchange", a, {x, y}), false;
    return true;
  };

  if (exhaustive) {
    const Mask top = full_mask(n);
    for (Mask a = 0;; ++a) {
      for (std::size_t x = 0; x < n; ++x) {
        if (a >> x & 1) continue;
        for (std::size_t y = x; y < n; ++y) {
          if (a >> y & 1) continue;
          if (!check(a, x, y) || (x != y && !check(a, y, x))) return v;
        }
      }
      if (a == top) break;
    }
    return v;
  }
  v.partial = true;
  TaskRng rng(seed, "matroid/check_pregeometry");
  for (std::uint64_t s = 0; s < samples; ++s) {
    Mask a = rng.next() & o.ground();
    const std::size_t x = rng.below(n), y = rng.below(n);
    a &= ~((Mask{1} << x) | (Mask{1} << y));
    if (!check(a, x, y)) return v;
  }
  return v;
}

Geometry Geometry::projectivize(const RankOracle& o) {
  const auto verdict = check_pregeometry(o);
  if (!verdict.holds) throw AxiomError("rank oracle violates the " + verdict.failed_axiom + " axiom");
  const Mask loops = espo::closure(o, 0);
  Geometry g;
  std::vector<std::size_t> reps;
  Mask assigned = loops;
  for (std::size_t x = 0; x < o.size(); ++x) {
    const Mask bit = Mask{1} << x;
    if (assigned & bit) continue;
    const Mask cls = espo::closure(o, bit) & ~loops;
    g.points_.push_back(cls);
    reps.push_back(x);
    assigned |= cls;
  }
  const std::size_t k = reps.size();
  if (k > 64) throw ValidationError("geometry has more than 64 points");
  g.oracle_ = RankOracle::custom(k, "geometry", [o, reps](Mask p) {
    Mask m = 0;
    for (auto i : mask_elements(p)) m |= Mask{1} << reps[i];
    return o.rank(m);
  });
  if (k <= kTableLimit) g.oracle_ = g.oracle_.materialized();
  g.line_of_.assign(k * k, 0);
  std::set<Mask> seen;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const Mask l = espo::closure(g.oracle_, (Mask{1} << a) | (Mask{1} << b));
      g.line_of_[a * k + b] = g.line_of_[b * k + a] = l;
      if (seen.insert(l).second) g.lines_.push_back(l);
    }
  std::sort(g.lines_.begin(), g.lines_.end());
  return g;
}

std::vector<Mask> flats(const Geometry& g, std::size_t cap) {
  const Mask bottom = g.closure(0);
  std::set<Mask> seen{bottom};
  std::vector<Mask> queue{bottom};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (std::size_t p = 0; p < g.point_count(); ++p) {
      const Mask bit = Mask{1} << p;
      if (queue[i] & bit) continue;
      const Mask f = g.closure(queue[i] | bit);
      if (seen.insert(f).second) {
        if (seen.size() > cap) throw BudgetError("more than " + std::to_string(cap) + " flats");
        queue.push_back(f);
      }
    }
  }
  std::vector<std::pair<unsigned, Mask>> keyed;
  for (auto f : queue) keyed.emplace_back(g.rank(f), f);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Mask> out;
  for (auto& [r, f] : keyed) out.push_back(f);
  return out;
}

ModularityVerdict check_modularity(const Geometry& g, std::size_t flat_cap) {
  ModularityVerdict v;
  std::vector<Mask> fs;
  try {
    fs = flats(g, flat_cap);
  } catch (const BudgetError&) {
    v.partial = true;
    // Fall back to the flats of rank <= 2 (points and lines).
    fs.push_back(g.closure(0));
    for (std::size_t p = 0; p < g.point_count(); ++p) fs.push_back(Mask{1} << p);
    fs.insert(fs.end(), g.lines().begin(), g.lines().end());
  }
  v.flat_count = fs.size();
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j) {
      const Mask a = fs[i], b = fs[j];
      if (g.rank(a | b) + g.rank(a & b) != g.rank(a) + g.rank(b)) {
        v.holds = false;
        v.witness = std::make_pair(a, b);
        return v;
      }
    }
  return v;
}

VeblenVerdict check_veblen(const Geometry& g) {
  VeblenVerdict v;
  const std::size_t k = g.point_count();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < k; ++c) {
        if (c == a || c == b) continue;
        for (std::size_t d = 0; d < k; ++d) {
          if (d == a || d == b || d == c) continue;
          if ((g.line(a, b) & g.line(d, c)) && !(g.line(a, d) & g.line(b, c))) {
            v.holds = false;
            v.witness = std::array<std::size_t, 4>{a, b, c, d};
            return v;
          }
        }
      }
    }
  return v;
}

namespace {

std::string format_mask(Mask m) {
  std::string s = "{";
  bool first = true;
  for (auto e : mask_elements(m)) {
    if (!first) s += ',';
    s += std::to_string(e);
    first = false;
  }
  return s + "}";
}

}  // namespace

Decomposition decompose_nonorthogonality(const Geometry& g) {
  const auto mod = check_modularity(g);
  if (!mod.holds)
    throw PreconditionError("geometry is not modular",
                            format_mask(mod.witness->first) + " and " + format_mask(mod.witness->second));
  const std::size_t k = g.point_count();
  auto related = [&](std::size_t a, std::size_t b) { return a == b || popcount(g.line(a, b)) > 2; };
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b)
      if (related(a, b)) parent[find(b)] = find(a);
  Decomposition d;
  for (std::size_t a = 0; a < k && d.transitive; ++a)
    for (std::size_t b = 0; b < k && d.transitive; ++b)
      for (std::size_t c = 0; c < k && d.transitive; ++c)
        if (related(a, b) && related(b, c) && !related(a, c)) d.transitive = false;
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t a = 0; a < k; ++a) groups[find(a)].push_back(a);
  for (auto& [root, members] : groups) d.classes.push_back(std::move(members));
  std::sort(d.classes.begin(), d.classes.end());
  return d;
}

std::string to_string(PgStatus s) {
  switch (s) {
    case PgStatus::recognized: return "recognized";
    case PgStatus::not_recognized: return "not_recognized";
    case PgStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

unsigned long ipow(unsigned long b, unsigned e) {
  unsigned long r = 1;
  while (e--) r *= b;
  return r;
}

class CollineationSearch {
 public:
  CollineationSearch(const Geometry& g, const Geometry& target, std::uint64_t budget)
      : g_(g), t_(target), k_(g.point_count()), budget_(budget) {
    // Order: each next point closes as many lines with earlier points as possible.
    std::vector<bool> used(k_, false);
    for (std::size_t step = 0; step < k_; ++step) {
      std::size_t best = k_;
      long best_score = -1;
      for (std::size_t x = 0; x < k_; ++x) {
        if (used[x]) continue;
        long score = 0;
        for (std::size_t i = 0; i < order_.size(); ++i)
          for (std::size_t j = i + 1; j < order_.size(); ++j)
            if (g_.line(order_[i], order_[j]) >> x & 1) ++score;
        if (score > best_score) best_score = score, best = x;
      }
      used[best] = true;
      order_.push_back(best);
    }
    image_.assign(k_, k_);
  }

  // 1 found, 0 none, -1 budget exhausted
  int run() { return extend(0); }
  std::uint64_t nodes() const { return nodes_; }

 private:
  int extend(std::size_t t) {
    if (t == k_) return 1;
    const std::size_t x = order_[t];
    for (std::size_t y = 0; y < k_; ++y) {
      if (taken_ >> y & 1) continue;
      if (++nodes_ > budget_) return -1;
      if (!consistent(t, x, y)) continue;
      image_[x] = y;
      taken_ |= Mask{1} << y;
      const int r = extend(t + 1);
      if (r != 0) return r;
      taken_ &= ~(Mask{1} << y);
      image_[x] = k_;
    }
    return 0;
  }

  bool consistent(std::size_t t, std::size_t x, std::size_t y) const {
    for (std::size_t i = 0; i < t; ++i)
      for (std::size_t j = i + 1; j < t; ++j) {
        const std::size_t u = order_[i], v = order_[j];
        const bool cg = g_.line(u, v) >> x & 1;
        const bool ct = t_.line(image_[u], image_[v]) >> y & 1;
        if (cg != ct) return false;
      }
    return true;
  }

  const Geometry& g_;
  const Geometry& t_;
  std::size_t k_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> image_;
  Mask taken_ = 0;
};

}  // namespace

PgRecognition recognize_pg(const Geometry& g, std::uint64_t node_budget) {
  PgRecognition out;
  auto reject = [&](std::string why) {
    out.status = PgStatus::not_recognized;
    out.reason = std::move(why);
    return out;
  };
  if (g.dimension() < 3) return reject("projective dimension below 2");
  const auto mod = check_modularity(g);
  if (!mod.holds) return reject("not modular");
  const auto classes = decompose_nonorthogonality(g);
  if (classes.classes.size() != 1) return reject("not connected");
  const unsigned size = popcount(g.lines().front());
  for (auto l : g.lines())
    if (popcount(l) != size) return reject("lines of different sizes");
  const unsigned q = size - 1;
  const unsigned m = g.dimension() - 1;
  unsigned p, e;
  if (!prime_power(q, p, e) || q > 256) return reject("order " + std::to_string(q) + " is not a supported prime power");
  const unsigned long points = (ipow(q, m + 1) - 1) / (q - 1);
  const unsigned long lines = (ipow(q, m + 1) - 1) * (ipow(q, m + 1) - q) / ((q * q - 1) * (q * q - q));
  if (g.point_count() != points) return reject("point count does not match PG(m,q)");
  if (g.lines().size() != lines) return reject("line count does not match PG(m,q)");
  if (points > 64) {
    out.status = PgStatus::inconclusive;
    out.reason = "canonical PG(m,q) has more than 64 points";
    return out;
  }
  const Geometry target = Geometry::projectivize(projective_space(m, q));
  CollineationSearch search(g, target, node_budget);
  const int r = search.run();
  out.nodes = search.nodes();
  out.q = q;
  out.m = m;
  if (r == 1) {
    out.status = PgStatus::recognized;
  } else if (r == 0) {
    out.status = PgStatus::not_recognized;
    out.reason = "no collineation to PG(m,q) over a finite field";
  } else {
    out.status = PgStatus::inconclusive;
    out.reason = "collineation search budget exhausted";
  }
  return out;
}

RankOracle projective_space(unsigned m, unsigned q) {
  const FiniteField f(q);
  std::vector<std::vector<unsigned>> columns;
  const unsigned long total = ipow(q, m + 1);
  for (unsigned long code = 1; code < total; ++code) {
    std::vector<unsigned> v(m + 1);
    unsigned long c = code;
    for (std::size_t i = m + 1; i-- > 0;) v[i] = c % q, c /= q;
    const auto lead = std::find_if(v.begin(), v.end(), [](unsigned x) { return x != 0; });
    if (*lead != 1) continue;
    columns.push_back(std::move(v));
  }
  if (columns.size() > 64) throw ValidationError("PG(" + std::to_string(m) + "," + std::to_string(q) + ") has more than 64 points");
  return RankOracle::linear_field(q, std::move(columns));
}

RankOracle fano() { return projective_space(2, 2); }

RankOracle affine_plane(unsigned q) {
  const FiniteField f(q);
  if (q * q > 64) throw ValidationError("affine plane too large");
  std::vector<Mask> lines;
  auto at = [q](unsigned x, unsigned y) { return Mask{1} << (x * q + y); };
  for (unsigned a = 0; a < q; ++a)
    for (unsigned b = 0; b < q; ++b) {
      Mask l = 0;
      for (unsigned x = 0; x < q; ++x) l |= at(x, f.add(f.mul(a, x), b));
      lines.push_back(l);
    }
  for (unsigned c = 0; c < q; ++c) {
    Mask l = 0;
    for (unsigned y = 0; y < q; ++y) l |= at(c, y);
    lines.push_back(l);
  }
  return RankOracle::from_lines(q * q, std::move(lines));
}

RankOracle broken_quadrilateral() { return RankOracle::from_lines(5, {mask_of({0, 1, 4}), mask_of({2, 3, 4})}); }

RankOracle free_matroid(std::size_t n) {
  return RankOracle::custom(n, "free", [](Mask a) { return popcount(a); });
}

}  // namespace espo
