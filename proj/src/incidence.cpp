#include "espo/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "espo/errors.hpp"

namespace espo {

bool operator<(const Line& p, const Line& q) {
  if (p.a != q.a) return p.a < q.a;
  if (p.b != q.b) return p.b < q.b;
  return p.c < q.c;
}

Line normalize_line(const Line& l) {
  if (l.a == 0 && l.b == 0 && l.c == 0) throw ValidationError("the zero triple is not a line");
  Integer den = 1;
  for (const auto* v : {&l.a, &l.b, &l.c}) den = lcm(den, Integer(v->get_den()));
  Integer na = Integer(l.a * den), nb = Integer(l.b * den), nc = Integer(l.c * den);
  Integer g = gcd(gcd(abs(na), abs(nb)), abs(nc));
  na /= g, nb /= g, nc /= g;
  const Integer& lead = na != 0 ? na : (nb != 0 ? nb : nc);
  if (lead < 0) na = -na, nb = -nb, nc = -nc;
  return Line{Rational(na), Rational(nb), Rational(nc)};
}

Line line_through(const Rational& x1, const Rational& y1, const Rational& x2, const Rational& y2) {
  if (x1 == x2 && y1 == y2) throw ValidationError("line through coincident points");
  return normalize_line(Line{y2 - y1, x1 - x2, x2 * y1 - x1 * y2});
}

bool on_line(const Line& l, const Rational& x, const Rational& y) { return l.a * x + l.b * y + l.c == 0; }

IncidenceResult point_line_incidences(const PointSet& points, std::span<const Line> lines) {
  if (points.ambient().kind() != GroupKind::additive || points.ambient().dimension() != 2)
    throw ValidationError("incidence counting needs points in the rational plane");
  std::map<Rational, std::set<Rational>> by_x;
  for (const auto& p : points) by_x[p.coords()[0]].insert(p.coords()[1]);
  IncidenceResult r;
  for (const auto& raw : lines) {
    const Line l = normalize_line(raw);
    if (l.b == 0) {
      auto it = by_x.find(-l.c / l.a);
      if (it != by_x.end()) r.count += it->second.size();
      continue;
    }
    for (const auto& [x, ys] : by_x)
      if (ys.count(-(l.a * x + l.c) / l.b)) ++r.count;
  }
  const double P = static_cast<double>(points.size()), L = static_cast<double>(lines.size());
  r.reference = std::cbrt(P * P) * std::cbrt(L * L) + P + L;
  return r;
}

FitResult fit_exponent(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 2) throw InsufficientDataError("fit needs at least two samples");
  std::vector<double> xs, ys;
  for (const auto& [N, c] : samples) {
    if (!(N >= 2)) throw ValidationError("sample sizes must be at least 2");
    if (!(c >= 1)) throw ValidationError("sample counts must be at least 1");
    xs.push_back(std::log(N));
    ys.push_back(std::log(c));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
  mx /= n, my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0) throw InsufficientDataError("fit needs at least two distinct sizes");
  FitResult f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  for (std::size_t i = 0; i < xs.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(ys[i] - (f.slope * xs[i] + f.intercept)));
  return f;
}

BoundVerdict trivial_bound_check(std::size_t dim, std::uint64_t N, std::uint64_t observed, const Rational& constant) {
  if (N < 1) throw ValidationError("N must be at least 1");
  BoundVerdict v;
  v.constant = constant;
  v.bound_base = pow(Integer(static_cast<unsigned long>(N)), static_cast<unsigned long>(dim));
  const Rational obs(Integer(static_cast<unsigned long>(observed)));
  v.ratio = obs / Rational(v.bound_base);
  v.passed = obs <= constant * v.bound_base;
  return v;
}

BoundVerdict trivial_bound_check(const VarietySpec& v, std::uint64_t N, std::uint64_t observed, const Rational& constant) {
  return trivial_bound_check(v.declared_dimension(), N, observed, constant);
}

}  // namespace espo
