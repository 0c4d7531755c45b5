#include "espo/multipoly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "espo/errors.hpp"

namespace espo {

MultiPoly MultiPoly::constant(std::size_t variables, const Rational& c) {
  MultiPoly p(variables);
  p.add_term(c, Exponents(variables, 0));
  return p;
}

MultiPoly MultiPoly::variable(std::size_t variables, std::size_t index) {
  if (index >= variables) throw DimensionError("variable index out of range");
  Exponents e(variables, 0);
  e[index] = 1;
  MultiPoly p(variables);
  p.add_term(1, std::move(e));
  return p;
}

MultiPoly MultiPoly::monomial(const Rational& c, Exponents exponents) {
  MultiPoly p(exponents.size());
  p.add_term(c, std::move(exponents));
  return p;
}

void MultiPoly::add_term(const Rational& c, Exponents exponents) {
  if (exponents.size() != variables_) throw DimensionError("exponent vector length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(std::move(exponents), c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned MultiPoly::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
  return d;
}

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != variables_) throw DimensionError("point length does not match polynomial variable count");
  Rational total = 0;
  Rational term;
  for (const auto& [e, c] : terms_) {
    term = c;
    for (std::size_t v = 0; v < variables_; ++v)
      for (unsigned k = 0; k < e[v]; ++k) term *= point[v];
    total += term;
  }
  return total;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly result = constant(variables_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1u) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
  if (a.variables_ != b.variables_) throw DimensionError("polynomial variable counts differ");
  MultiPoly r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(c, e);
  return r;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly r(a.variables_);
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.variables_ != b.variables_) throw DimensionError("polynomial variable counts differ");
  MultiPoly r(a.variables_);
  Exponents e(a.variables_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = ea[v] + eb[v];
      r.add_term(ca * cb, e);
    }
  return r;
}

MultiPoly operator*(const Rational& s, const MultiPoly& a) {
  MultiPoly r(a.variables_);
  if (s == 0) return r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest degree first for readability.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool constant_term = std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    Rational mag = abs(c);
    out << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (mag != 1 || constant_term) out << espo::to_string(mag);
    bool need_star = mag != 1 && !constant_term;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (!e[v]) continue;
      if (need_star) out << '*';
      out << 'x' << v;
      if (e[v] > 1) out << '^' << e[v];
      need_star = true;
    }
    first = false;
  }
  return out.str();
}

Rational poly_eval(const MultiPoly& p, std::span<const Rational> point) { return p.evaluate(point); }

std::vector<Exponents> monomials_up_to(std::size_t variables, unsigned degree) {
  std::vector<Exponents> out;
  Exponents e(variables, 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t v, unsigned remaining) {
    if (v + 1 == variables) {
      e[v] = remaining;
      out.push_back(e);
      return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
      e[v] = k;
      rec(v + 1, remaining - k);
    }
  };
  for (unsigned d = 0; d <= degree; ++d) {
    if (variables == 0) {
      if (d == 0) out.push_back({});
      continue;
    }
    rec(0, d);
  }
  return out;
}

}  // namespace espo
