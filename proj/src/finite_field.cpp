#include "espo/finite_field.hpp"

#include <string>

#include "espo/errors.hpp"

namespace espo {

bool prime_power(unsigned long q, unsigned& p, unsigned& e) {
  if (q < 2) return false;
  for (unsigned long d = 2; d * d <= q; ++d)
    if (q % d == 0) {
      unsigned long r = q;
      e = 0;
      while (r % d == 0) r /= d, ++e;
      if (r != 1) return false;
      p = static_cast<unsigned>(d);
      return true;
    }
  p = static_cast<unsigned>(q);
  e = 1;
  return true;
}

namespace {

using Poly = std::vector<unsigned>;  // coefficients over GF(p), low degree first

Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  const std::size_t dm = m.size() - 1;
  const unsigned lead_inv = [&] {
    for (unsigned x = 1; x < p; ++x)
      if (x * m.back() % p == 1) return x;
    return 1u;
  }();
  while (a.size() > dm) {
    const unsigned c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = (a[shift + i] + p - c * m[i] % p) % p;
    a.pop_back();
  }
  return a;
}

bool is_zero(const Poly& a) {
  for (auto c : a)
    if (c) return false;
  return true;
}

// Monic polynomial of degree e with no monic factor of degree 1..e/2.
Poly irreducible(unsigned p, unsigned e) {
  unsigned long total = 1;
  for (unsigned i = 0; i < e; ++i) total *= p;
  for (unsigned long code = 0; code < total; ++code) {
    Poly m(e + 1, 0);
    m[e] = 1;
    unsigned long c = code;
    for (unsigned i = 0; i < e; ++i) m[i] = c % p, c /= p;
    bool reducible = false;
    for (unsigned d = 1; d <= e / 2 && !reducible; ++d) {
      unsigned long count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p;
      for (unsigned long fc = 0; fc < count && !reducible; ++fc) {
        Poly f(d + 1, 0);
        f[d] = 1;
        unsigned long t = fc;
        for (unsigned i = 0; i < d; ++i) f[i] = t % p, t /= p;
        if (is_zero(poly_mod(m, f, p))) reducible = true;
      }
    }
    if (!reducible) return m;
  }
  throw ValidationError("no irreducible polynomial found");
}

}  // namespace

FiniteField::FiniteField(unsigned q) : q_(q) {
  if (q > 256 || !prime_power(q, p_, e_)) throw ValidationError("GF(" + std::to_string(q) + ") needs a prime power <= 256");
  const Poly m = irreducible(p_, e_);
  auto decode = [&](unsigned a) {
    Poly v(e_, 0);
    for (unsigned i = 0; i < e_; ++i) v[i] = a % p_, a /= p_;
    return v;
  };
  auto encode = [&](const Poly& v) {
    unsigned a = 0;
    for (std::size_t i = v.size(); i-- > 0;) a = a * p_ + v[i];
    return a;
  };
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  for (unsigned a = 0; a < q; ++a) {
    const Poly pa = decode(a);
    Poly na(e_);
    for (unsigned i = 0; i < e_; ++i) na[i] = (p_ - pa[i]) % p_;
    neg_[a] = encode(na);
    for (unsigned b = 0; b < q; ++b) {
      const Poly pb = decode(b);
      Poly s(e_);
      for (unsigned i = 0; i < e_; ++i) s[i] = (pa[i] + pb[i]) % p_;
      add_[a * q + b] = encode(s);
      Poly prod(2 * e_, 0);
      for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + pa[i] * pb[j]) % p_;
      Poly r = poly_mod(prod, m, p_);
      r.resize(e_, 0);
      mul_[a * q + b] = encode(r);
    }
  }
  for (unsigned a = 1; a < q; ++a)
    for (unsigned b = 1; b < q; ++b)
      if (mul_[a * q + b] == 1) inv_[a] = b;
}

std::size_t field_rank(const FiniteField& f, std::vector<std::vector<unsigned>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const unsigned inv = f.inv(rows[r][c]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      const unsigned factor = f.mul(rows[i][c], inv);
      for (std::size_t k = c; k < cols; ++k) rows[i][k] = f.sub(rows[i][k], f.mul(factor, rows[r][k]));
    }
    ++r;
  }
  return r;
}

}  // namespace espo
