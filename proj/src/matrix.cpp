#include "espo/matrix.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace espo {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j))) throw ValidationError("matrix entry is not integral: " + to_string(m(i, j)));
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out << ',';
    out << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << to_string(m(i, j));
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

std::size_t SmithDecomposition::rank() const { return invariant_factors().size(); }

std::vector<Integer> SmithDecomposition::invariant_factors() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) out.push_back(D(i, i));
  return out;
}

SmithDecomposition smith_normal_form(const IntMatrix& a) {
  if (a.empty()) throw DimensionError("smith_normal_form on an empty matrix");
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntMatrix D = a;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // Pivot: smallest nonzero |entry| in the trailing block.
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (!pivot || abs(D(i, j)) < abs(D(pivot->first, pivot->second)))) pivot = {i, j};
      if (!pivot) return {std::move(U), std::move(D), std::move(V)};

      D.swap_rows(t, pivot->first);
      U.swap_rows(t, pivot->first);
      D.swap_cols(t, pivot->second);
      V.swap_cols(t, pivot->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        D.add_col_multiple(j, t, -q);
        V.add_col_multiple(j, t, -q);
        if (D(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce d_t | every trailing entry.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(D(i, j).get_mpz_t(), D(t, t).get_mpz_t())) {
            offender = i;
            break;
          }
      if (offender) {
        D.add_row_multiple(t, *offender, Integer(1));
        U.add_row_multiple(t, *offender, Integer(1));
        continue;
      }
      break;
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < m; ++j) U(t, j) = -U(t, j);
    }
  }
  return {std::move(U), std::move(D), std::move(V)};
}

std::vector<std::size_t> reduce_to_rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(r, p);
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = -m(i, c);
      m.add_row_multiple(i, r, f);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

KernelBasis rational_kernel(const RatMatrix& a) {
  if (a.empty()) throw DimensionError("rational_kernel on an empty matrix");
  RatMatrix r = a;
  const auto pivots = reduce_to_rref(r);
  KernelBasis out;
  out.rank = pivots.size();
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
    out.basis.push_back(std::move(v));
  }
  return out;
}

KernelBasis rational_kernel(const IntMatrix& a) { return rational_kernel(to_rational(a)); }

std::size_t rank(const RatMatrix& a) {
  if (a.empty()) return 0;
  RatMatrix r = a;
  return reduce_to_rref(r).size();
}

std::size_t rank(const IntMatrix& a) { return rank(to_rational(a)); }

Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("determinant of a non-square matrix");
  RatMatrix m = a;
  Rational det = 1;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      const Rational f = -m(i, c) / m(c, c);
      m.add_row_multiple(i, c, f);
    }
  }
  return det;
}

RatMatrix inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = reduce_to_rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw ValidationError("matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

IntMatrix saturated_row_basis(const IntMatrix& a) {
  // A = U^-1 D V^-1, so rowspace(A) = span{d_i * row_i(V^-1)} and its
  // saturation is spanned by the rows of V^-1 with d_i != 0.
  const auto snf = smith_normal_form(a);
  const std::size_t r = snf.rank();
  const IntMatrix v_inv = to_integer(inverse(to_rational(snf.V)));
  IntMatrix out(r, a.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = v_inv(i, j);
  return out;
}

}  // namespace espo
