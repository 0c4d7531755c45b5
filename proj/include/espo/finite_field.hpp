#pragma once

#include <cstddef>
#include <vector>

namespace espo {

/// GF(q) for a prime power q <= 256, elements encoded as 0..q-1 by their
/// coefficient vector over GF(p) in base p.
class FiniteField {
 public:
  explicit FiniteField(unsigned q);

  unsigned order() const noexcept { return q_; }
  unsigned characteristic() const noexcept { return p_; }
  unsigned degree() const noexcept { return e_; }

  unsigned add(unsigned a, unsigned b) const { return add_[a * q_ + b]; }
  unsigned sub(unsigned a, unsigned b) const { return add_[a * q_ + neg_[b]]; }
  unsigned mul(unsigned a, unsigned b) const { return mul_[a * q_ + b]; }
  unsigned neg(unsigned a) const { return neg_[a]; }
  // a != 0
  unsigned inv(unsigned a) const { return inv_[a]; }

 private:
  unsigned q_, p_, e_;
  std::vector<unsigned> add_, mul_, neg_, inv_;
};

// (p, e) with q = p^e, or false.
bool prime_power(unsigned long q, unsigned& p, unsigned& e);

// Rank of the given row vectors over the field.
std::size_t field_rank(const FiniteField& f, std::vector<std::vector<unsigned>> rows);

}  // namespace espo
