#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "espo/group.hpp"
#include "espo/matrix.hpp"

namespace espo {

using EndoMatrix = std::vector<std::vector<Endomorphism>>;

/// Relations  sum_j relations[i][j](x_j) = 0  (i = 0..m-1) on G^factors.
struct SpecialSubgroupSpec {
  GroupModel group;
  std::size_t factors = 0;
  EndoMatrix relations;
};

/// The connected component of the kernel of a relation matrix of endomorphisms.
///
/// Integral models (multiplicative, elliptic) flatten the relation matrix to an
/// integer matrix and replace its row lattice by the saturation, which cuts out
/// the identity component. The additive model is uniquely divisible, so its
/// kernel is already connected.
class SpecialSubgroup {
 public:
  static SpecialSubgroup build(SpecialSubgroupSpec spec);

  const SpecialSubgroupSpec& spec() const noexcept { return spec_; }
  const GroupModel& group() const noexcept { return spec_.group; }
  std::size_t factors() const noexcept { return spec_.factors; }

  // DimensionError when tuple.size() != factors().
  bool contains(std::span<const GroupElement> tuple) const;

  // dim(G) * factors - rank of the flattened relation matrix.
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t flattened_rank() const noexcept { return rank_; }

  // Flattened relation matrix (integral models) and its saturated row basis.
  const IntMatrix& flattened_relations() const noexcept { return flat_; }
  const IntMatrix& saturated_relations() const noexcept { return saturated_; }
  // True if the relation lattice was already saturated (kernel is connected).
  bool kernel_connected() const noexcept { return kernel_connected_; }

 private:
  SpecialSubgroupSpec spec_;
  std::size_t dimension_ = 0;
  std::size_t rank_ = 0;
  IntMatrix flat_;
  IntMatrix saturated_;
  RatMatrix flat_rational_;
  bool kernel_connected_ = true;
};

SpecialSubgroup build_special_subgroup(SpecialSubgroupSpec spec);
bool membership(const SpecialSubgroup& h, std::span<const GroupElement> tuple);
std::size_t subgroup_dimension(const SpecialSubgroup& h);

// Flattens a relation matrix: additive entries give dim x dim rational blocks,
// multiplicative entries r x r integer blocks, elliptic entries 1 x 1.
RatMatrix flatten_relations(const GroupModel& g, std::size_t factors, const EndoMatrix& relations);

/// The action of the Lipschitz quaternions Z[i,j,k] on (Q_{>0})^4 by
/// signed-permutation exponent matrices:
///   alpha_i(a,b,c,d) = (b^-1, a, d^-1, c)
///   alpha_j(a,b,c,d) = (c^-1, d, a, b^-1)
///   alpha_k(a,b,c,d) = (d^-1, c^-1, b, a)
IntMatrix quaternion_matrix(long n, long m, long p, long q);
Endomorphism quaternion_endomorphism(long n, long m, long p, long q);
// "1", "i", "j", "k" with optional leading '-'.
Endomorphism quaternion_symbol(std::string_view symbol);

// The torus G = (Q_{>0})^4 over the primes {2, 3, 5, 7}.
GroupModel quaternion_torus();

// V = {(x, y, z1, z2, z3) : z1 = x y, z2 = x alpha_i(y), z3 = x alpha_j(y)} <= G^5.
SpecialSubgroupSpec quaternion_rep();

}  // namespace espo
