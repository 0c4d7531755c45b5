#include "espo/special_subgroup.hpp"

#include "espo/errors.hpp"

namespace espo {
namespace {

std::size_t block_size(const GroupModel& g) { return g.kind() == GroupKind::elliptic ? 1 : g.dimension(); }

void validate_spec(const SpecialSubgroupSpec& spec) {
  if (spec.factors == 0) throw ValidationError("special subgroup needs at least one factor");
  if (spec.relations.size() > spec.factors) throw ValidationError("more relations than factors");
  for (const auto& row : spec.relations) {
    if (row.size() != spec.factors) throw ValidationError("relation row length does not match factor count");
    for (const auto& e : row) e.validate(spec.group);
  }
}

}  // namespace

RatMatrix flatten_relations(const GroupModel& g, std::size_t factors, const EndoMatrix& relations) {
  const std::size_t b = block_size(g);
  RatMatrix flat(relations.size() * b, factors * b);
  for (std::size_t i = 0; i < relations.size(); ++i)
    for (std::size_t j = 0; j < factors; ++j) {
      const auto& e = relations[i][j];
      for (std::size_t r = 0; r < b; ++r)
        for (std::size_t c = 0; c < b; ++c) {
          Rational v;
          switch (g.kind()) {
            case GroupKind::additive: v = e.rational_matrix()(r, c); break;
            case GroupKind::multiplicative: v = Rational(e.integer_matrix()(r, c)); break;
            case GroupKind::elliptic: v = Rational(e.multiplier()); break;
          }
          flat(i * b + r, j * b + c) = v;
        }
    }
  return flat;
}

SpecialSubgroup SpecialSubgroup::build(SpecialSubgroupSpec spec) {
  validate_spec(spec);
  SpecialSubgroup h;
  h.flat_rational_ = flatten_relations(spec.group, spec.factors, spec.relations);
  h.rank_ = rank(h.flat_rational_);
  // Every block is dim(G) x dim(G), so the flattened rank is already in units of dim(G)-coordinates.
  h.dimension_ = spec.group.dimension() * spec.factors - h.rank_;
  if (spec.group.kind() != GroupKind::additive && !h.flat_rational_.empty()) {
    h.flat_ = to_integer(h.flat_rational_);
    h.saturated_ = saturated_row_basis(h.flat_);
    const auto snf = smith_normal_form(h.flat_);
    for (const auto& d : snf.invariant_factors())
      if (d != 1) h.kernel_connected_ = false;
  }
  h.spec_ = std::move(spec);
  return h;
}

bool SpecialSubgroup::contains(std::span<const GroupElement> tuple) const {
  if (tuple.size() != spec_.factors) throw DimensionError("tuple length does not match factor count");
  const auto& g = spec_.group;
  for (const auto& x : tuple) validate(g, x);
  switch (g.kind()) {
    case GroupKind::additive: {
      for (const auto& row : spec_.relations) {
        GroupElement acc = identity(g);
        for (std::size_t j = 0; j < spec_.factors; ++j)
          if (!row[j].is_zero()) acc = group_add(g, acc, apply_endomorphism(g, row[j], tuple[j]));
        if (!(acc == identity(g))) return false;
      }
      return true;
    }
    case GroupKind::multiplicative: {
      // Exponent data of coordinate a of factor j in prime slot k lives at
      // flattened column j * r + a.
      const std::size_t r = g.dimension();
      const std::size_t width = g.primes().size();
      for (std::size_t s = 0; s < saturated_.rows(); ++s)
        for (std::size_t k = 0; k < width; ++k) {
          Integer acc = 0;
          for (std::size_t j = 0; j < spec_.factors; ++j)
            for (std::size_t a = 0; a < r; ++a) {
              const auto& c = saturated_(s, j * r + a);
              if (c != 0) acc += c * tuple[j].exponents()[a * width + k];
            }
          if (acc != 0) return false;
        }
      return true;
    }
    case GroupKind::elliptic: {
      for (std::size_t s = 0; s < saturated_.rows(); ++s) {
        GroupElement acc = identity(g);
        for (std::size_t j = 0; j < spec_.factors; ++j)
          if (saturated_(s, j) != 0) acc = group_add(g, acc, scalar_mul(g, saturated_(s, j), tuple[j]));
        if (!acc.is_infinity()) return false;
      }
      return true;
    }
  }
  return false;
}

SpecialSubgroup build_special_subgroup(SpecialSubgroupSpec spec) { return SpecialSubgroup::build(std::move(spec)); }

bool membership(const SpecialSubgroup& h, std::span<const GroupElement> tuple) { return h.contains(tuple); }

std::size_t subgroup_dimension(const SpecialSubgroup& h) { return h.dimension(); }

IntMatrix quaternion_matrix(long n, long m, long p, long q) {
  // Columns: images of the basis exponent vectors; each row is one output coordinate.
  static const IntMatrix I = IntMatrix::from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
  static const IntMatrix J = IntMatrix::from_rows({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
  static const IntMatrix K = IntMatrix::from_rows({{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  return Integer(n) * IntMatrix::identity(4) + Integer(m) * I + Integer(p) * J + Integer(q) * K;
}

Endomorphism quaternion_endomorphism(long n, long m, long p, long q) {
  return Endomorphism::multiplicative(quaternion_matrix(n, m, p, q));
}

Endomorphism quaternion_symbol(std::string_view symbol) {
  long sign = 1;
  if (!symbol.empty() && (symbol[0] == '-' || symbol[0] == '+')) {
    sign = symbol[0] == '-' ? -1 : 1;
    symbol.remove_prefix(1);
  }
  if (symbol == "1") return quaternion_endomorphism(sign, 0, 0, 0);
  if (symbol == "0") return quaternion_endomorphism(0, 0, 0, 0);
  if (symbol == "i") return quaternion_endomorphism(0, sign, 0, 0);
  if (symbol == "j") return quaternion_endomorphism(0, 0, sign, 0);
  if (symbol == "k") return quaternion_endomorphism(0, 0, 0, sign);
  throw ValidationError("unknown quaternion symbol '" + std::string(symbol) + "'");
}

GroupModel quaternion_torus() { return GroupModel::multiplicative(4, {2, 3, 5, 7}); }

SpecialSubgroupSpec quaternion_rep() {
  const GroupModel g = quaternion_torus();
  const auto one = Endomorphism::identity(g);
  const auto zero = Endomorphism::zero(g);
  const auto minus = -one;
  SpecialSubgroupSpec spec{g, 5, {}};
  spec.relations.push_back({one, one, minus, zero, zero});
  spec.relations.push_back({one, quaternion_symbol("i"), zero, minus, zero});
  spec.relations.push_back({one, quaternion_symbol("j"), zero, zero, minus});
  return spec;
}

}  // namespace espo
