#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "espo/group.hpp"
#include "espo/multipoly.hpp"
#include "espo/point_set.hpp"
#include "espo/special_subgroup.hpp"

namespace espo {

enum class VarietyMode { poly, lattice, graph };

std::string to_string(VarietyMode mode);

/// z_target = sum_i e_i(x_i) + constant
struct GraphRelation {
  std::size_t target = 0;
  std::vector<std::pair<std::size_t, Endomorphism>> terms;
  std::optional<GroupElement> constant;
};

/// A finite system of constraints cutting out V in W_1 x ... x W_n.
///
/// poly: polynomials in the concatenated affine coordinates of the factors
///       (see affine_coordinates); the point at infinity satisfies nothing.
/// lattice: a special subgroup of G^n.
/// graph: relations z_t = sum e_i(x_i) + c over a single group, applied in order.
class VarietySpec {
 public:
  static VarietySpec poly(std::vector<GroupModel> ambient, std::vector<MultiPoly> constraints,
                          std::size_t declared_dimension);
  static VarietySpec lattice(SpecialSubgroupSpec spec, std::optional<std::size_t> declared_dimension = std::nullopt);
  static VarietySpec graph(GroupModel g, std::size_t arity, std::vector<GraphRelation> relations,
                           std::optional<std::size_t> declared_dimension = std::nullopt);

  VarietyMode mode() const noexcept { return mode_; }
  std::size_t arity() const noexcept { return ambient_.size(); }
  const std::vector<GroupModel>& ambient() const noexcept { return ambient_; }
  std::size_t declared_dimension() const noexcept { return declared_dim_; }
  std::size_t ambient_dimension() const;

  const std::vector<MultiPoly>& polynomials() const noexcept { return polys_; }
  const SpecialSubgroup& subgroup() const;
  const std::vector<GraphRelation>& relations() const noexcept { return relations_; }

  // Offset of coordinate i's first affine variable (poly mode).
  std::size_t variable_offset(std::size_t i) const { return offsets_.at(i); }
  std::size_t variable_count() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }

  bool contains(std::span<const GroupElement> tuple) const;

  std::string describe() const;

 private:
  VarietyMode mode_ = VarietyMode::poly;
  std::vector<GroupModel> ambient_;
  std::size_t declared_dim_ = 0;
  std::vector<MultiPoly> polys_;
  std::vector<std::size_t> offsets_;
  std::optional<SpecialSubgroup> subgroup_;
  std::vector<GraphRelation> relations_;
};

enum class Strategy { brute, join, auto_select };

std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct CountOptions {
  Strategy strategy = Strategy::auto_select;
  unsigned workers = 0;
  // Maximum number of enumerated (free-coordinate) tuples.
  std::uint64_t budget = 200'000'000;
};

struct CountResult {
  std::uint64_t count = 0;
  Strategy strategy = Strategy::brute;
  std::vector<std::size_t> free_coordinates;
  std::uint64_t enumerated = 0;
};

/// Exact |V cap (X_1 x ... x X_n)|.
CountResult count_intersection(const VarietySpec& v, std::span<const PointSet> sets, const CountOptions& options = {});

// True if the join strategy applies to v.
bool join_available(const VarietySpec& v);

}  // namespace espo
