#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "espo/incidence.hpp"
#include "espo/multipoly.hpp"
#include "espo/point_set.hpp"

namespace espo {

enum class CgpMode { exhaustive, heuristic };

std::string to_string(CgpMode mode);
CgpMode parse_cgp_mode(std::string_view text);

struct LineMax {
  std::uint64_t count = 0;
  Line line;
};

// Exact maximum number of points of a planar set on one line.
// InsufficientDataError for fewer than two points.
LineMax max_on_line(const PointSet& points);

struct CurveOptions {
  CgpMode mode = CgpMode::exhaustive;
  // Exhaustive mode refuses more than this many subsets.
  std::uint64_t subset_cap = 5'000'000;
  // Random subsets examined in heuristic mode.
  std::uint64_t budget = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 0;
};

struct CurveMax {
  std::uint64_t count = 0;
  // Curve through the points realizing count; coefficients over monomials_up_to.
  std::optional<MultiPoly> witness;
  // Indices (into points.elements()) of the interpolating subset.
  std::vector<std::size_t> subset;
  bool exact = true;
  std::uint64_t subsets_examined = 0;
};

/// Maximum of |W cap X| over hypersurfaces W of degree <= degree through
/// M - 1 of the points (M the number of monomials). In exhaustive mode this is
/// the exact maximum over all such hypersurfaces meeting at least M - 1 points.
CurveMax max_on_curve(const PointSet& points, unsigned degree, const CurveOptions& options = {});

struct CgpVerdict {
  bool passed = true;
  unsigned tau = 1;
  unsigned complexity = 1;
  std::uint64_t worst_count = 0;
  std::uint64_t size = 0;
  std::optional<MultiPoly> witness;
  CgpMode mode = CgpMode::exhaustive;
  std::optional<std::uint64_t> iterations;
  std::optional<std::uint64_t> seed;
  // Ambient of dimension >= 3: only hypersurfaces were checked.
  bool partial = false;
  bool exact = true;
};

// passed iff worst_count^tau <= |X|.
CgpVerdict cgp_verdict(const PointSet& points, unsigned C, unsigned tau, const CurveOptions& options = {});

// Affine point coordinates used by the checker: additive coordinates or
// multiplicative coordinate values.
std::vector<std::vector<Rational>> cgp_coordinates(const PointSet& points);

}  // namespace espo
