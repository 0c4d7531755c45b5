#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "espo/matrix.hpp"
#include "espo/rational.hpp"

namespace espo {

// Subset of a ground set {0, ..., n-1}, n <= 64.
using Mask = std::uint64_t;

std::vector<std::size_t> mask_elements(Mask m);
Mask mask_of(const std::vector<std::size_t>& elements);
inline Mask full_mask(std::size_t n) { return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1; }

/// A rank function on the subsets of a finite ground set.
///
/// Backends: an explicit table, a rank-3 structure given by its lines, the
/// column matroid of a matrix over Q or GF(q), the exponent-span matroid of
/// positive rationals, and direct sums.
class RankOracle {
 public:
  // ranks[mask] for every mask < 2^n, n <= 20.
  static RankOracle table(std::size_t n, std::vector<unsigned> ranks);
  // r(A) = |A| for |A| <= 2; 2 if A lies on a listed line; 3 otherwise.
  static RankOracle from_lines(std::size_t n, std::vector<Mask> lines);
  // Column matroid: element i is column i.
  static RankOracle linear_rational(RatMatrix columns);
  // Column matroid over GF(q); entries are field codes 0..q-1.
  static RankOracle linear_field(unsigned q, std::vector<std::vector<unsigned>> columns);
  // Element i is values[i] > 0; rank is that of the exponent vectors.
  static RankOracle mullattice(std::vector<Rational> values);
  static RankOracle direct_sum(const RankOracle& a, const RankOracle& b);
  static RankOracle custom(std::size_t n, std::string backend, std::function<unsigned(Mask)> rank);

  std::size_t size() const noexcept { return n_; }
  Mask ground() const noexcept { return full_mask(n_); }
  const std::string& backend() const noexcept { return backend_; }
  unsigned rank(Mask a) const;
  unsigned rank() const { return rank(ground()); }

  // Replaces the backend by a precomputed table (n <= 20).
  RankOracle materialized() const;
  bool is_table() const noexcept { return static_cast<bool>(table_); }

 private:
  std::size_t n_ = 0;
  std::string backend_;
  std::shared_ptr<const std::vector<unsigned>> table_;
  std::function<unsigned(Mask)> fn_;
};

// {x : r(A + x) = r(A)}; ValidationError when A is not a subset of the ground set.
Mask closure(const RankOracle& o, Mask a);

struct PregeometryVerdict {
  bool holds = true;
  // "empty_rank", "unit_increase", "submodularity" or "exchange"
  std::string failed_axiom;
  // A, then the relevant elements (x; x, y; or b, c).
  Mask set = 0;
  std::vector<std::size_t> elements;
  // Randomized spot checks only (ground set above the exhaustive limit).
  bool partial = false;
  std::uint64_t checks = 0;
};

PregeometryVerdict check_pregeometry(const RankOracle& o, std::uint64_t seed = 0, std::uint64_t samples = 200'000);

/// Projectivization: points are the rank-1 closure classes of non-loops. The
/// geometry's own rank oracle is indexed by point.
class Geometry {
 public:
  static Geometry projectivize(const RankOracle& o);

  std::size_t point_count() const noexcept { return points_.size(); }
  // Ground-set elements of each point of the underlying oracle.
  const std::vector<Mask>& point_elements() const noexcept { return points_; }
  const std::vector<Mask>& lines() const noexcept { return lines_; }
  const RankOracle& oracle() const noexcept { return oracle_; }
  unsigned rank(Mask points) const { return oracle_.rank(points); }
  unsigned dimension() const { return oracle_.rank(); }
  Mask closure(Mask points) const { return espo::closure(oracle_, points); }
  // Mask of the line through distinct points a and b.
  Mask line(std::size_t a, std::size_t b) const { return line_of_[a * points_.size() + b]; }

 private:
  RankOracle oracle_;
  std::vector<Mask> points_;
  std::vector<Mask> lines_;
  std::vector<Mask> line_of_;
};

// All closed sets, ordered by (rank, mask).
std::vector<Mask> flats(const Geometry& g, std::size_t cap = 1'000'000);

struct ModularityVerdict {
  bool holds = true;
  std::optional<std::pair<Mask, Mask>> witness;
  std::size_t flat_count = 0;
  bool partial = false;
};

ModularityVerdict check_modularity(const Geometry& g, std::size_t flat_cap = 4096);

struct VeblenVerdict {
  bool holds = true;
  std::optional<std::array<std::size_t, 4>> witness;
};

VeblenVerdict check_veblen(const Geometry& g);

struct Decomposition {
  std::vector<std::vector<std::size_t>> classes;
  bool transitive = true;
};

// PreconditionError (with the modularity witness) when g is not modular.
Decomposition decompose_nonorthogonality(const Geometry& g);

enum class PgStatus { recognized, not_recognized, inconclusive };
std::string to_string(PgStatus s);

/// Result of matching a geometry against PG(m, q) for finite fields only: a
/// not_recognized verdict does not exclude projective spaces over other
/// division rings or non-Desarguesian planes.
struct PgRecognition {
  PgStatus status = PgStatus::not_recognized;
  unsigned q = 0;
  unsigned m = 0;
  std::string reason;
  std::uint64_t nodes = 0;
};

PgRecognition recognize_pg(const Geometry& g, std::uint64_t node_budget = 2'000'000);

// Presets.
RankOracle fano();
// All nonzero vectors of GF(q)^(m+1), one per projective point.
RankOracle projective_space(unsigned m, unsigned q);
// Affine plane over GF(q) as a rank-3 line structure.
RankOracle affine_plane(unsigned q);
// Points a, b, c, d, p; lines {a, b, p} and {c, d, p}.
RankOracle broken_quadrilateral();
RankOracle free_matroid(std::size_t n);

}  // namespace espo
