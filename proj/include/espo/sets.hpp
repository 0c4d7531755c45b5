#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "espo/filtration.hpp"
#include "espo/group.hpp"
#include "espo/point_set.hpp"

namespace espo {

enum class ProgressionKind { symmetric, one_sided };

// {k * base : -M <= k <= M} or {k * base : 0 <= k < M}.
PointSet progression(const GroupModel& g, const GroupElement& base, std::size_t M,
                     ProgressionKind kind = ProgressionKind::symmetric);

// X_N = {alpha_h(g) : h = n + mi + pj + qk, |n|,|m|,|p|,|q| <= N} in the
// multiplicative torus of dimension 4. GenericityError unless the exponent
// matrix of g has rank 4.
PointSet quaternion_ball_image(const GroupModel& g, long N, const GroupElement& generator);
bool is_generic_quaternion_point(const GroupModel& g, const GroupElement& p);

using ScalarAction = std::function<GroupElement(const RingElement&, const GroupElement&)>;

// Action of the standard scalars of a filtration on g. Supported: integer
// leaves on any group, rational leaves on additive groups, and the quaternion
// order on the 4-dimensional multiplicative torus. Otherwise ValidationError.
ScalarAction default_scalar_action(const FiltrationSpec& spec, const GroupModel& g);

// Module extension acting through one endomorphism per generator a_i,
// with integer leaf coordinates.
ScalarAction module_scalar_action(const GroupModel& g, std::vector<Endomorphism> basis);

// {sum_i lambda_i gamma_i : lambda_i in scalars}; BudgetError past cap combinations.
PointSet approximate_module(const GroupModel& g, std::span<const RingElement> scalars, const ScalarAction& action,
                            std::span<const GroupElement> generators, std::size_t cap = 20'000'000,
                            unsigned workers = 0);
PointSet approximate_module(const GroupModel& g, const FiltrationSpec& spec, unsigned n,
                            std::span<const GroupElement> generators, std::size_t cap = 20'000'000,
                            unsigned workers = 0);

}  // namespace espo
