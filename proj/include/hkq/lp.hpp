#pragma once

#include <vector>

#include "hkq/rational.hpp"

namespace hkq {

/** coef . x >= rhs */
struct Inequality
{
    RatVec coef;
    Rat rhs;
};

/**
 * Exact feasibility of a system of non-strict linear inequalities over Q^nvars by
 * Fourier-Motzkin elimination, pruned with Chernikov's history rule. Intended for
 * small systems (a handful of variables, a few dozen inequalities).
 */
bool fm_feasible(const std::vector<Inequality>& system, std::size_t nvars);

/**
 * Nonemptiness of the open polyhedron {y : sign_i * (a_i . y - b_i) > 0}, decided by
 * homogenizing to the closed system sign_i * (a_i . y - b_i t) >= 1, t >= 1.
 */
bool strictly_feasible(const std::vector<RatVec>& a, const RatVec& b, const std::vector<int>& signs,
                       std::size_t dim);

/// True iff the cone {v : sign_i * a_i . v >= 0} is {0}. Assumes the a_i span Q^dim.
bool cone_is_trivial(const std::vector<RatVec>& a, const std::vector<int>& signs, std::size_t dim);

}  // namespace hkq
