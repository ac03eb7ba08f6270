#pragma once

#include <vector>

#include "hkq/flats.hpp"
#include "hkq/poly.hpp"
#include "hkq/setup.hpp"

namespace hkq {

/** prod_{i in plain} l_i * prod_{j in shifted} (u0 - l_j). */
struct RingGenerator
{
    IndexSet plain;
    IndexSet shifted;  ///< empty for ordinary presentations
};

/**
 * Q[x_1..x_v] / (generators), every variable of cohomological degree 2.
 * For the S^1-equivariant presentation the last variable is u0.
 */
struct RingPresentation
{
    std::size_t num_vars = 0;
    std::vector<RatVec> linear_forms;  ///< l_i for i = 1..N, each of length num_vars
    bool equivariant = false;
    std::vector<RingGenerator> generators;
};

/** dims[m] = dimension of the quotient in cohomological degree 2m. */
struct HilbertTable
{
    std::vector<std::size_t> dims;

    friend bool operator==(const HilbertTable&, const HilbertTable&) = default;
};

/// Variables x_1..x_d, l_i = u_i, one generator J^c per proper flat.
RingPresentation kirwan_presentation(const TorusSetup& s, std::size_t max_n = default_max_n);

/// Variables x_1..x_d, u0; one generator per proper flat from the sign split. Throws NonGenericAlpha.
RingPresentation s1_presentation(const TorusSetup& s, std::size_t max_n = default_max_n);

/**
 * Graded dimensions up to max_deg. The degree-m part of the ideal is built as the span of
 * x_k times the degree-(m-1) part together with the generators of degree m.
 */
HilbertTable hilbert_series(const RingPresentation& pres, std::size_t max_deg);

/// N - d + 1, one degree past where an ordinary presentation must vanish.
std::size_t default_max_deg(const TorusSetup& s);

/// sum dims[m] q^m
PoincarePoly poincare_from_hilbert(const HilbertTable& table);

/// Human-readable generator, e.g. "x1*x2*(x1+x2)" or "(u0-x1)^2".
std::string generator_to_string(const RingPresentation& pres, const RingGenerator& g);

}  // namespace hkq
