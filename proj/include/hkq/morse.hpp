#pragma once

#include <cstdint>
#include <vector>

#include "hkq/flats.hpp"
#include "hkq/poly.hpp"
#include "hkq/setup.hpp"

namespace hkq {

/** The critical component C_J of f = |mu_C - beta|^2 for a flat J. */
struct CriticalComponent
{
    Flat flat;
    std::size_t morse_index = 0;  ///< 2(N - |J|)
    Rat critical_value;           ///< |beta_J_perp|^2
    IndexSet euler_exponents;     ///< J^c; the Euler class is the product of u_i over it
    TorusSetup sub_setup;         ///< M_J, weights in a lattice basis of span{u_j : j in J}
};

/// One component per flat, in flat order. Throws NonGenericBeta.
std::vector<CriticalComponent> critical_components(const TorusSetup& s, std::uint64_t seed = 0,
                                                   std::size_t max_n = default_max_n);

/**
 * P(M) from the perfection identity
 *     sum over flats J of q^(N-|J|) (1-q)^rank(J) P(M_J) = 1,
 * solved for the top flat with an exact division by (1-q)^d. The lattice of flats of M_J is
 * the interval below J, so the recursion is memoized over the flats of s.
 * Throws NonGenericBeta, or NonZeroRemainder if the identity has no polynomial solution.
 */
PoincarePoly poincare_morse(const TorusSetup& s, std::size_t max_n = default_max_n);

/// The same recursion without the genericity check; depends on the weights only.
PoincarePoly poincare_from_weights(const RatMatrix& B, std::size_t max_n = default_max_n);

/// J^c for every proper flat J, in flat order.
std::vector<IndexSet> kirwan_kernel_generators(const TorusSetup& s, std::size_t max_n = default_max_n);

/** J^+ and J^- split J^c by the sign of <alpha_J_perp, u_i>. */
struct SignSplit
{
    IndexSet flat;
    IndexSet plus;
    IndexSet minus;
};

/// One split per proper flat. Throws NonGenericAlpha on a vanishing pairing.
std::vector<SignSplit> s1_kernel_generators(const TorusSetup& s, std::size_t max_n = default_max_n);

enum class TrichotomyCase
{
    OnlyModified = 1,  ///< J critical for the modification, not for the original
    Both = 2,          ///< J critical for the original; J and J+{N+1} critical for the modification
    Extended = 3,      ///< J critical for the original; only J+{N+1} critical for the modification
};

struct TrichotomyRow
{
    IndexSet flat;  ///< a flat of the quotient
    bool modified_J = false;
    bool modified_J_plus = false;
    bool original_J = false;
    TrichotomyCase which = TrichotomyCase::OnlyModified;
};

struct TrichotomyTable
{
    std::vector<TrichotomyRow> rows;
    std::size_t count1 = 0, count2 = 0, count3 = 0;
};

/**
 * Classifies every flat of the quotient (weights B_hat, N rows) against the modification
 * (B_tilde, N+1 rows, the last being the new coordinate) and the original B.
 * Throws PartitionViolation if some flat fits no case or some flat of B or B_tilde is missed.
 */
TrichotomyTable trichotomy(const RatMatrix& B_tilde, const RatMatrix& B, const RatMatrix& B_hat,
                           std::size_t max_n = default_max_n);

}  // namespace hkq
