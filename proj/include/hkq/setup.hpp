#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hkq/matrix.hpp"
#include "hkq/rational.hpp"

namespace hkq {

/// Sorted set of 0-based weight indices. User-facing output converts to 1-based.
using IndexSet = std::vector<std::size_t>;

/// The inner product on t induced by t -> R^N: G = B^T B, and its inverse (the metric on t*).
struct Metric
{
    RatMatrix G;
    RatMatrix Ginv;
};

/**
 * One hypertoric problem: the weight matrix B (row j is u_j in t*) together with
 * the real parameter alpha in t* and complex parameter beta in t*_C.
 *
 * B must have full column rank d; this is checked at construction.
 */
class TorusSetup
{
    public:
        /// Validating constructor. Throws InvalidInput (non-integral weights),
        /// RankDeficient or DimensionMismatch.
        static TorusSetup create(RatMatrix weights, RatVec alpha, CRatVec beta);
        /// Same, with alpha = 0 and beta = 0.
        static TorusSetup create(RatMatrix weights);

        std::size_t n() const { return B_.rows(); }
        std::size_t d() const { return B_.cols(); }

        const RatMatrix& weights() const { return B_; }
        RatVec weight(std::size_t j) const { return B_.row(j); }
        const RatVec& alpha() const { return alpha_; }
        const CRatVec& beta() const { return beta_; }
        const Metric& metric() const { return metric_; }

        TorusSetup with_parameters(RatVec alpha, CRatVec beta) const;

        /// a^T Ginv b on t*.
        Rat inner(const RatVec& a, const RatVec& b) const;
        /// Hermitian extension, conjugate-linear in the second slot.
        CRat hermitian(const CRatVec& a, const CRatVec& b) const;
        /// <a, u> for complex a and real u.
        CRat pairing(const CRatVec& a, const RatVec& u) const;
        Rat norm2(const CRatVec& a) const;

    private:
        TorusSetup() = default;

        RatMatrix B_;
        RatVec alpha_;
        CRatVec beta_;
        Metric metric_;
};

/** Gale dual data: C B = 0 with rank N - d, and offsets with B^T dvec = alpha. */
struct GaleData
{
    RatMatrix C;  ///< (N - d) x N, primitive integer rows
    RatVec dvec;  ///< length N

    RatVec normal(std::size_t i) const { return C.col(i); }
};

GaleData gale(const TorusSetup& s);

/// Rows of B indexed by J, reduced to a linearly independent subset (in index order).
RatMatrix independent_rows(const TorusSetup& s, const IndexSet& J);

/// Orthogonal projection of a real covector onto t_J in the Ginv metric.
RatVec project(const TorusSetup& s, const IndexSet& J, const RatVec& v);

/// beta = beta_J + beta_J_perp with beta_J in span_C{u_j : j in J}.
std::pair<CRatVec, CRatVec> project_beta(const TorusSetup& s, const IndexSet& J);

/// alpha_J_perp, the real analogue used by the S^1-equivariant signs.
RatVec alpha_perp(const TorusSetup& s, const IndexSet& J);

/** Why a parameter failed genericity. Indices are 0-based. */
struct GenericityWitness
{
    IndexSet flat;                      ///< the critical set J
    std::optional<std::size_t> index;   ///< i not in J with vanishing pairing
    std::optional<IndexSet> other_flat; ///< J' with beta_J_perp == beta_J'_perp
    std::string reason;
};

struct GenericityResult
{
    bool generic = true;
    std::optional<GenericityWitness> witness;

    explicit operator bool() const { return generic; }
};

/// <beta_J_perp, u_i> != 0 for every flat J and i not in J, and the beta_J_perp are pairwise distinct.
GenericityResult is_generic_beta(const TorusSetup& s);
GenericityResult is_generic_beta(const TorusSetup& s, const std::vector<IndexSet>& flats);

/// <alpha_J_perp, u_i> != 0 for proper flats J and i not in J, and the Gale dual arrangement is simple.
GenericityResult is_generic_alpha(const TorusSetup& s);
GenericityResult is_generic_alpha(const TorusSetup& s, const std::vector<IndexSet>& flats);

/// True iff the critical values |beta_J_perp|^2 over all flats are pairwise distinct.
bool critical_values_distinct(const TorusSetup& s, const std::vector<IndexSet>& flats);

struct SampleOptions
{
    std::size_t max_attempts = 4096;
    long initial_box = 3;            ///< entries drawn from [-box, box]
    std::size_t attempts_per_box = 32; ///< box doubles after this many rejections
};

/**
 * Deterministic rejection sampling of integer alpha and Gaussian-integer beta that pass
 * both genericity predicates and give pairwise distinct critical values.
 * Throws SamplingExhausted when the attempt budget runs out.
 */
std::pair<RatVec, CRatVec> sample_generic(const TorusSetup& s, std::uint64_t seed,
                                          const SampleOptions& opts = {});

/// The setup with parameters replaced by sample_generic(s, seed).
TorusSetup with_generic_parameters(const TorusSetup& s, std::uint64_t seed);

/// [[B | c], [0 ... 0 | -1]], shape (N+1) x (d+1). Throws CircleInsideTorus if c lies in colspan(B).
RatMatrix modified_weights(const RatMatrix& B, const RatVec& c);
/// [B | c], shape N x (d+1). Throws CircleInsideTorus if c lies in colspan(B).
RatMatrix quotient_weights(const RatMatrix& B, const RatVec& c);

/// Modification by the circle with weights c, with freshly sampled generic parameters.
TorusSetup modify(const TorusSetup& s, const RatVec& c, std::uint64_t seed);
/// Modification with caller-provided parameters for the (d+1)-dimensional torus.
TorusSetup modify(const TorusSetup& s, const RatVec& c, RatVec alpha, CRatVec beta);

TorusSetup quotient_circle(const TorusSetup& s, const RatVec& c, std::uint64_t seed);
TorusSetup quotient_circle(const TorusSetup& s, const RatVec& c, RatVec alpha, CRatVec beta);

/// Recovers (B, B_hat) from a modified weight matrix B_tilde.
std::pair<RatMatrix, RatMatrix> split_modified(const RatMatrix& B_tilde);

/**
 * Integer row Hermite normal form: returns the nonzero rows H (r x d) of the HNF of an
 * integral matrix, a basis of the lattice generated by its rows.
 */
RatMatrix hermite_basis(const RatMatrix& integral_rows);

/// Weights u_j (j in J) expressed in the Hermite basis of the lattice they generate.
/// Shape |J| x rank(J), integral.
RatMatrix restricted_weights(const TorusSetup& s, const IndexSet& J);

}  // namespace hkq
