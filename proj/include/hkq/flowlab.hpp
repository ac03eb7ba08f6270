#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hkq/setup.hpp"

namespace hkq::flow {

using cd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/**
 * A unitary representation of a compact group K on C^n, given by a basis e_a of its Lie
 * algebra (skew-Hermitian n x n matrices) orthonormal for <A, B> = Re tr(A^H B).
 */
struct GroupRep
{
    std::vector<CMat> basis;
    std::vector<double> structure;  ///< f_ab^c at (a * k + b) * k + c, with [e_a, e_b] = f_ab^c e_c
    bool abelian = true;

    std::size_t n() const { return basis.empty() ? 0 : static_cast<std::size_t>(basis[0].rows()); }
    std::size_t k() const { return basis.size(); }

    /// Validates skew-Hermitian and orthonormal (InvalidInput) and derives structure constants.
    static GroupRep from_basis(std::vector<CMat> basis);
};

struct RepDiagnostics
{
    double skew_error = 0;     ///< max |e_a^H + e_a|
    double gram_error = 0;     ///< max |<e_a, e_b> - delta_ab|
    double closure_error = 0;  ///< max residual of [e_a, e_b] outside span{e_c}
};

RepDiagnostics diagnose(const GroupRep& rep);

/// Orthonormal frame of t: columns of S with S^T G S = I, and W = B S.
struct TorusFrame
{
    RMat S;
    RMat W;
};

TorusFrame torus_frame(const TorusSetup& s);

/// The torus of a setup acting diagonally on C^N with e_a = i diag(W_a).
GroupRep torus_rep(const TorusSetup& s);

/// Circle acting by scalars on C^n, e = i Id / sqrt(n).
GroupRep diagonal_circle(std::size_t n);

GroupRep su2_fundamental();
GroupRep su2_doublet_pair();
/// The maximal torus of su2_fundamental(), spanned by its third basis element.
GroupRep su2_fundamental_torus();

/** Level parameters in the rep's basis. */
struct Params
{
    RVec alpha;
    CVec beta;
};

/// alpha and beta of the setup in the orthonormal frame (S^T alpha, S^T beta).
Params torus_params(const TorusSetup& s);

Params zero_params(const GroupRep& rep);

struct HKPoint
{
    CVec x;
    CVec y;
};

HKPoint zero_point(std::size_t n);

/// (Re x, Im x, Re y, Im y)
RVec to_real(const HKPoint& p);
HKPoint from_real(const RVec& z);

/// mu^a(x) = 1/2 x^H H_a x - alpha_a with H_a = -i e_a.
RVec moment_real(const GroupRep& rep, const RVec& alpha, const CVec& x);

/**
 * mu_1^a = 1/2 x^H H_a x - 1/2 y^H H_a^T y - alpha_a,
 * (mu_2 + i mu_3)^a = y^T H_a x - beta_a.
 * The fiber coordinate y carries the dual action, whose generator is -e_a^T.
 */
struct HKMoment
{
    RVec mu1;
    RVec mu2;
    RVec mu3;
};

HKMoment moment_hk(const GroupRep& rep, const Params& params, const HKPoint& p);

enum class Function
{
    Mu2,  ///< |mu - alpha|^2 on V (y ignored)
    R2,   ///< |mu_1|^2
    C2,   ///< |mu_2 + i mu_3|^2
    HK2,  ///< |mu_1|^2 + |mu_2 + i mu_3|^2
};

Function parse_function(const std::string& name);
std::string function_name(Function f);

double value(const GroupRep& rep, Function which, const Params& params, const HKPoint& p);

/// Gradient for the real inner product Re(u^H v) on C^n x C^n.
HKPoint grad(const GroupRep& rep, Function which, const Params& params, const HKPoint& p);

double norm(const HKPoint& p);

/** Flow on R^m for an arbitrary smooth function. */
struct Objective
{
    std::function<double(const RVec&)> f;
    std::function<RVec(const RVec&)> grad;
};

Objective objective(const GroupRep& rep, Function which, const Params& params);

struct FlowOptions
{
    double max_time = 1e4;
    double grad_tol = 1e-8;
    double rtol = 1e-9;
    double atol = 1e-12;
    double initial_step = 1e-3;
    double min_step = 1e-14;
    std::size_t max_steps = 2'000'000;
};

enum class FlowStatus
{
    Converged,
    MaxTimeReached,
    StepUnderflow,
};

std::string status_name(FlowStatus s);

struct Sample
{
    double t;
    RVec state;
    double f;
    double grad_norm;
};

struct Trajectory
{
    std::vector<Sample> samples;
    FlowStatus status = FlowStatus::MaxTimeReached;
    std::size_t steps = 0;
};

/**
 * Integrates z' = -grad f(z) with an embedded Bogacki-Shampine 3(2) pair. A step is accepted
 * only if its error estimate is within tolerance and f does not increase; otherwise the step
 * is halved. Throws NonFiniteState on overflow.
 */
Trajectory integrate(const Objective& obj, const RVec& start, const FlowOptions& opts = {});

Trajectory integrate_flow(const GroupRep& rep, Function which, const Params& params, const HKPoint& start,
                          const FlowOptions& opts = {});

/** Result of matching a limit point against the critical components. */
struct Classification
{
    std::optional<IndexSet> flat;  ///< empty when unresolved
    IndexSet support;              ///< {j : |x_j|^2 + |y_j|^2 >= tol}
    double f_limit = 0;
    double critical_value = 0;     ///< of the matched flat, if any
};

struct ClassifyOptions
{
    double support_tol = 1e-6;
    double value_tol = 1e-6;
};

/// The critical value of `which` on C_J: |beta_J_perp|^2 (C2), |alpha_J_perp|^2 (R2), or their sum (HK2).
double critical_value(const TorusSetup& s, Function which, const IndexSet& J);

Classification classify_limit(const TorusSetup& s, Function which, const Trajectory& traj,
                              const ClassifyOptions& opts = {});

struct LojOptions
{
    double decades = 2;    ///< tail: f - f_c within this many decades of its last value
    double floor = 1e-14;  ///< samples with f - f_c below this are rounding noise
    std::size_t min_samples = 3;
};

struct LojReport
{
    double f_c = 0;
    double k_hat = 0;
    double fitted_exponent = 0;
    double tail_arclength = 0;
    double bound = 0;  ///< 4 / k_hat * (f(x(T)) - f_c)^(1/4), T the start of the tail
    std::size_t tail_samples = 0;
};

/// Throws InsufficientTail. f_c defaults to the last value of f.
LojReport lojasiewicz_report(const Trajectory& traj, std::optional<double> f_c = std::nullopt,
                             const LojOptions& opts = {});

struct CrossTermStats
{
    std::size_t samples = 0;
    double max_pair_relative[3] = {0, 0, 0};  ///< pairs (1,2), (1,3), (2,3)
    double max_pair_absolute[3] = {0, 0, 0};
    double max_bracket = 0;                   ///< max |<mu_1, [mu_2, mu_3]>|
    double mean_bracket = 0;
    double max_ratio = 0;                     ///< 4 |<mu_1,[mu_2,mu_3]>| / (|grad f_2| + |grad f_3|)^2
    double mean_ratio = 0;
    double median_ratio = 0;
    double max_identity_residual = 0;         ///< | |<grad f_2, grad f_3>| - 4 |<mu_1,[mu_2,mu_3]>| | relative
};

/// <mu_1, [mu_2, mu_3]> with each mu viewed as sum_a mu^a e_a.
double bracket_term(const GroupRep& rep, const HKMoment& m);

/// States drawn uniformly from the ball of the given radius in C^n x C^n; beta = 0.
CrossTermStats cross_term_stats(const GroupRep& rep, const RVec& alpha, std::size_t samples, std::uint64_t seed,
                                double radius = 1.0);

struct ReductionSample
{
    bool prepared = false;      ///< off-torus moment components driven below the threshold
    double off_torus = 0;       ///< |P_perp mu(x)| after preparation
    double grad_k = 0;
    double grad_t = 0;
    double relative_gap = 0;
    bool passed = false;
};

/**
 * For |mu - alpha|^2 on V (alpha = 0): moves random x along its K-orbit until mu(x) lies in the
 * torus subalgebra, then compares |grad f_K| with |grad f_T|. torus_sub must use basis elements
 * lying in the span of rep's basis.
 */
std::vector<ReductionSample> torus_reduction_check(const GroupRep& rep, const GroupRep& torus_sub,
                                                   std::size_t samples, std::uint64_t seed,
                                                   double prepare_tol = 1e-12, double rel_tol = 1e-8);

struct FlowRecord
{
    std::uint64_t seed = 0;
    FlowStatus status = FlowStatus::MaxTimeReached;
    double f_limit = 0;
    std::optional<IndexSet> flat;
    std::optional<LojReport> loj;
    std::string loj_error;
    Trajectory trajectory;
};

struct EnsembleOptions
{
    FlowOptions flow;
    ClassifyOptions classify;
    LojOptions loj;
    double start_scale = 1.0;
    bool keep_trajectories = false;
};

/// One trajectory per seed s, s + 1, ..., from Gaussian starts; results ordered by seed.
std::vector<FlowRecord> run_ensemble(const TorusSetup& s, Function which, std::size_t trials, std::uint64_t seed,
                                     const EnsembleOptions& opts = {});

/** Deterministic normal variates from mt19937_64 (Box-Muller), independent of the library's distributions. */
class Gaussian
{
    public:
        explicit Gaussian(std::uint64_t seed) : rng_(seed) {}
        double uniform();
        double normal();
        HKPoint point(std::size_t n, double scale = 1.0);

    private:
        std::mt19937_64 rng_;
        std::optional<double> spare_;
};

}  // namespace hkq::flow
