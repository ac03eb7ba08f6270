#include "hkq/flowlab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "hkq/errors.hpp"
#include "hkq/flats.hpp"

namespace hkq::flow {

namespace {

constexpr cd I{0.0, 1.0};

double to_double(const Rat& r)
{
    return r.convert_to<double>();
}

double trace_inner(const CMat& a, const CMat& b)
{
    return (a.adjoint() * b).trace().real();
}

/// H_a v = -i e_a v
CVec apply_h(const CMat& e, const CVec& v)
{
    return -I * (e * v);
}

/// H_a^T v = (-i e_a)^T v
CVec apply_ht(const CMat& e, const CVec& v)
{
    return -I * (e.transpose() * v);
}

double real_inner(const HKPoint& a, const HKPoint& b)
{
    return a.x.dot(b.x).real() + a.y.dot(b.y).real();
}

}  // namespace

GroupRep GroupRep::from_basis(std::vector<CMat> basis)
{
    GroupRep rep;
    if (basis.empty())
    {
        rep.basis = std::move(basis);
        return rep;
    }
    const auto n = basis[0].rows();
    for (const auto& e : basis)
    {
        if (e.rows() != n || e.cols() != n)
            throw InvalidInput("representation matrices must all be square of the same size");
    }
    rep.basis = std::move(basis);
    const auto diag = diagnose(rep);
    if (diag.skew_error > 1e-10)
        throw InvalidInput("basis matrices are not skew-Hermitian (error " + std::to_string(diag.skew_error) + ")");
    if (diag.gram_error > 1e-10)
        throw InvalidInput("basis is not orthonormal for Re tr(A^H B) (error " + std::to_string(diag.gram_error)
                           + ")");
    const std::size_t k = rep.k();
    rep.structure.assign(k * k * k, 0.0);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
        {
            const CMat c = rep.basis[a] * rep.basis[b] - rep.basis[b] * rep.basis[a];
            if (c.norm() > 1e-12)
                rep.abelian = false;
            for (std::size_t j = 0; j < k; ++j)
                rep.structure[(a * k + b) * k + j] = trace_inner(rep.basis[j], c);
        }
    return rep;
}

RepDiagnostics diagnose(const GroupRep& rep)
{
    RepDiagnostics d;
    const std::size_t k = rep.k();
    for (std::size_t a = 0; a < k; ++a)
    {
        d.skew_error = std::max(d.skew_error, (rep.basis[a].adjoint() + rep.basis[a]).cwiseAbs().maxCoeff());
        for (std::size_t b = 0; b < k; ++b)
        {
            const double g = trace_inner(rep.basis[a], rep.basis[b]);
            d.gram_error = std::max(d.gram_error, std::abs(g - (a == b ? 1.0 : 0.0)));
            CMat c = rep.basis[a] * rep.basis[b] - rep.basis[b] * rep.basis[a];
            for (std::size_t j = 0; j < k; ++j)
                c -= trace_inner(rep.basis[j], c) * rep.basis[j];
            d.closure_error = std::max(d.closure_error, c.norm());
        }
    }
    return d;
}

TorusFrame torus_frame(const TorusSetup& s)
{
    const std::size_t n = s.n(), d = s.d();
    RMat B(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            B(i, j) = to_double(s.weights()(i, j));
    TorusFrame fr;
    if (d == 0)
    {
        fr.S = RMat(0, 0);
        fr.W = RMat(n, 0);
        return fr;
    }
    const RMat G = B.transpose() * B;
    const RMat L = G.llt().matrixL();
    fr.S = L.transpose().triangularView<Eigen::Upper>().solve(RMat::Identity(d, d));
    fr.W = B * fr.S;
    return fr;
}

GroupRep torus_rep(const TorusSetup& s)
{
    const auto fr = torus_frame(s);
    std::vector<CMat> basis;
    for (Eigen::Index a = 0; a < fr.W.cols(); ++a)
        basis.push_back(I * fr.W.col(a).cast<cd>().asDiagonal().toDenseMatrix());
    return GroupRep::from_basis(std::move(basis));
}

GroupRep diagonal_circle(std::size_t n)
{
    return GroupRep::from_basis({I / std::sqrt(double(n)) * CMat::Identity(n, n)});
}

namespace {

std::vector<CMat> pauli()
{
    CMat s1(2, 2), s2(2, 2), s3(2, 2);
    s1 << 0, 1, 1, 0;
    s2 << 0, -I, I, 0;
    s3 << 1, 0, 0, -1;
    return {s1, s2, s3};
}

}  // namespace

GroupRep su2_fundamental()
{
    std::vector<CMat> basis;
    for (const auto& s : pauli())
        basis.push_back(I * s / std::numbers::sqrt2);
    return GroupRep::from_basis(std::move(basis));
}

GroupRep su2_doublet_pair()
{
    std::vector<CMat> basis;
    for (const auto& s : pauli())
    {
        CMat e = CMat::Zero(4, 4);
        e.topLeftCorner(2, 2) = I * s / 2.0;
        e.bottomRightCorner(2, 2) = I * s / 2.0;
        basis.push_back(e);
    }
    return GroupRep::from_basis(std::move(basis));
}

GroupRep su2_fundamental_torus()
{
    return GroupRep::from_basis({I * pauli()[2] / std::numbers::sqrt2});
}

Params torus_params(const TorusSetup& s)
{
    const auto fr = torus_frame(s);
    const std::size_t d = s.d();
    RVec alpha(d);
    CVec beta(d);
    for (std::size_t j = 0; j < d; ++j)
    {
        alpha(j) = to_double(s.alpha()[j]);
        beta(j) = cd(to_double(s.beta()[j].re), to_double(s.beta()[j].im));
    }
    return {fr.S.transpose() * alpha, fr.S.transpose().cast<cd>() * beta};
}

Params zero_params(const GroupRep& rep)
{
    return {RVec::Zero(rep.k()), CVec::Zero(rep.k())};
}

HKPoint zero_point(std::size_t n)
{
    return {CVec::Zero(n), CVec::Zero(n)};
}

RVec to_real(const HKPoint& p)
{
    const auto n = p.x.size();
    RVec z(4 * n);
    z << p.x.real(), p.x.imag(), p.y.real(), p.y.imag();
    return z;
}

HKPoint from_real(const RVec& z)
{
    const auto n = z.size() / 4;
    HKPoint p;
    p.x = z.segment(0, n).cast<cd>() + I * z.segment(n, n).cast<cd>();
    p.y = z.segment(2 * n, n).cast<cd>() + I * z.segment(3 * n, n).cast<cd>();
    return p;
}

RVec moment_real(const GroupRep& rep, const RVec& alpha, const CVec& x)
{
    RVec mu(rep.k());
    for (std::size_t a = 0; a < rep.k(); ++a)
        mu(a) = 0.5 * x.dot(apply_h(rep.basis[a], x)).real() - alpha(a);
    return mu;
}

HKMoment moment_hk(const GroupRep& rep, const Params& params, const HKPoint& p)
{
    const std::size_t k = rep.k();
    HKMoment m{RVec(k), RVec(k), RVec(k)};
    for (std::size_t a = 0; a < k; ++a)
    {
        const CMat& e = rep.basis[a];
        m.mu1(a) = 0.5 * p.x.dot(apply_h(e, p.x)).real() - 0.5 * p.y.dot(apply_ht(e, p.y)).real() - params.alpha(a);
        const cd c = (p.y.transpose() * apply_h(e, p.x))(0) - params.beta(a);
        m.mu2(a) = c.real();
        m.mu3(a) = c.imag();
    }
    return m;
}

Function parse_function(const std::string& name)
{
    if (name == "mu2")
        return Function::Mu2;
    if (name == "muR2")
        return Function::R2;
    if (name == "muC2")
        return Function::C2;
    if (name == "muHK2")
        return Function::HK2;
    throw InvalidInput("unknown function '" + name + "' (expected mu2, muR2, muC2 or muHK2)");
}

std::string function_name(Function f)
{
    switch (f)
    {
        case Function::Mu2: return "mu2";
        case Function::R2: return "muR2";
        case Function::C2: return "muC2";
        case Function::HK2: return "muHK2";
    }
    return "?";
}

double value(const GroupRep& rep, Function which, const Params& params, const HKPoint& p)
{
    if (which == Function::Mu2)
        return moment_real(rep, params.alpha, p.x).squaredNorm();
    const auto m = moment_hk(rep, params, p);
    double f = 0;
    if (which == Function::R2 || which == Function::HK2)
        f += m.mu1.squaredNorm();
    if (which == Function::C2 || which == Function::HK2)
        f += m.mu2.squaredNorm() + m.mu3.squaredNorm();
    return f;
}

HKPoint grad(const GroupRep& rep, Function which, const Params& params, const HKPoint& p)
{
    const auto n = p.x.size();
    HKPoint g = zero_point(n);
    if (which == Function::Mu2)
    {
        const RVec mu = moment_real(rep, params.alpha, p.x);
        for (std::size_t a = 0; a < rep.k(); ++a)
            g.x += 2.0 * mu(a) * apply_h(rep.basis[a], p.x);
        return g;
    }
    const auto m = moment_hk(rep, params, p);
    for (std::size_t a = 0; a < rep.k(); ++a)
    {
        const CMat& e = rep.basis[a];
        if (which == Function::R2 || which == Function::HK2)
        {
            g.x += 2.0 * m.mu1(a) * apply_h(e, p.x);
            g.y -= 2.0 * m.mu1(a) * apply_ht(e, p.y);
        }
        if (which == Function::C2 || which == Function::HK2)
        {
            const cd c(m.mu2(a), m.mu3(a));
            g.x += 2.0 * c * apply_ht(e, p.y).conjugate();
            g.y += 2.0 * c * apply_h(e, p.x).conjugate();
        }
    }
    return g;
}

double norm(const HKPoint& p)
{
    return std::sqrt(p.x.squaredNorm() + p.y.squaredNorm());
}

Objective objective(const GroupRep& rep, Function which, const Params& params)
{
    return {[rep, which, params](const RVec& z) { return value(rep, which, params, from_real(z)); },
            [rep, which, params](const RVec& z) { return to_real(grad(rep, which, params, from_real(z))); }};
}

std::string status_name(FlowStatus s)
{
    switch (s)
    {
        case FlowStatus::Converged: return "Converged";
        case FlowStatus::MaxTimeReached: return "MaxTimeReached";
        case FlowStatus::StepUnderflow: return "StepUnderflow";
    }
    return "?";
}

Trajectory integrate(const Objective& obj, const RVec& start, const FlowOptions& opts)
{
    Trajectory traj;
    RVec z = start;
    double fz = obj.f(z);
    RVec g = obj.grad(z);
    if (!std::isfinite(fz) || !g.allFinite())
        throw NonFiniteState("start point has non-finite value or gradient");
    double t = 0;
    traj.samples.push_back({t, z, fz, g.norm()});
    if (g.norm() < opts.grad_tol)
    {
        traj.status = FlowStatus::Converged;
        return traj;
    }

    double h = opts.initial_step;
    RVec k1 = -g;
    while (true)
    {
        if (t >= opts.max_time || traj.steps >= opts.max_steps)
        {
            traj.status = FlowStatus::MaxTimeReached;
            return traj;
        }
        h = std::min(h, opts.max_time - t);

        const RVec k2 = -obj.grad(z + 0.5 * h * k1);
        const RVec k3 = -obj.grad(z + 0.75 * h * k2);
        const RVec z_new = z + h * (2.0 / 9.0 * k1 + 1.0 / 3.0 * k2 + 4.0 / 9.0 * k3);
        const RVec g_new = obj.grad(z_new);
        const RVec k4 = -g_new;
        const RVec err = h * (-5.0 / 72.0 * k1 + 1.0 / 12.0 * k2 + 1.0 / 9.0 * k3 - 1.0 / 8.0 * k4);
        const double f_new = obj.f(z_new);

        double err_norm = 0;
        for (Eigen::Index i = 0; i < z.size(); ++i)
        {
            const double scale = opts.atol + opts.rtol * std::max(std::abs(z(i)), std::abs(z_new(i)));
            err_norm = std::max(err_norm, std::abs(err(i)) / scale);
        }

        const bool finite = std::isfinite(f_new) && g_new.allFinite() && std::isfinite(err_norm);
        if (finite && err_norm <= 1.0 && f_new <= fz)
        {
            t += h;
            z = z_new;
            fz = f_new;
            k1 = k4;
            ++traj.steps;
            traj.samples.push_back({t, z, fz, g_new.norm()});
            if (g_new.norm() < opts.grad_tol)
            {
                traj.status = FlowStatus::Converged;
                return traj;
            }
            const double grow = err_norm > 0 ? 0.9 * std::pow(err_norm, -1.0 / 3.0) : 5.0;
            h *= std::clamp(grow, 1.0, 5.0);
            continue;
        }

        if (finite && err_norm > 1.0)
            h *= std::clamp(0.9 * std::pow(err_norm, -1.0 / 3.0), 0.1, 0.5);
        else
            h *= 0.5;
        if (h < opts.min_step)
        {
            if (!finite)
                throw NonFiniteState("state became non-finite at t = " + std::to_string(t));
            traj.status = FlowStatus::StepUnderflow;
            return traj;
        }
    }
}

Trajectory integrate_flow(const GroupRep& rep, Function which, const Params& params, const HKPoint& start,
                          const FlowOptions& opts)
{
    return integrate(objective(rep, which, params), to_real(start), opts);
}

double critical_value(const TorusSetup& s, Function which, const IndexSet& J)
{
    double v = 0;
    if (which == Function::R2 || which == Function::HK2 || which == Function::Mu2)
    {
        const RatVec ap = alpha_perp(s, J);
        v += to_double(s.inner(ap, ap));
    }
    if (which == Function::C2 || which == Function::HK2)
        v += to_double(s.norm2(project_beta(s, J).second));
    return v;
}

Classification classify_limit(const TorusSetup& s, Function which, const Trajectory& traj,
                              const ClassifyOptions& opts)
{
    Classification c;
    const Sample& last = traj.samples.back();
    c.f_limit = last.f;
    const HKPoint p = from_real(last.state);
    for (std::size_t j = 0; j < s.n(); ++j)
    {
        if (std::norm(p.x(j)) + std::norm(p.y(j)) >= opts.support_tol)
            c.support.push_back(j);
    }
    const IndexSet J = closure(s, c.support);
    const double v = critical_value(s, which, J);
    if (traj.status == FlowStatus::Converged && std::abs(c.f_limit - v) < opts.value_tol)
    {
        c.flat = J;
        c.critical_value = v;
    }
    return c;
}

LojReport lojasiewicz_report(const Trajectory& traj, std::optional<double> f_c, const LojOptions& opts)
{
    const auto& S = traj.samples;
    if (S.empty())
        throw InsufficientTail("empty trajectory");
    LojReport r;
    r.f_c = f_c.value_or(S.back().f);

    // f is nonincreasing, so the usable samples form a prefix
    std::size_t end = 0;
    while (end < S.size() && S[end].f - r.f_c > opts.floor)
        ++end;
    if (end < opts.min_samples)
        throw InsufficientTail(std::to_string(end) + " samples above the noise floor, need "
                               + std::to_string(opts.min_samples));
    const double last = S[end - 1].f - r.f_c;
    const double cutoff = last * std::pow(10.0, opts.decades);
    std::size_t begin = end;
    while (begin > 0 && S[begin - 1].f - r.f_c <= cutoff)
        --begin;
    begin = std::min(begin, end - opts.min_samples);
    r.tail_samples = end - begin;

    r.k_hat = std::numeric_limits<double>::infinity();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = begin; i < end; ++i)
    {
        const double delta = S[i].f - r.f_c;
        r.k_hat = std::min(r.k_hat, S[i].grad_norm / std::pow(delta, 0.75));
        const double lx = std::log(delta), ly = std::log(S[i].grad_norm);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = static_cast<double>(r.tail_samples);
    const double denom = m * sxx - sx * sx;
    r.fitted_exponent = denom > 0 ? (m * sxy - sx * sy) / denom : std::nan("");

    for (std::size_t i = begin; i + 1 < S.size(); ++i)
        r.tail_arclength += (S[i + 1].state - S[i].state).norm();
    r.bound = r.k_hat > 0 ? 4.0 / r.k_hat * std::pow(S[begin].f - r.f_c, 0.25)
                          : std::numeric_limits<double>::infinity();
    return r;
}

double bracket_term(const GroupRep& rep, const HKMoment& m)
{
    const auto n = static_cast<Eigen::Index>(rep.n());
    CMat M1 = CMat::Zero(n, n), M2 = CMat::Zero(n, n), M3 = CMat::Zero(n, n);
    for (std::size_t a = 0; a < rep.k(); ++a)
    {
        M1 += m.mu1(a) * rep.basis[a];
        M2 += m.mu2(a) * rep.basis[a];
        M3 += m.mu3(a) * rep.basis[a];
    }
    return trace_inner(M1, M2 * M3 - M3 * M2);
}

namespace {

/// Gradients of |mu_1|^2, |mu_2|^2 and |mu_3|^2 separately.
std::array<HKPoint, 3> split_gradients(const GroupRep& rep, const HKMoment& m, const HKPoint& p)
{
    const auto n = p.x.size();
    std::array<HKPoint, 3> g{zero_point(n), zero_point(n), zero_point(n)};
    for (std::size_t a = 0; a < rep.k(); ++a)
    {
        const CMat& e = rep.basis[a];
        const CVec hx = apply_h(e, p.x), hty = apply_ht(e, p.y);
        g[0].x += 2.0 * m.mu1(a) * hx;
        g[0].y -= 2.0 * m.mu1(a) * hty;
        g[1].x += 2.0 * m.mu2(a) * hty.conjugate();
        g[1].y += 2.0 * m.mu2(a) * hx.conjugate();
        g[2].x += 2.0 * m.mu3(a) * I * hty.conjugate();
        g[2].y += 2.0 * m.mu3(a) * I * hx.conjugate();
    }
    return g;
}

HKPoint ball_point(Gaussian& rng, std::size_t n, double radius)
{
    HKPoint p = rng.point(n);
    const double r = norm(p);
    const double scale = radius * std::pow(rng.uniform(), 1.0 / double(4 * n)) / (r > 0 ? r : 1.0);
    p.x *= scale;
    p.y *= scale;
    return p;
}

}  // namespace

CrossTermStats cross_term_stats(const GroupRep& rep, const RVec& alpha, std::size_t samples, std::uint64_t seed,
                                double radius)
{
    CrossTermStats st;
    st.samples = samples;
    Gaussian rng(seed);
    const Params params{alpha, CVec::Zero(rep.k())};
    std::vector<double> ratios;
    ratios.reserve(samples);
    constexpr int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (std::size_t s = 0; s < samples; ++s)
    {
        const HKPoint p = ball_point(rng, rep.n(), radius);
        const auto m = moment_hk(rep, params, p);
        const auto g = split_gradients(rep, m, p);
        for (int q = 0; q < 3; ++q)
        {
            const auto& a = g[pairs[q][0]];
            const auto& b = g[pairs[q][1]];
            const double ip = std::abs(real_inner(a, b));
            st.max_pair_absolute[q] = std::max(st.max_pair_absolute[q], ip);
            st.max_pair_relative[q] = std::max(st.max_pair_relative[q], ip / (norm(a) * norm(b) + 1e-30));
        }
        const double br = std::abs(bracket_term(rep, m));
        st.max_bracket = std::max(st.max_bracket, br);
        st.mean_bracket += br / double(samples);
        const double denom = norm(g[1]) + norm(g[2]);
        const double ratio = denom > 0 ? 4.0 * br / (denom * denom) : 0.0;
        ratios.push_back(ratio);
        st.max_ratio = std::max(st.max_ratio, ratio);
        st.mean_ratio += ratio / double(samples);
        const double cross = std::abs(real_inner(g[1], g[2]));
        st.max_identity_residual = std::max(st.max_identity_residual,
                                            std::abs(cross - 4.0 * br) / (cross + 4.0 * br + 1e-300));
    }
    if (!ratios.empty())
    {
        auto mid = ratios.begin() + ratios.size() / 2;
        std::nth_element(ratios.begin(), mid, ratios.end());
        st.median_ratio = *mid;
    }
    return st;
}

namespace {

CMat expm_skew(const CMat& xi)
{
    Eigen::SelfAdjointEigenSolver<CMat> es(-I * xi);
    const CVec phases = (I * es.eigenvalues().cast<cd>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

std::vector<ReductionSample> torus_reduction_check(const GroupRep& rep, const GroupRep& torus_sub,
                                                   std::size_t samples, std::uint64_t seed, double prepare_tol,
                                                   double rel_tol)
{
    const std::size_t k = rep.k(), r = torus_sub.k(), n = rep.n();
    // torus basis in coordinates of rep's basis; rows are orthonormal
    RMat C(r, k);
    for (std::size_t b = 0; b < r; ++b)
        for (std::size_t a = 0; a < k; ++a)
            C(b, a) = trace_inner(rep.basis[a], torus_sub.basis[b]);
    const RMat Pperp = RMat::Identity(k, k) - C.transpose() * C;
    const RVec zero_k = RVec::Zero(k), zero_r = RVec::Zero(r);

    auto off = [&](const CVec& x) { return RVec(Pperp * moment_real(rep, zero_k, x)); };

    Gaussian rng(seed);
    std::vector<ReductionSample> out;
    for (std::size_t s = 0; s < samples; ++s)
    {
        CVec x = rng.point(n).x;
        RVec o = off(x);
        for (int iter = 0; iter < 200 && o.norm() >= prepare_tol; ++iter)
        {
            // Gauss-Newton on the orbit: d mu^a / d theta_b = Re(x^H H_a e_b x)
            RMat Jm(k, k);
            for (std::size_t b = 0; b < k; ++b)
            {
                const CVec v = rep.basis[b] * x;
                for (std::size_t a = 0; a < k; ++a)
                    Jm(a, b) = x.dot(apply_h(rep.basis[a], v)).real();
            }
            const RMat A = Pperp * Jm;
            RVec theta = A.completeOrthogonalDecomposition().solve(-o);
            bool improved = false;
            for (int half = 0; half < 40; ++half)
            {
                CMat xi = CMat::Zero(n, n);
                for (std::size_t b = 0; b < k; ++b)
                    xi += theta(b) * rep.basis[b];
                const CVec x_new = expm_skew(xi) * x;
                const RVec o_new = off(x_new);
                if (o_new.norm() < o.norm())
                {
                    x = x_new;
                    o = o_new;
                    improved = true;
                    break;
                }
                theta *= 0.5;
            }
            if (!improved)
                break;
        }
        ReductionSample rs;
        rs.off_torus = o.norm();
        rs.prepared = rs.off_torus < prepare_tol;
        const Params pk{zero_k, CVec::Zero(k)}, pt{zero_r, CVec::Zero(r)};
        const HKPoint p{x, CVec::Zero(n)};
        rs.grad_k = norm(grad(rep, Function::Mu2, pk, p));
        rs.grad_t = norm(grad(torus_sub, Function::Mu2, pt, p));
        rs.relative_gap = std::abs(rs.grad_k - rs.grad_t) / std::max(rs.grad_k, 1e-300);
        rs.passed = rs.prepared && rs.relative_gap < rel_tol;
        out.push_back(rs);
    }
    return out;
}

std::vector<FlowRecord> run_ensemble(const TorusSetup& s, Function which, std::size_t trials, std::uint64_t seed,
                                     const EnsembleOptions& opts)
{
    const GroupRep rep = torus_rep(s);
    const Params params = torus_params(s);
    std::vector<FlowRecord> out;
    out.reserve(trials);
    for (std::size_t k = 0; k < trials; ++k)
    {
        FlowRecord rec;
        rec.seed = seed + k;
        Gaussian rng(rec.seed);
        const HKPoint start = rng.point(s.n(), opts.start_scale);
        Trajectory traj = integrate_flow(rep, which, params, start, opts.flow);
        rec.status = traj.status;
        rec.f_limit = traj.samples.back().f;
        const auto cls = classify_limit(s, which, traj, opts.classify);
        rec.flat = cls.flat;
        if (traj.status == FlowStatus::Converged)
        {
            try
            {
                rec.loj = lojasiewicz_report(traj, cls.flat ? std::optional(cls.critical_value) : std::nullopt,
                                             opts.loj);
            }
            catch (const InsufficientTail& e)
            {
                rec.loj_error = e.what();
            }
        }
        if (opts.keep_trajectories)
            rec.trajectory = std::move(traj);
        out.push_back(std::move(rec));
    }
    return out;
}

double Gaussian::uniform()
{
    // 53 random bits in (0, 1]
    return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
}

double Gaussian::normal()
{
    if (spare_)
    {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(th);
    return r * std::cos(th);
}

HKPoint Gaussian::point(std::size_t n, double scale)
{
    HKPoint p = zero_point(n);
    for (std::size_t j = 0; j < n; ++j)
        p.x(j) = scale * cd(normal(), normal());
    for (std::size_t j = 0; j < n; ++j)
        p.y(j) = scale * cd(normal(), normal());
    return p;
}

}  // namespace hkq::flow
