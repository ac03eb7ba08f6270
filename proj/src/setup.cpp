#include "hkq/setup.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "hkq/errors.hpp"
#include "hkq/flats.hpp"

namespace hkq {

TorusSetup TorusSetup::create(RatMatrix weights, RatVec alpha, CRatVec beta)
{
    if (!weights.is_integral())
        throw InvalidInput("weight matrix must have integer entries");
    const std::size_t d = weights.cols();
    if (alpha.size() != d)
        throw DimensionMismatch("alpha has length " + std::to_string(alpha.size())
                                + ", expected d = " + std::to_string(d));
    if (beta.size() != d)
        throw DimensionMismatch("beta has length " + std::to_string(beta.size())
                                + ", expected d = " + std::to_string(d));
    if (rank(weights) != d)
        throw RankDeficient("weight matrix has dependent columns (rank "
                            + std::to_string(rank(weights)) + " < d = " + std::to_string(d) + ")");
    TorusSetup s;
    s.metric_.G = weights.transpose() * weights;
    s.metric_.Ginv = inverse(s.metric_.G);
    s.B_ = std::move(weights);
    s.alpha_ = std::move(alpha);
    s.beta_ = std::move(beta);
    return s;
}

TorusSetup TorusSetup::create(RatMatrix weights)
{
    const std::size_t d = weights.cols();
    return create(std::move(weights), RatVec(d), CRatVec(d));
}

TorusSetup TorusSetup::with_parameters(RatVec alpha, CRatVec beta) const
{
    if (alpha.size() != d() || beta.size() != d())
        throw DimensionMismatch("parameter length does not match d = " + std::to_string(d()));
    TorusSetup s = *this;
    s.alpha_ = std::move(alpha);
    s.beta_ = std::move(beta);
    return s;
}

Rat TorusSetup::inner(const RatVec& a, const RatVec& b) const
{
    return dot(a, metric_.Ginv * b);
}

CRat TorusSetup::hermitian(const CRatVec& a, const CRatVec& b) const
{
    RatVec ar = real_part(a), ai = imag_part(a);
    RatVec br = real_part(b), bi = imag_part(b);
    return {inner(ar, br) + inner(ai, bi), inner(ai, br) - inner(ar, bi)};
}

CRat TorusSetup::pairing(const CRatVec& a, const RatVec& u) const
{
    return {inner(real_part(a), u), inner(imag_part(a), u)};
}

Rat TorusSetup::norm2(const CRatVec& a) const
{
    return hermitian(a, a).re;
}

GaleData gale(const TorusSetup& s)
{
    GaleData g;
    const RatMatrix Bt = s.weights().transpose();
    g.C = nullspace(Bt).transpose();
    if (g.C.rows() == 0)
        g.C = RatMatrix(0, s.n());
    // minimal-support offsets: solve on the pivot coordinates, zero elsewhere
    g.dvec = RatVec(s.n());
    if (s.d() > 0)
    {
        Echelon e = rref(Bt);
        RatMatrix sub = Bt.select_cols(e.pivots);
        RatVec x = *solve(sub, s.alpha());
        for (std::size_t k = 0; k < e.pivots.size(); ++k)
            g.dvec[e.pivots[k]] = x[k];
    }
    return g;
}

RatMatrix independent_rows(const TorusSetup& s, const IndexSet& J)
{
    RowSpace span(s.d());
    std::vector<std::size_t> keep;
    for (auto j : J)
    {
        if (span.insert(s.weight(j)))
            keep.push_back(j);
    }
    return s.weights().select_rows(keep);
}

RatVec project(const TorusSetup& s, const IndexSet& J, const RatVec& v)
{
    const RatMatrix U = independent_rows(s, J);
    if (U.rows() == 0)
        return RatVec(s.d());
    const RatMatrix UG = U * s.metric().Ginv;
    const RatMatrix M = UG * U.transpose();
    const RatVec coef = inverse(M) * (UG * v);
    return U.transpose() * coef;
}

std::pair<CRatVec, CRatVec> project_beta(const TorusSetup& s, const IndexSet& J)
{
    const RatVec re = project(s, J, real_part(s.beta()));
    const RatVec im = project(s, J, imag_part(s.beta()));
    CRatVec bJ = make_complex(re, im);
    CRatVec perp(s.d());
    for (std::size_t k = 0; k < s.d(); ++k)
        perp[k] = s.beta()[k] - bJ[k];
    return {std::move(bJ), std::move(perp)};
}

RatVec alpha_perp(const TorusSetup& s, const IndexSet& J)
{
    return s.alpha() - project(s, J, s.alpha());
}

GenericityResult is_generic_beta(const TorusSetup& s)
{
    return is_generic_beta(s, flat_sets(enumerate_flats(s)));
}

GenericityResult is_generic_beta(const TorusSetup& s, const std::vector<IndexSet>& flats)
{
    std::vector<CRatVec> perps;
    perps.reserve(flats.size());
    for (const auto& J : flats)
    {
        CRatVec perp = project_beta(s, J).second;
        for (auto i : complement(J, s.n()))
        {
            if (s.pairing(perp, s.weight(i)).is_zero())
                return {false, GenericityWitness{J, i, std::nullopt,
                                                 "<beta_J_perp, u_i> vanishes"}};
        }
        perps.push_back(std::move(perp));
    }
    for (std::size_t a = 0; a < flats.size(); ++a)
        for (std::size_t b = a + 1; b < flats.size(); ++b)
        {
            if (perps[a] == perps[b])
                return {false, GenericityWitness{flats[a], std::nullopt, flats[b],
                                                 "beta_J_perp coincides for two flats"}};
        }
    return {};
}

GenericityResult is_generic_alpha(const TorusSetup& s)
{
    return is_generic_alpha(s, flat_sets(enumerate_flats(s)));
}

GenericityResult is_generic_alpha(const TorusSetup& s, const std::vector<IndexSet>& flats)
{
    for (const auto& J : flats)
    {
        if (J.size() == s.n())
            continue;
        const RatVec perp = alpha_perp(s, J);
        for (auto i : complement(J, s.n()))
        {
            if (s.inner(perp, s.weight(i)) == 0)
                return {false, GenericityWitness{J, i, std::nullopt,
                                                 "<alpha_J_perp, u_i> vanishes"}};
        }
    }
    // Simplicity: hyperplanes {i notin F} have dependent normals exactly when F spans a
    // proper subspace, and they meet exactly when alpha lies in t_F.
    for (const auto& F : flats)
    {
        if (F.size() == s.n())
            continue;
        RowSpace span(s.d());
        for (auto j : F)
            span.insert(s.weight(j));
        if (span.contains(s.alpha()))
            return {false, GenericityWitness{F, std::nullopt, std::nullopt,
                                             "arrangement not simple: alpha lies in t_F"}};
    }
    return {};
}

bool critical_values_distinct(const TorusSetup& s, const std::vector<IndexSet>& flats)
{
    std::vector<Rat> values;
    for (const auto& J : flats)
        values.push_back(s.norm2(project_beta(s, J).second));
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) == values.end();
}

std::pair<RatVec, CRatVec> sample_generic(const TorusSetup& s, std::uint64_t seed,
                                          const SampleOptions& opts)
{
    // callers enforce the enumeration bound before asking for parameters
    const std::vector<IndexSet> flats = flat_sets(enumerate_flats(s, std::max(default_max_n, s.n())));
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x632BE59BD9B4E019ULL);
    long box = opts.initial_box;
    auto draw = [&]() {
        const auto width = static_cast<std::uint64_t>(2 * box + 1);
        return Rat(static_cast<long>(rng() % width) - box);
    };
    for (std::size_t attempt = 0; attempt < opts.max_attempts; ++attempt)
    {
        if (attempt > 0 && attempt % opts.attempts_per_box == 0)
            box *= 2;
        RatVec alpha(s.d());
        CRatVec beta(s.d());
        for (std::size_t k = 0; k < s.d(); ++k)
            alpha[k] = draw();
        for (std::size_t k = 0; k < s.d(); ++k)
        {
            Rat re = draw();
            Rat im = draw();
            beta[k] = CRat(re, im);
        }
        TorusSetup trial = s.with_parameters(alpha, beta);
        if (is_generic_alpha(trial, flats) && is_generic_beta(trial, flats)
            && critical_values_distinct(trial, flats))
            return {std::move(alpha), std::move(beta)};
    }
    throw SamplingExhausted("no generic parameters after " + std::to_string(opts.max_attempts)
                            + " attempts");
}

TorusSetup with_generic_parameters(const TorusSetup& s, std::uint64_t seed)
{
    auto [alpha, beta] = sample_generic(s, seed);
    return s.with_parameters(std::move(alpha), std::move(beta));
}

namespace {

void check_column(const RatMatrix& B, const RatVec& c)
{
    if (c.size() != B.rows())
        throw DimensionMismatch("circle weight vector has length " + std::to_string(c.size())
                                + ", expected N = " + std::to_string(B.rows()));
    for (const auto& x : c)
    {
        if (!is_integer(x))
            throw InvalidInput("circle weights must be integers");
    }
    RatMatrix cm = RatMatrix::from_columns({c}, B.rows());
    if (rank(hstack(B, cm)) != B.cols() + 1)
        throw CircleInsideTorus("column lies in the column span of B");
}

}  // namespace

RatMatrix quotient_weights(const RatMatrix& B, const RatVec& c)
{
    check_column(B, c);
    return hstack(B, RatMatrix::from_columns({c}, B.rows()));
}

RatMatrix modified_weights(const RatMatrix& B, const RatVec& c)
{
    RatMatrix top = quotient_weights(B, c);
    RatMatrix last(1, B.cols() + 1);
    last(0, B.cols()) = -1;
    return vstack(top, last);
}

TorusSetup modify(const TorusSetup& s, const RatVec& c, std::uint64_t seed)
{
    return with_generic_parameters(TorusSetup::create(modified_weights(s.weights(), c)), seed);
}

TorusSetup modify(const TorusSetup& s, const RatVec& c, RatVec alpha, CRatVec beta)
{
    return TorusSetup::create(modified_weights(s.weights(), c), std::move(alpha), std::move(beta));
}

TorusSetup quotient_circle(const TorusSetup& s, const RatVec& c, std::uint64_t seed)
{
    return with_generic_parameters(TorusSetup::create(quotient_weights(s.weights(), c)), seed);
}

TorusSetup quotient_circle(const TorusSetup& s, const RatVec& c, RatVec alpha, CRatVec beta)
{
    return TorusSetup::create(quotient_weights(s.weights(), c), std::move(alpha), std::move(beta));
}

std::pair<RatMatrix, RatMatrix> split_modified(const RatMatrix& Bt)
{
    if (Bt.rows() == 0 || Bt.cols() == 0)
        throw DimensionMismatch("not a modified weight matrix");
    std::vector<std::size_t> rows(Bt.rows() - 1), cols(Bt.cols() - 1);
    for (std::size_t i = 0; i < rows.size(); ++i)
        rows[i] = i;
    for (std::size_t j = 0; j < cols.size(); ++j)
        cols[j] = j;
    RatMatrix hat = Bt.select_rows(rows);
    RatMatrix base = hat.select_cols(cols);
    return {std::move(base), std::move(hat)};
}

RatMatrix hermite_basis(const RatMatrix& m)
{
    using Row = std::vector<BigInt>;
    std::vector<Row> a(m.rows(), Row(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
        {
            if (!is_integer(m(i, j)))
                throw InvalidInput("hermite_basis: non-integral entry");
            a[i][j] = num(m(i, j));
        }
    auto sub_mul = [](Row& dst, const Row& src, const BigInt& q) {
        for (std::size_t j = 0; j < dst.size(); ++j)
            dst[j] -= q * src[j];
    };
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < a.size(); ++c)
    {
        for (;;)
        {
            std::size_t best = a.size();
            for (std::size_t i = r; i < a.size(); ++i)
            {
                if (a[i][c] != 0 && (best == a.size() || abs(a[i][c]) < abs(a[best][c])))
                    best = i;
            }
            if (best == a.size())
                break;
            std::swap(a[r], a[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < a.size(); ++i)
            {
                if (a[i][c] == 0)
                    continue;
                BigInt q = a[i][c] / a[r][c];
                sub_mul(a[i], a[r], q);
                if (a[i][c] != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (r == a.size() || a[r][c] == 0)
            continue;
        if (a[r][c] < 0)
            for (auto& x : a[r])
                x = -x;
        for (std::size_t i = 0; i < r; ++i)
        {
            BigInt q = a[i][c] / a[r][c];
            if (a[i][c] - q * a[r][c] < 0)
                q -= 1;
            sub_mul(a[i], a[r], q);
        }
        ++r;
    }
    RatMatrix h(r, m.cols());
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            h(i, j) = Rat(a[i][j]);
    return h;
}

RatMatrix restricted_weights(const TorusSetup& s, const IndexSet& J)
{
    const RatMatrix rows = s.weights().select_rows(J);
    const RatMatrix H = hermite_basis(rows);
    const RatMatrix Ht = H.transpose();
    RatMatrix W(J.size(), H.rows());
    for (std::size_t k = 0; k < J.size(); ++k)
    {
        RatVec w = *solve(Ht, rows.row(k));
        for (std::size_t j = 0; j < w.size(); ++j)
            W(k, j) = w[j];
    }
    if (!W.is_integral())
        throw std::logic_error("restricted weights are not integral");
    return W;
}

}  // namespace hkq
