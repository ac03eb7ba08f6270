#include "hkq/morse.hpp"

#include <algorithm>
#include <map>

#include "hkq/errors.hpp"

namespace hkq {

namespace {

std::string one_based(const IndexSet& J)
{
    std::string out = "{";
    for (std::size_t k = 0; k < J.size(); ++k)
        out += (k ? "," : "") + std::to_string(J[k] + 1);
    return out + "}";
}

void require_generic_beta(const TorusSetup& s, const std::vector<IndexSet>& flats)
{
    auto g = is_generic_beta(s, flats);
    if (!g.generic)
        throw NonGenericBeta(g.witness ? g.witness->reason : std::string("beta is not generic"));
}

bool is_subset(const IndexSet& a, const IndexSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

PoincarePoly recurse(const std::vector<Flat>& flats, std::size_t top)
{
    // flats are sorted by size, so every proper subflat precedes its superflats
    std::vector<PoincarePoly> P(top + 1);
    for (std::size_t f = 0; f <= top; ++f)
    {
        const Flat& F = flats[f];
        PoincarePoly rhs = PoincarePoly::constant(1);
        for (std::size_t g = 0; g < f; ++g)
        {
            const Flat& G = flats[g];
            if (G.J.size() == F.J.size() || !is_subset(G.J, F.J))
                continue;
            rhs = rhs - PoincarePoly::monomial(F.J.size() - G.J.size())
                            * PoincarePoly::one_minus_q_pow(G.rank) * P[g];
        }
        P[f] = poly_divide_exact(rhs, PoincarePoly::one_minus_q_pow(F.rank));
    }
    return P[top];
}

}  // namespace

std::vector<CriticalComponent> critical_components(const TorusSetup& s, std::uint64_t seed,
                                                   std::size_t max_n)
{
    const auto flats = enumerate_flats(s, max_n);
    const auto sets = flat_sets(flats);
    require_generic_beta(s, sets);
    std::vector<CriticalComponent> out;
    out.reserve(flats.size());
    for (std::size_t k = 0; k < flats.size(); ++k)
    {
        const Flat& F = flats[k];
        auto sub = TorusSetup::create(restricted_weights(s, F.J));
        sub = with_generic_parameters(sub, seed + k);
        out.push_back(CriticalComponent{F, 2 * (s.n() - F.J.size()), s.norm2(project_beta(s, F.J).second),
                                        complement(F.J, s.n()), std::move(sub)});
    }
    return out;
}

PoincarePoly poincare_from_weights(const RatMatrix& B, std::size_t max_n)
{
    const auto s = TorusSetup::create(B);
    const auto flats = enumerate_flats(s, max_n);
    return recurse(flats, flats.size() - 1);
}

PoincarePoly poincare_morse(const TorusSetup& s, std::size_t max_n)
{
    const auto flats = enumerate_flats(s, max_n);
    require_generic_beta(s, flat_sets(flats));
    return recurse(flats, flats.size() - 1);
}

std::vector<IndexSet> kirwan_kernel_generators(const TorusSetup& s, std::size_t max_n)
{
    std::vector<IndexSet> out;
    for (const auto& F : enumerate_flats(s, max_n))
    {
        if (F.is_proper)
            out.push_back(complement(F.J, s.n()));
    }
    return out;
}

std::vector<SignSplit> s1_kernel_generators(const TorusSetup& s, std::size_t max_n)
{
    std::vector<SignSplit> out;
    for (const auto& F : enumerate_flats(s, max_n))
    {
        if (!F.is_proper)
            continue;
        const RatVec ap = alpha_perp(s, F.J);
        SignSplit split{F.J, {}, {}};
        for (auto i : complement(F.J, s.n()))
        {
            const int sg = sign(s.inner(ap, s.weight(i)));
            if (sg == 0)
                throw NonGenericAlpha("<alpha_J_perp, u_" + std::to_string(i + 1) + "> = 0 for J = "
                                      + one_based(F.J));
            (sg > 0 ? split.plus : split.minus).push_back(i);
        }
        out.push_back(std::move(split));
    }
    return out;
}

TrichotomyTable trichotomy(const RatMatrix& B_tilde, const RatMatrix& B, const RatMatrix& B_hat,
                           std::size_t max_n)
{
    const std::size_t n = B.rows();
    if (B_tilde.rows() != n + 1 || B_hat.rows() != n)
        throw DimensionMismatch("trichotomy expects N+1, N and N weights");
    const auto st = TorusSetup::create(B_tilde);
    const auto so = TorusSetup::create(B);
    const auto sh = TorusSetup::create(B_hat);

    TrichotomyTable table;
    std::map<IndexSet, int> hits_tilde, hits_orig;
    for (const auto& F : enumerate_flats(st, max_n + 1))
        hits_tilde[F.J] = 0;
    for (const auto& F : enumerate_flats(so, max_n))
        hits_orig[F.J] = 0;

    for (const auto& F : enumerate_flats(sh, max_n))
    {
        TrichotomyRow row;
        row.flat = F.J;
        IndexSet Jplus = F.J;
        Jplus.push_back(n);
        row.modified_J = is_critical(st, F.J);
        row.modified_J_plus = is_critical(st, Jplus);
        row.original_J = is_critical(so, F.J);

        const bool c1 = row.modified_J && !row.original_J;
        const bool c2 = row.original_J && row.modified_J && row.modified_J_plus;
        const bool c3 = row.original_J && row.modified_J_plus && !row.modified_J;
        if (int(c1) + int(c2) + int(c3) != 1)
            throw PartitionViolation("flat " + one_based(F.J) + " of the quotient fits "
                                     + std::to_string(int(c1) + int(c2) + int(c3)) + " cases");
        if (c1)
        {
            row.which = TrichotomyCase::OnlyModified;
            ++table.count1;
        }
        else if (c2)
        {
            row.which = TrichotomyCase::Both;
            ++table.count2;
        }
        else
        {
            row.which = TrichotomyCase::Extended;
            ++table.count3;
        }
        if (row.modified_J)
            ++hits_tilde[F.J];
        if (row.modified_J_plus)
            ++hits_tilde[Jplus];
        if (row.original_J)
            ++hits_orig[F.J];
        table.rows.push_back(std::move(row));
    }

    for (const auto* hits : {&hits_tilde, &hits_orig})
        for (const auto& [J, h] : *hits)
        {
            if (h != 1)
                throw PartitionViolation("flat " + one_based(J) + " hit " + std::to_string(h)
                                         + " times by the trichotomy");
        }
    return table;
}

}  // namespace hkq
