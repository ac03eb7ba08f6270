#include "hkq/ringcalc.hpp"

#include <algorithm>
#include <map>

#include "hkq/morse.hpp"

namespace hkq {

RingPresentation kirwan_presentation(const TorusSetup& s, std::size_t max_n)
{
    RingPresentation p;
    p.num_vars = s.d();
    for (std::size_t i = 0; i < s.n(); ++i)
        p.linear_forms.push_back(s.weight(i));
    for (auto& Jc : kirwan_kernel_generators(s, max_n))
        p.generators.push_back({std::move(Jc), {}});
    return p;
}

RingPresentation s1_presentation(const TorusSetup& s, std::size_t max_n)
{
    RingPresentation p;
    p.num_vars = s.d() + 1;
    p.equivariant = true;
    for (std::size_t i = 0; i < s.n(); ++i)
    {
        RatVec l = s.weight(i);
        l.push_back(0);
        p.linear_forms.push_back(std::move(l));
    }
    for (auto& split : s1_kernel_generators(s, max_n))
        p.generators.push_back({std::move(split.plus), std::move(split.minus)});
    return p;
}

std::size_t default_max_deg(const TorusSetup& s)
{
    return s.n() - s.d() + 1;
}

namespace {

using Exponent = std::vector<unsigned>;
using Sparse = std::map<Exponent, Rat>;

/// Monomials of degree m in v variables, with a lookup table.
struct MonomialBasis
{
    std::vector<Exponent> monomials;
    std::map<Exponent, std::size_t> index;

    MonomialBasis(std::size_t v, std::size_t m)
    {
        Exponent e(v, 0);
        fill(e, 0, m);
        for (std::size_t k = 0; k < monomials.size(); ++k)
            index[monomials[k]] = k;
    }

    void fill(Exponent& e, std::size_t var, std::size_t left)
    {
        if (e.empty())
        {
            if (left == 0)
                monomials.push_back(e);
            return;
        }
        if (var + 1 == e.size())
        {
            e[var] = static_cast<unsigned>(left);
            monomials.push_back(e);
            e[var] = 0;
            return;
        }
        for (std::size_t k = left + 1; k-- > 0;)
        {
            e[var] = static_cast<unsigned>(k);
            fill(e, var + 1, left - k);
        }
        e[var] = 0;
    }

    std::size_t size() const { return monomials.size(); }

    RatVec dense(const Sparse& p) const
    {
        RatVec v(size());
        for (const auto& [e, c] : p)
            v[index.at(e)] = c;
        return v;
    }
};

Sparse multiply_linear(const Sparse& p, const RatVec& l)
{
    Sparse out;
    for (const auto& [e, c] : p)
        for (std::size_t k = 0; k < l.size(); ++k)
        {
            if (l[k] == 0)
                continue;
            Exponent f = e;
            ++f[k];
            out[f] += c * l[k];
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

RatVec shifted_form(const RingPresentation& pres, std::size_t j)
{
    RatVec l(pres.num_vars);
    for (std::size_t k = 0; k < pres.num_vars; ++k)
        l[k] = -pres.linear_forms[j][k];
    l[pres.num_vars - 1] += 1;
    return l;
}

Sparse expand(const RingPresentation& pres, const RingGenerator& g)
{
    Sparse p{{Exponent(pres.num_vars, 0), Rat(1)}};
    for (auto i : g.plain)
        p = multiply_linear(p, pres.linear_forms[i]);
    for (auto j : g.shifted)
        p = multiply_linear(p, shifted_form(pres, j));
    return p;
}

}  // namespace

HilbertTable hilbert_series(const RingPresentation& pres, std::size_t max_deg)
{
    const std::size_t v = pres.num_vars;
    std::map<std::size_t, std::vector<Sparse>> by_degree;
    for (const auto& g : pres.generators)
        by_degree[g.plain.size() + g.shifted.size()].push_back(expand(pres, g));

    HilbertTable table;
    std::vector<Exponent> prev_monomials;
    RowSpace prev(1);
    bool saturated = false;
    for (std::size_t m = 0; m <= max_deg; ++m)
    {
        if (saturated)
        {
            table.dims.push_back(0);
            continue;
        }
        MonomialBasis basis(v, m);
        RowSpace ideal(basis.size());
        if (m > 0)
        {
            for (const auto& row : prev.rows())
            {
                Sparse p;
                for (std::size_t k = 0; k < row.size(); ++k)
                {
                    if (row[k] != 0)
                        p[prev_monomials[k]] = row[k];
                }
                for (std::size_t x = 0; x < v && !ideal.full(); ++x)
                {
                    RatVec lx(v);
                    lx[x] = 1;
                    ideal.insert(basis.dense(multiply_linear(p, lx)));
                }
            }
        }
        if (auto it = by_degree.find(m); it != by_degree.end())
            for (const auto& g : it->second)
            {
                if (ideal.full())
                    break;
                ideal.insert(basis.dense(g));
            }
        table.dims.push_back(basis.size() - ideal.rank());
        saturated = ideal.full();
        prev_monomials = std::move(basis.monomials);
        prev = std::move(ideal);
    }
    return table;
}

PoincarePoly poincare_from_hilbert(const HilbertTable& table)
{
    std::vector<BigInt> c;
    for (auto d : table.dims)
        c.push_back(BigInt(d));
    return PoincarePoly(std::move(c));
}

namespace {

std::string form_to_string(const RatVec& l, const std::vector<std::string>& names)
{
    std::string out;
    std::size_t terms = 0;
    for (std::size_t k = 0; k < l.size(); ++k)
    {
        if (l[k] == 0)
            continue;
        std::string coef;
        if (l[k] == 1)
            coef = out.empty() ? "" : "+";
        else if (l[k] == -1)
            coef = "-";
        else
            coef = (l[k] > 0 && !out.empty() ? "+" : "") + to_string(l[k]) + "*";
        out += coef + names[k];
        ++terms;
    }
    if (out.empty())
        return "0";
    return terms > 1 ? "(" + out + ")" : out;
}

}  // namespace

std::string generator_to_string(const RingPresentation& pres, const RingGenerator& g)
{
    std::vector<std::string> names;
    for (std::size_t k = 0; k < pres.num_vars; ++k)
        names.push_back(pres.equivariant && k + 1 == pres.num_vars ? "u0" : "x" + std::to_string(k + 1));
    std::vector<std::string> factors;
    for (auto i : g.plain)
        factors.push_back(form_to_string(pres.linear_forms[i], names));
    for (auto j : g.shifted)
        factors.push_back(form_to_string(shifted_form(pres, j), names));
    // collapse repeated factors into powers, keeping first-appearance order
    std::vector<std::pair<std::string, std::size_t>> powers;
    for (const auto& f : factors)
    {
        auto it = std::find_if(powers.begin(), powers.end(), [&](const auto& p) { return p.first == f; });
        if (it == powers.end())
            powers.emplace_back(f, 1);
        else
            ++it->second;
    }
    if (powers.empty())
        return "1";
    std::string out;
    for (const auto& [f, e] : powers)
    {
        if (!out.empty())
            out += "*";
        out += f;
        if (e > 1)
            out += "^" + std::to_string(e);
    }
    return out;
}

}  // namespace hkq
