#include "hkq/lp.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace hkq {

namespace {

using Row = std::vector<BigInt>; // coefficients followed by rhs

struct Tracked
{
    Row row;
    std::uint64_t history;
};

void make_primitive(Row& r)
{
    BigInt g = 0;
    for (const auto& x : r)
        g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (auto& x : r)
            x /= g;
}

Row to_integer_row(const Inequality& q)
{
    BigInt l = 1;
    for (const auto& x : q.coef)
        l = boost::multiprecision::lcm(l, den(x));
    l = boost::multiprecision::lcm(l, den(q.rhs));
    Row r;
    r.reserve(q.coef.size() + 1);
    for (const auto& x : q.coef)
        r.push_back(num(x) * (l / den(x)));
    r.push_back(num(q.rhs) * (l / den(q.rhs)));
    make_primitive(r);
    return r;
}

bool all_zero_coef(const Row& r, std::size_t nvars)
{
    for (std::size_t j = 0; j < nvars; ++j)
    {
        if (r[j] != 0)
            return false;
    }
    return true;
}

}  // namespace

bool fm_feasible(const std::vector<Inequality>& system, std::size_t nvars)
{
    if (system.size() > 64)
        throw std::invalid_argument("fm_feasible: at most 64 inequalities supported");
    std::vector<Tracked> rows;
    for (std::size_t i = 0; i < system.size(); ++i)
    {
        if (system[i].coef.size() != nvars)
            throw std::invalid_argument("fm_feasible: coefficient length mismatch");
        Row r = to_integer_row(system[i]);
        if (all_zero_coef(r, nvars))
        {
            if (r[nvars] > 0)
                return false;
            continue;
        }
        rows.push_back({std::move(r), std::uint64_t{1} << i});
    }

    std::vector<bool> eliminated(nvars, false);
    for (std::size_t step = 0; step < nvars; ++step)
    {
        // cheapest variable first
        std::size_t best = nvars;
        long best_cost = 0;
        for (std::size_t j = 0; j < nvars; ++j)
        {
            if (eliminated[j])
                continue;
            long pos = 0, neg = 0;
            for (const auto& t : rows)
            {
                if (t.row[j] > 0)
                    ++pos;
                else if (t.row[j] < 0)
                    ++neg;
            }
            long cost = pos * neg - pos - neg;
            if (best == nvars || cost < best_cost)
            {
                best = j;
                best_cost = cost;
            }
        }
        const std::size_t v = best;
        eliminated[v] = true;

        std::vector<const Tracked*> pos, neg;
        std::map<Row, std::uint64_t> next;
        auto keep = [&](Row r, std::uint64_t h) -> bool {
            make_primitive(r);
            if (all_zero_coef(r, nvars))
                return r[nvars] <= 0;
            // Chernikov: after step+1 eliminations a row combining more than step+2
            // originals is implied by the others.
            if (std::popcount(h) > static_cast<int>(step) + 2)
                return true;
            auto [it, inserted] = next.emplace(std::move(r), h);
            if (!inserted && std::popcount(h) < std::popcount(it->second))
                it->second = h;
            return true;
        };
        for (const auto& t : rows)
        {
            if (t.row[v] > 0)
                pos.push_back(&t);
            else if (t.row[v] < 0)
                neg.push_back(&t);
            else if (!keep(t.row, t.history))
                return false;
        }
        for (const Tracked* p : pos)
            for (const Tracked* n : neg)
            {
                const BigInt a = p->row[v];
                const BigInt b = -n->row[v];
                Row r(nvars + 1);
                for (std::size_t j = 0; j <= nvars; ++j)
                    r[j] = b * p->row[j] + a * n->row[j];
                if (!keep(std::move(r), p->history | n->history))
                    return false;
            }
        rows.clear();
        for (auto& [r, h] : next)
            rows.push_back({r, h});
    }
    return true;
}

bool strictly_feasible(const std::vector<RatVec>& a, const RatVec& b, const std::vector<int>& signs,
                       std::size_t dim)
{
    std::vector<Inequality> sys;
    sys.reserve(a.size() + 1);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        Inequality q;
        q.coef.resize(dim + 1);
        for (std::size_t j = 0; j < dim; ++j)
            q.coef[j] = signs[i] * a[i][j];
        q.coef[dim] = -signs[i] * b[i];
        q.rhs = 1;
        sys.push_back(std::move(q));
    }
    Inequality t;
    t.coef.resize(dim + 1);
    t.coef[dim] = 1;
    t.rhs = 1;
    sys.push_back(std::move(t));
    return fm_feasible(sys, dim + 1);
}

bool cone_is_trivial(const std::vector<RatVec>& a, const std::vector<int>& signs, std::size_t dim)
{
    if (dim == 0)
        return true;
    std::vector<Inequality> sys;
    Inequality total;
    total.coef.resize(dim);
    total.rhs = 1;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        Inequality q;
        q.coef.resize(dim);
        for (std::size_t j = 0; j < dim; ++j)
        {
            q.coef[j] = signs[i] * a[i][j];
            total.coef[j] += q.coef[j];
        }
        q.rhs = 0;
        sys.push_back(std::move(q));
    }
    sys.push_back(std::move(total));
    return !fm_feasible(sys, dim);
}

}  // namespace hkq
