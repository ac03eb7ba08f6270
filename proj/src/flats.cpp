#include "hkq/flats.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hkq/errors.hpp"

namespace hkq {

IndexSet closure(const TorusSetup& s, const IndexSet& S)
{
    RowSpace span(s.d());
    for (auto j : S)
        span.insert(s.weight(j));
    IndexSet out;
    for (std::size_t j = 0; j < s.n(); ++j)
    {
        if (span.contains(s.weight(j)))
            out.push_back(j);
    }
    return out;
}

bool is_critical(const TorusSetup& s, const IndexSet& J)
{
    IndexSet sorted = J;
    std::sort(sorted.begin(), sorted.end());
    return closure(s, sorted) == sorted;
}

namespace {

bool flat_order(const IndexSet& a, const IndexSet& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

}  // namespace

std::vector<Flat> enumerate_flats(const TorusSetup& s, std::size_t max_n)
{
    if (s.n() > max_n)
        throw EnumerationTooLarge("N = " + std::to_string(s.n()) + " exceeds the enumeration bound "
                                  + std::to_string(max_n));
    // Every flat is reached from closure(empty) by repeatedly adjoining one element and
    // closing, so a search over covers visits the whole lattice.
    std::set<IndexSet> seen;
    std::deque<IndexSet> todo;
    IndexSet bottom = closure(s, {});
    seen.insert(bottom);
    todo.push_back(bottom);
    while (!todo.empty())
    {
        IndexSet F = std::move(todo.front());
        todo.pop_front();
        for (auto i : complement(F, s.n()))
        {
            IndexSet G = F;
            G.insert(std::upper_bound(G.begin(), G.end(), i), i);
            G = closure(s, G);
            if (seen.insert(G).second)
                todo.push_back(std::move(G));
        }
    }
    std::vector<IndexSet> sets(seen.begin(), seen.end());
    std::sort(sets.begin(), sets.end(), flat_order);
    std::vector<Flat> flats;
    flats.reserve(sets.size());
    for (auto& J : sets)
    {
        Flat f;
        f.rank = rank(s.weights().select_rows(J));
        f.codim = s.d() - f.rank;
        f.is_proper = J.size() < s.n();
        f.J = std::move(J);
        flats.push_back(std::move(f));
    }
    return flats;
}

std::vector<IndexSet> flat_sets(const std::vector<Flat>& flats)
{
    std::vector<IndexSet> out;
    out.reserve(flats.size());
    for (const auto& f : flats)
        out.push_back(f.J);
    return out;
}

IndexSet complement(const IndexSet& J, std::size_t n)
{
    IndexSet out;
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (k < J.size() && J[k] == i)
            ++k;
        else
            out.push_back(i);
    }
    return out;
}

IndexSet full_set(std::size_t n)
{
    IndexSet out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = i;
    return out;
}

}  // namespace hkq
