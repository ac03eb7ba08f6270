#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "hkq/errors.hpp"
#include "hkq/flats.hpp"
#include "support.hpp"

using namespace hkq;
using namespace hkq::testing;

namespace {

// Independent oracle: close every subset by direct rank comparison and deduplicate.
std::set<IndexSet> brute_flats(const RatMatrix& B)
{
    const std::size_t n = B.rows();
    std::set<IndexSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
    {
        IndexSet S;
        for (std::size_t j = 0; j < n; ++j)
            if (mask >> j & 1)
                S.push_back(j);
        const std::size_t r = rank(B.select_rows(S));
        IndexSet cl;
        for (std::size_t j = 0; j < n; ++j)
        {
            IndexSet T = S;
            T.push_back(j);
            if (rank(B.select_rows(T)) == r)
                cl.push_back(j);
        }
        out.insert(cl);
    }
    return out;
}

IndexSet intersect(const IndexSet& a, const IndexSet& b)
{
    IndexSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

bool subset(const IndexSet& a, const IndexSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("closure examples")
{
    auto s = TorusSetup::create(ones(3));
    CHECK(closure(s, {0}) == IndexSet{0, 1, 2});
    CHECK(closure(s, {}).empty());
    auto a2 = TorusSetup::create(mat({{1, 0}, {0, 1}, {1, 1}}, 2));
    CHECK(closure(a2, {0, 1}) == IndexSet{0, 1, 2});
    CHECK(closure(a2, {2}) == IndexSet{2});
    auto z = TorusSetup::create(mat({{0}, {1}, {0}}, 1));
    CHECK(closure(z, {}) == IndexSet{0, 2});
    auto par = TorusSetup::create(mat({{1, 0}, {1, 0}, {0, 1}}, 2));
    CHECK(closure(par, {1}) == IndexSet{0, 1});
}

TEST_CASE("enumerate flats examples")
{
    for (std::size_t n = 1; n <= 4; ++n)
    {
        auto f = flat_sets(enumerate_flats(TorusSetup::create(ones(n))));
        CHECK(f == std::vector<IndexSet>{{}, full_set(n)});
    }
    auto a2 = enumerate_flats(TorusSetup::create(mat({{1, 0}, {0, 1}, {1, 1}}, 2)));
    CHECK(flat_sets(a2) == std::vector<IndexSet>{{}, {0}, {1}, {2}, {0, 1, 2}});
    CHECK(a2.front().rank == 0);
    CHECK(a2.front().codim == 2);
    CHECK(a2.back().codim == 0);
    CHECK_FALSE(a2.back().is_proper);
    CHECK(a2[1].is_proper);
    auto id = flat_sets(enumerate_flats(TorusSetup::create(RatMatrix::identity(2))));
    CHECK(id == std::vector<IndexSet>{{}, {0}, {1}, {0, 1}});
}

TEST_CASE("is_critical examples")
{
    CHECK_FALSE(is_critical(TorusSetup::create(ones(2)), {0}));
    CHECK(is_critical(TorusSetup::create(ones(2)), {0, 1}));
    CHECK(is_critical(TorusSetup::create(RatMatrix::identity(2)), {1}));
}

TEST_CASE("identity has the Boolean lattice")
{
    for (std::size_t n = 1; n <= 5; ++n)
        CHECK(enumerate_flats(TorusSetup::create(RatMatrix::identity(n))).size() == (std::size_t{1} << n));
}

TEST_CASE("flats match the all-subsets oracle")
{
    auto entries = catalog();
    for (std::uint64_t seed = 100; seed < 112; ++seed)
        entries.push_back({"random", random_full_rank(3 + seed % 5, 1 + seed % 3, seed, 1)});
    for (const auto& e : entries)
    {
        INFO(e.name);
        auto s = TorusSetup::create(e.B);
        auto flats = enumerate_flats(s);
        auto sets = flat_sets(flats);
        CHECK(std::set<IndexSet>(sets.begin(), sets.end()) == brute_flats(e.B));
        CHECK(std::set<IndexSet>(sets.begin(), sets.end()).size() == sets.size());
        CHECK(std::is_sorted(sets.begin(), sets.end(), [](const IndexSet& a, const IndexSet& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        }));
        CHECK(sets.size() <= (std::size_t{1} << e.B.rows()));
        for (const auto& F : flats)
        {
            CHECK(closure(s, F.J) == F.J);
            CHECK(F.rank + F.codim == s.d());
            CHECK(F.rank == rank(e.B.select_rows(F.J)));
            CHECK(F.is_proper == (F.J.size() < s.n()));
        }
        CHECK(sets.back() == full_set(s.n()));
        for (const auto& a : sets)
            for (const auto& b : sets)
                CHECK(std::find(sets.begin(), sets.end(), intersect(a, b)) != sets.end());
    }
}

TEST_CASE("closure is idempotent, extensive and monotone")
{
    std::mt19937_64 rng(5);
    for (const auto& e : catalog())
    {
        auto s = TorusSetup::create(e.B);
        const std::size_t n = s.n();
        for (int trial = 0; trial < 20; ++trial)
        {
            IndexSet S, T;
            for (std::size_t j = 0; j < n; ++j)
            {
                const bool in_s = rng() % 3 == 0;
                if (in_s)
                    S.push_back(j);
                if (in_s || rng() % 3 == 0)
                    T.push_back(j);
            }
            auto cs = closure(s, S);
            CHECK(closure(s, cs) == cs);
            CHECK(subset(S, cs));
            CHECK(subset(cs, closure(s, T)));
        }
    }
}

TEST_CASE("enumeration refuses large inputs")
{
    auto s = TorusSetup::create(ones(16));
    CHECK_THROWS_AS(enumerate_flats(s), EnumerationTooLarge);
    CHECK(enumerate_flats(s, 16).size() == 2);
}
