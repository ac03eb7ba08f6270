#pragma once

// Shared fixtures for the unit tests and the acceptance runner.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hkq/matrix.hpp"
#include "hkq/setup.hpp"

namespace hkq::testing {

inline RatMatrix mat(const std::vector<std::vector<long>>& rows, std::size_t cols)
{
    return RatMatrix::from_rows(rows, cols);
}

inline RatMatrix ones(std::size_t n)
{
    return RatMatrix::from_rows(std::vector<std::vector<long>>(n, {1}), 1);
}

inline RatVec rv(std::initializer_list<long> xs)
{
    RatVec v;
    for (auto x : xs)
        v.push_back(Rat(x));
    return v;
}

inline CRatVec cv(std::initializer_list<long> xs)
{
    CRatVec v;
    for (auto x : xs)
        v.push_back(CRat(Rat(x)));
    return v;
}

inline TorusSetup setup(const RatMatrix& B, const RatVec& alpha, const CRatVec& beta)
{
    return TorusSetup::create(B, alpha, beta);
}

/// Generic parameters sampled deterministically.
inline TorusSetup generic(const RatMatrix& B, std::uint64_t seed = 1)
{
    return with_generic_parameters(TorusSetup::create(B), seed);
}

/// Random full-column-rank integer matrix with entries in [-lim, lim].
inline RatMatrix random_full_rank(std::size_t n, std::size_t d, std::uint64_t seed, long lim = 2)
{
    std::mt19937_64 rng(seed);
    while (true)
    {
        std::vector<std::vector<long>> rows(n, std::vector<long>(d));
        for (auto& r : rows)
            for (auto& x : r)
                x = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * lim + 1)) - lim;
        RatMatrix B = RatMatrix::from_rows(rows, d);
        if (rank(B) == d)
            return B;
    }
}

struct CatalogEntry
{
    std::string name;
    RatMatrix B;
};

/// Small weight matrices with N <= 7 and d <= 3.
inline std::vector<CatalogEntry> catalog()
{
    std::vector<CatalogEntry> c;
    for (std::size_t n = 1; n <= 5; ++n)
        c.push_back({"circle ones(" + std::to_string(n) + ")", ones(n)});
    c.push_back({"circle (1,2)", mat({{1}, {2}}, 1)});
    c.push_back({"circle (1,1,2)", mat({{1}, {1}, {2}}, 1)});
    c.push_back({"circle (1,-1,1)", mat({{1}, {-1}, {1}}, 1)});
    c.push_back({"identity(1)", RatMatrix::identity(1)});
    c.push_back({"identity(2)", RatMatrix::identity(2)});
    c.push_back({"identity(3)", RatMatrix::identity(3)});
    c.push_back({"(1,0),(0,1),(1,1)", mat({{1, 0}, {0, 1}, {1, 1}}, 2)});
    c.push_back({"(1,0),(0,1),(1,1),(1,-1)", mat({{1, 0}, {0, 1}, {1, 1}, {1, -1}}, 2)});
    c.push_back({"(1,0),(0,1),(1,1),(1,0)", mat({{1, 0}, {0, 1}, {1, 1}, {1, 0}}, 2)});
    c.push_back({"(1,0)x2,(0,1)x2,(1,1)", mat({{1, 0}, {1, 0}, {0, 1}, {0, 1}, {1, 1}}, 2)});
    c.push_back({"identity(2) + ones", mat({{1, 0}, {0, 1}, {1, 1}, {1, 1}}, 2)});
    c.push_back({"A3 roots", mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}}, 3)});
    c.push_back({"identity(3) + (1,1,1)", mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}, 3)});
    c.push_back({"identity(2) block + circle", mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}, {1, 1, 0}}, 3)});
    const std::size_t shapes[][2] = {{4, 2}, {5, 2}, {5, 3}, {6, 2}, {6, 3}, {7, 3}, {3, 1}, {4, 1}};
    std::uint64_t seed = 11;
    for (const auto& sh : shapes)
    {
        c.push_back({"random " + std::to_string(sh[0]) + "x" + std::to_string(sh[1]) + " seed "
                         + std::to_string(seed),
                     random_full_rank(sh[0], sh[1], seed)});
        ++seed;
    }
    return c;
}

}  // namespace hkq::testing
