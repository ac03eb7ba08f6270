#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "hkq/arrangement.hpp"
#include "hkq/errors.hpp"
#include "hkq/flats.hpp"
#include "hkq/morse.hpp"
#include "support.hpp"

using namespace hkq;
using namespace hkq::testing;

TEST_CASE("critical components of T*CP1")
{
    auto comps = critical_components(setup(ones(2), rv({1}), cv({1})));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].flat.J.empty());
    CHECK(comps[0].morse_index == 4);
    CHECK(comps[0].critical_value == Rat(1) / 2);
    CHECK(comps[0].euler_exponents == IndexSet{0, 1});
    CHECK(comps[1].flat.J == IndexSet{0, 1});
    CHECK(comps[1].morse_index == 0);
    CHECK(comps[1].critical_value == 0);
    CHECK(comps[1].euler_exponents.empty());
}

TEST_CASE("morse indices follow 2(N - |J|)")
{
    auto comps = critical_components(generic(mat({{1, 0}, {0, 1}, {1, 1}}, 2), 3));
    std::vector<std::size_t> idx;
    for (const auto& c : comps)
        idx.push_back(c.morse_index);
    CHECK(idx == std::vector<std::size_t>{6, 4, 4, 4, 0});
    CHECK_THROWS_AS(critical_components(setup(ones(2), rv({1}), cv({0}))), NonGenericBeta);
}

TEST_CASE("component invariants on the catalog")
{
    for (const auto& e : catalog())
    {
        INFO(e.name);
        auto s = generic(e.B, 9);
        auto comps = critical_components(s, 9);
        std::set<Rat> values;
        for (const auto& c : comps)
        {
            CHECK(c.morse_index == 2 * (s.n() - c.flat.J.size()));
            CHECK(c.euler_exponents == complement(c.flat.J, s.n()));
            CHECK(c.critical_value >= 0);
            CHECK((c.critical_value == 0) == !c.flat.is_proper);
            values.insert(c.critical_value);
            CHECK(c.sub_setup.n() == c.flat.J.size());
            CHECK(c.sub_setup.d() == c.flat.rank);
            CHECK(c.sub_setup.weights().is_integral());
        }
        CHECK(values.size() == comps.size());
        CHECK(comps.back().morse_index == 0);
    }
}

TEST_CASE("poincare polynomial examples")
{
    for (std::size_t n = 1; n <= 6; ++n)
    {
        std::vector<BigInt> c(n, BigInt(1));
        CHECK(poincare_morse(generic(ones(n), n)) == PoincarePoly(c));
    }
    CHECK(poincare_morse(generic(mat({{1, 0}, {0, 1}, {1, 1}}, 2), 3)) == PoincarePoly{1, 2});
    CHECK(poincare_from_weights(RatMatrix(0, 0)) == PoincarePoly{1});
    CHECK(poincare_from_weights(RatMatrix::identity(3)) == PoincarePoly{1});
    CHECK(poincare_from_weights(RatMatrix(2, 0)) == PoincarePoly{1});
    CHECK_THROWS_AS(poincare_morse(setup(ones(2), rv({1}), cv({0}))), NonGenericBeta);
}

TEST_CASE("perfection identity over all flats")
{
    for (const auto& e : catalog())
    {
        INFO(e.name);
        auto s = generic(e.B, 4);
        PoincarePoly sum;
        for (const auto& c : critical_components(s, 4))
        {
            // P(M_J) from the sub-setup itself, through the census route where it applies
            PoincarePoly sub = poincare_morse(c.sub_setup);
            if (c.flat.J.size() > c.flat.rank)
                CHECK(sub == poincare_from_census(face_census(build_arrangement(c.sub_setup))));
            sum = sum + PoincarePoly::monomial(s.n() - c.flat.J.size()) * PoincarePoly::one_minus_q_pow(c.flat.rank) * sub;
        }
        CHECK(sum == PoincarePoly{1});
        auto p = poincare_morse(s);
        CHECK(p.nonnegative());
        CHECK(p.coeff(0) == 1);
        CHECK(p.degree() <= static_cast<long>(s.n() - s.d()));
    }
}

TEST_CASE("kirwan generators")
{
    CHECK(kirwan_kernel_generators(generic(ones(2))) == std::vector<IndexSet>{{0, 1}});
    CHECK(kirwan_kernel_generators(generic(mat({{1, 0}, {0, 1}, {1, 1}}, 2), 3))
          == std::vector<IndexSet>{{0, 1, 2}, {1, 2}, {0, 2}, {0, 1}});
    CHECK(kirwan_kernel_generators(generic(RatMatrix::identity(1))) == std::vector<IndexSet>{{0}});
}

TEST_CASE("S1 sign splits")
{
    auto plus = s1_kernel_generators(setup(ones(2), rv({1}), cv({1})));
    REQUIRE(plus.size() == 1);
    CHECK(plus[0].plus == IndexSet{0, 1});
    CHECK(plus[0].minus.empty());
    auto minus = s1_kernel_generators(setup(ones(2), rv({-1}), cv({1})));
    CHECK(minus[0].plus.empty());
    CHECK(minus[0].minus == IndexSet{0, 1});
    CHECK_THROWS_AS(s1_kernel_generators(setup(ones(2), rv({0}), cv({1}))), NonGenericAlpha);

    for (const auto& e : catalog())
    {
        auto s = generic(e.B, 6);
        for (const auto& sp : s1_kernel_generators(s))
        {
            IndexSet u = sp.plus;
            u.insert(u.end(), sp.minus.begin(), sp.minus.end());
            std::sort(u.begin(), u.end());
            CHECK(u == complement(sp.flat, s.n()));
        }
    }
}

TEST_CASE("trichotomy on the circle modification of a point")
{
    const RatMatrix B(2, 0);
    const RatVec c = rv({1, 1});
    auto t = trichotomy(modified_weights(B, c), B, quotient_weights(B, c));
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].flat.empty());
    CHECK(t.rows[0].which == TrichotomyCase::OnlyModified);
    CHECK(t.rows[1].flat == IndexSet{0, 1});
    CHECK(t.rows[1].which == TrichotomyCase::Extended);
    CHECK(t.count1 == 1);
    CHECK(t.count2 == 0);
    CHECK(t.count3 == 1);
}

namespace {

struct ModCase
{
    RatMatrix B;
    RatVec c;
};

std::vector<ModCase> mod_cases()
{
    return {
        {RatMatrix(2, 0), rv({1, 1})},
        {RatMatrix(3, 0), rv({1, 1, 1})},
        {RatMatrix(3, 0), rv({1, 2, 1})},
        {ones(2), rv({1, 0})},
        {ones(3), rv({1, 0, 0})},
        {ones(3), rv({0, 1, -1})},
        {mat({{1, 0}, {0, 1}, {1, 1}}, 2), rv({1, 0, 0})},
        {mat({{1, 0}, {0, 1}, {1, 1}}, 2), rv({0, 0, 1})},
        {mat({{1}, {2}, {1}}, 1), rv({1, 0, 1})},
        {mat({{1, 0}, {0, 1}, {1, 1}, {1, -1}}, 2), rv({1, 0, 0, 1})},
        {mat({{1, 0}, {1, 1}, {0, 1}, {0, 1}}, 2), rv({0, 1, 0, 1})},
    };
}

}  // namespace

TEST_CASE("trichotomy partitions the flats")
{
    for (const auto& m : mod_cases())
    {
        const RatMatrix Bt = modified_weights(m.B, m.c), Bh = quotient_weights(m.B, m.c);
        auto t = trichotomy(Bt, m.B, Bh);
        const std::size_t tilde = enumerate_flats(TorusSetup::create(Bt)).size();
        const std::size_t orig = enumerate_flats(TorusSetup::create(m.B)).size();
        const std::size_t hat = enumerate_flats(TorusSetup::create(Bh)).size();
        CHECK(t.rows.size() == hat);
        CHECK(t.count1 + t.count2 + t.count3 == hat);
        // case 1 gives one modified flat, case 2 one original and two modified, case 3 one of each
        CHECK(tilde == t.count1 + 2 * t.count2 + t.count3);
        CHECK(orig == t.count2 + t.count3);
    }
}

TEST_CASE("modification recurrence")
{
    std::uint64_t seed = 1;
    for (const auto& m : mod_cases())
    {
        auto s = generic(m.B, seed);
        auto mod = modify(s, m.c, seed);
        auto quo = quotient_circle(s, m.c, seed);
        const auto p = poincare_morse(s), pt = poincare_morse(mod), ph = poincare_morse(quo);
        CHECK(pt == p + PoincarePoly::monomial(1) * ph);
        // coefficientwise: b~_2k = b_2k + b^_(2k-2)
        for (std::size_t k = 0; k <= static_cast<std::size_t>(pt.degree()); ++k)
            CHECK(pt.coeff(k) == p.coeff(k) + (k > 0 ? ph.coeff(k - 1) : BigInt(0)));
        const auto d = face_census(build_arrangement(s)).d;
        const auto dt = face_census(build_arrangement(mod)).d;
        const auto dh = face_census(build_arrangement(quo)).d;
        auto at = [](const std::vector<std::size_t>& v, std::size_t k) { return k < v.size() ? v[k] : 0; };
        for (std::size_t k = 0; k < dt.size(); ++k)
            CHECK(dt[k] == at(d, k) + at(dh, k) + (k > 0 ? at(dh, k - 1) : 0));
        ++seed;
    }
    auto s = setup(ones(2), rv({1}), cv({1}));
    CHECK(poincare_morse(modify(s, rv({1, 0}), 1)) == PoincarePoly{1, 2});
    CHECK(poincare_morse(modify(TorusSetup::create(RatMatrix(2, 0)), rv({1, 1}), 1)) == PoincarePoly{1, 1, 1});
}
