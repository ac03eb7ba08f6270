#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "hkq/rational.hpp"

namespace hkq {

/**
 * Univariate polynomial with arbitrary-precision integer coefficients in q = t^2.
 * Coefficient i multiplies q^i; trailing zeros are always trimmed, so the zero
 * polynomial has no coefficients.
 */
class PoincarePoly
{
    public:
        PoincarePoly() = default;
        PoincarePoly(std::initializer_list<long> coeffs);
        explicit PoincarePoly(std::vector<BigInt> coeffs);

        static PoincarePoly constant(long c) { return PoincarePoly({c}); }
        static PoincarePoly monomial(std::size_t degree, long c = 1);
        /// (1 - q)^k
        static PoincarePoly one_minus_q_pow(std::size_t k);
        /// (q - 1)^k
        static PoincarePoly q_minus_one_pow(std::size_t k);

        const std::vector<BigInt>& coeffs() const { return c_; }
        bool is_zero() const { return c_.empty(); }
        /// -1 for the zero polynomial.
        long degree() const { return static_cast<long>(c_.size()) - 1; }
        BigInt coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }
        BigInt eval(long q) const;
        bool nonnegative() const;

        std::string to_string() const;

        friend bool operator==(const PoincarePoly&, const PoincarePoly&) = default;
        friend PoincarePoly operator+(const PoincarePoly& a, const PoincarePoly& b);
        friend PoincarePoly operator-(const PoincarePoly& a, const PoincarePoly& b);
        friend PoincarePoly operator*(const PoincarePoly& a, const PoincarePoly& b);

    private:
        void trim();
        std::vector<BigInt> c_;
};

PoincarePoly poly_add(const PoincarePoly& a, const PoincarePoly& b);
PoincarePoly poly_sub(const PoincarePoly& a, const PoincarePoly& b);
PoincarePoly poly_mul(const PoincarePoly& a, const PoincarePoly& b);

/// Exact quotient num / den. Throws NonZeroRemainder if den does not divide num,
/// std::invalid_argument if den is zero.
PoincarePoly poly_divide_exact(const PoincarePoly& num, const PoincarePoly& den);

/// First `terms` coefficients of the power series p / (1 - q).
std::vector<BigInt> series_over_one_minus_q(const PoincarePoly& p, std::size_t terms);

}  // namespace hkq
