#include "hkq/poly.hpp"

#include <sstream>
#include <stdexcept>

#include "hkq/errors.hpp"

namespace hkq {

PoincarePoly::PoincarePoly(std::initializer_list<long> coeffs)
{
    for (long c : coeffs)
        c_.emplace_back(c);
    trim();
}

PoincarePoly::PoincarePoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs))
{
    trim();
}

PoincarePoly PoincarePoly::monomial(std::size_t degree, long c)
{
    std::vector<BigInt> v(degree + 1);
    v[degree] = c;
    return PoincarePoly(std::move(v));
}

PoincarePoly PoincarePoly::one_minus_q_pow(std::size_t k)
{
    PoincarePoly p = constant(1);
    const PoincarePoly f{1, -1};
    for (std::size_t i = 0; i < k; ++i)
        p = p * f;
    return p;
}

PoincarePoly PoincarePoly::q_minus_one_pow(std::size_t k)
{
    PoincarePoly p = constant(1);
    const PoincarePoly f{-1, 1};
    for (std::size_t i = 0; i < k; ++i)
        p = p * f;
    return p;
}

void PoincarePoly::trim()
{
    while (!c_.empty() && c_.back() == 0)
        c_.pop_back();
}

BigInt PoincarePoly::eval(long q) const
{
    BigInt acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
        acc = acc * q + *it;
    return acc;
}

bool PoincarePoly::nonnegative() const
{
    for (const auto& c : c_)
    {
        if (c < 0)
            return false;
    }
    return true;
}

std::string PoincarePoly::to_string() const
{
    if (c_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i)
    {
        if (c_[i] == 0)
            continue;
        BigInt a = abs(c_[i]);
        if (!first)
            os << (c_[i] < 0 ? " - " : " + ");
        else if (c_[i] < 0)
            os << "-";
        if (i == 0 || a != 1)
            os << a;
        if (i >= 1)
            os << "q";
        if (i >= 2)
            os << "^" << i;
        first = false;
    }
    return os.str();
}

PoincarePoly operator+(const PoincarePoly& a, const PoincarePoly& b)
{
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        c[i] += b.c_[i];
    return PoincarePoly(std::move(c));
}

PoincarePoly operator-(const PoincarePoly& a, const PoincarePoly& b)
{
    std::vector<BigInt> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i)
        c[i] -= b.c_[i];
    return PoincarePoly(std::move(c));
}

PoincarePoly operator*(const PoincarePoly& a, const PoincarePoly& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            c[i + j] += a.c_[i] * b.c_[j];
    return PoincarePoly(std::move(c));
}

PoincarePoly poly_add(const PoincarePoly& a, const PoincarePoly& b) { return a + b; }
PoincarePoly poly_sub(const PoincarePoly& a, const PoincarePoly& b) { return a - b; }
PoincarePoly poly_mul(const PoincarePoly& a, const PoincarePoly& b) { return a * b; }

PoincarePoly poly_divide_exact(const PoincarePoly& num, const PoincarePoly& den)
{
    if (den.is_zero())
        throw std::invalid_argument("poly_divide_exact: zero divisor");
    std::vector<BigInt> rem = num.coeffs();
    const auto& d = den.coeffs();
    const std::size_t dd = d.size() - 1;
    if (rem.size() < d.size())
    {
        if (!num.is_zero())
            throw NonZeroRemainder(num.to_string() + " is not divisible by " + den.to_string());
        return {};
    }
    std::vector<BigInt> quot(rem.size() - dd);
    for (std::size_t k = quot.size(); k-- > 0;)
    {
        const BigInt& lead = rem[k + dd];
        if (lead % d[dd] != 0)
            throw NonZeroRemainder(num.to_string() + " is not divisible by " + den.to_string());
        BigInt f = lead / d[dd];
        quot[k] = f;
        for (std::size_t j = 0; j <= dd; ++j)
            rem[k + j] -= f * d[j];
    }
    for (const auto& r : rem)
    {
        if (r != 0)
            throw NonZeroRemainder(num.to_string() + " is not divisible by " + den.to_string());
    }
    return PoincarePoly(std::move(quot));
}

std::vector<BigInt> series_over_one_minus_q(const PoincarePoly& p, std::size_t terms)
{
    std::vector<BigInt> out(terms);
    BigInt acc = 0;
    for (std::size_t i = 0; i < terms; ++i)
    {
        acc += p.coeff(i);
        out[i] = acc;
    }
    return out;
}

}  // namespace hkq
