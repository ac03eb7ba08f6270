#include "hkq/rational.hpp"

#include <cctype>
#include <stdexcept>

#include "hkq/errors.hpp"

namespace hkq {

std::string to_string(const Rat& r)
{
    if (is_integer(r))
        return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

namespace {

BigInt parse_int(std::string_view s, std::string_view whole)
{
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+'))
        i = 1;
    if (i == s.size())
        throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
    {
        if (!std::isdigit(static_cast<unsigned char>(s[k])))
            throw InvalidInput("malformed rational '" + std::string(whole) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return BigInt(digits);
}

}  // namespace

Rat parse_rat(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rat(parse_int(text, text));
    BigInt p = parse_int(text.substr(0, slash), text);
    auto qs = text.substr(slash + 1);
    if (!qs.empty() && (qs[0] == '-' || qs[0] == '+'))
        throw InvalidInput("denominator must be unsigned in '" + std::string(text) + "'");
    BigInt q = parse_int(qs, text);
    if (q == 0)
        throw InvalidInput("zero denominator in '" + std::string(text) + "'");
    return Rat(p, q);
}

RatVec real_part(const CRatVec& v)
{
    RatVec out;
    out.reserve(v.size());
    for (const auto& z : v)
        out.push_back(z.re);
    return out;
}

RatVec imag_part(const CRatVec& v)
{
    RatVec out;
    out.reserve(v.size());
    for (const auto& z : v)
        out.push_back(z.im);
    return out;
}

CRatVec make_complex(const RatVec& re, const RatVec& im)
{
    if (re.size() != im.size())
        throw std::invalid_argument("make_complex: length mismatch");
    CRatVec out(re.size());
    for (std::size_t i = 0; i < re.size(); ++i)
        out[i] = CRat(re[i], im[i]);
    return out;
}

Rat dot(const RatVec& a, const RatVec& b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

RatVec operator+(const RatVec& a, const RatVec& b)
{
    RatVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b.at(i);
    return out;
}

RatVec operator-(const RatVec& a, const RatVec& b)
{
    RatVec out(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] -= b.at(i);
    return out;
}

RatVec operator*(const Rat& s, const RatVec& v)
{
    RatVec out(v);
    for (auto& x : out)
        x *= s;
    return out;
}

bool is_zero(const RatVec& v)
{
    for (const auto& x : v)
    {
        if (x != 0)
            return false;
    }
    return true;
}

RatVec primitive_integer(const RatVec& v)
{
    BigInt l = 1;
    for (const auto& x : v)
        l = boost::multiprecision::lcm(l, den(x));
    BigInt g = 0;
    for (const auto& x : v)
        g = boost::multiprecision::gcd(g, num(x) * (l / den(x)));
    if (g == 0)
        return v;
    RatVec out(v.size());
    int s = 0;
    for (const auto& x : v)
    {
        if (x != 0)
        {
            s = sign(x);
            break;
        }
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rat(s * (num(v[i]) * (l / den(v[i]))) / g);
    return out;
}

}  // namespace hkq
