#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace hkq {

using BigInt = boost::multiprecision::mpz_int;
/// Arbitrary-precision rational, always kept in lowest terms with positive denominator.
using Rat = boost::multiprecision::mpq_rational;

using RatVec = std::vector<Rat>;

inline BigInt num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rat& r) { return boost::multiprecision::denominator(r); }
inline bool is_integer(const Rat& r) { return den(r) == 1; }
inline int sign(const Rat& r) { return r.sign(); }

/// "p/q", or "p" when q = 1.
std::string to_string(const Rat& r);
/// Accepts "p", "p/q", with optional leading sign. Throws InvalidInput.
Rat parse_rat(std::string_view text);

/** Complex rational re + i*im. */
struct CRat
{
    Rat re;
    Rat im;

    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    CRat conj() const { return {re, -im}; }
    /// |z|^2 = re^2 + im^2.
    Rat norm2() const { return re * re + im * im; }

    friend bool operator==(const CRat&, const CRat&) = default;
    friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
    friend CRat operator-(const CRat& a, const CRat& b) { return {a.re - b.re, a.im - b.im}; }
    friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
    friend CRat operator*(const CRat& a, const CRat& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend CRat operator*(const Rat& s, const CRat& a) { return {s * a.re, s * a.im}; }
};

using CRatVec = std::vector<CRat>;

RatVec real_part(const CRatVec& v);
RatVec imag_part(const CRatVec& v);
CRatVec make_complex(const RatVec& re, const RatVec& im);

Rat dot(const RatVec& a, const RatVec& b);
RatVec operator+(const RatVec& a, const RatVec& b);
RatVec operator-(const RatVec& a, const RatVec& b);
RatVec operator*(const Rat& s, const RatVec& v);
bool is_zero(const RatVec& v);

/// Scales a rational vector to a primitive integer vector whose first nonzero entry is positive.
RatVec primitive_integer(const RatVec& v);

}  // namespace hkq
