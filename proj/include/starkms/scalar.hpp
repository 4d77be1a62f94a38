#pragma once

// Exact and floating scalar types shared by every backend.
//
// Exact backends use Gaussian rationals; the Fourier backend uses
// std::complex<double>. The free functions below (is_zero, conj, zero_like,
// from_gaussian) give both a common vocabulary for the generic algebra code.

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace starkms
{

using Rational = mpq_class;
using Complex = std::complex<double>;

Rational make_rational(long num, long den = 1);
// Parses "a", "a/b", or a decimal literal such as "0.25" / "1e-3" exactly.
Rational parse_rational(const std::string &text);
// Best rational approximation with denominator bounded by max_den.
Rational rational_approx(double x, long max_den = 1000000000L);
Rational rational_pow(const Rational &base, unsigned exp);
Rational factorial(unsigned n);
std::string to_string(const Rational &r);

class GaussRational
{
public:
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r) : re(std::move(r)) {}
    GaussRational(long r) : re(r) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRational i_unit() { return {Rational(0), Rational(1)}; }

    [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
    [[nodiscard]] GaussRational conj() const { return {re, -im}; }
    [[nodiscard]] Complex to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussRational &operator+=(const GaussRational &o)
    {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRational &operator-=(const GaussRational &o)
    {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRational &operator*=(const GaussRational &o);
    GaussRational &operator/=(const GaussRational &o);

    friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }
    friend GaussRational operator-(const GaussRational &a) { return {-a.re, -a.im}; }

    friend bool operator==(const GaussRational &a, const GaussRational &b)
    {
        return a.re == b.re && a.im == b.im;
    }
    // Lexicographic (re, im); only used for canonical container ordering.
    friend bool operator<(const GaussRational &a, const GaussRational &b)
    {
        const int c = cmp(a.re, b.re);
        return c != 0 ? c < 0 : a.im < b.im;
    }
};

std::ostream &operator<<(std::ostream &os, const GaussRational &z);
std::string to_string(const GaussRational &z);

inline bool is_zero(const GaussRational &z) { return z.is_zero(); }
inline bool is_zero(const Complex &z) { return z.real() == 0.0 && z.imag() == 0.0; }
inline GaussRational conj(const GaussRational &z) { return z.conj(); }
inline Complex conj(const Complex &z) { return std::conj(z); }
inline GaussRational zero_like(const GaussRational &) { return {}; }
inline Complex zero_like(const Complex &) { return {}; }

template <class S>
S from_gaussian(const GaussRational &z);

template <>
inline GaussRational from_gaussian<GaussRational>(const GaussRational &z)
{
    return z;
}

template <>
inline Complex from_gaussian<Complex>(const GaussRational &z)
{
    return z.to_complex();
}

inline Complex to_complex(const GaussRational &z) { return z.to_complex(); }
inline Complex to_complex(const Complex &z) { return z; }

} // namespace starkms
