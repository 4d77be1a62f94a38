#include "starkms/scalar.hpp"

#include <cmath>
#include <sstream>

#include "starkms/errors.hpp"

namespace starkms
{

Rational make_rational(long num, long den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string &text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw precondition_error("empty rational literal");
    }
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const Rational num = parse_rational(s.substr(0, slash));
        const Rational den = parse_rational(s.substr(slash + 1));
        if (sgn(den) == 0) {
            throw precondition_error("zero denominator in '" + text + "'");
        }
        return num / den;
    }
    // Decimal with optional exponent, converted exactly.
    bool negative = false;
    std::size_t pos = 0;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_dot) {
                ++frac_digits;
            }
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any_digit) {
        throw precondition_error("malformed rational literal '" + text + "'");
    }
    long exponent = 0;
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') {
            throw precondition_error("malformed rational literal '" + text + "'");
        }
        try {
            std::size_t used = 0;
            exponent = std::stol(s.substr(pos + 1), &used);
            if (pos + 1 + used != s.size()) {
                throw precondition_error("malformed rational literal '" + text + "'");
            }
        } catch (const std::logic_error &) {
            throw precondition_error("malformed rational literal '" + text + "'");
        }
    }
    mpz_class mantissa(digits, 10);
    Rational r(mantissa);
    const long shift = exponent - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    if (shift >= 0) {
        r *= Rational(scale);
    } else {
        r /= Rational(scale);
    }
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

Rational rational_approx(double x, long max_den)
{
    if (!std::isfinite(x)) {
        throw domain_error("cannot approximate a non-finite value by a rational");
    }
    // Continued-fraction convergents of the exact binary value of x.
    Rational exact(x);
    mpz_class h_prev = 1, h = 0, k_prev = 0, k = 1;
    mpz_class num = exact.get_num(), den = exact.get_den();
    Rational best(0);
    bool have_best = false;
    while (sgn(den) != 0) {
        mpz_class a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        mpz_class h_next = a * h_prev + h;
        mpz_class k_next = a * k_prev + k;
        if (k_next > max_den) {
            break;
        }
        h = h_prev;
        k = k_prev;
        h_prev = h_next;
        k_prev = k_next;
        best = Rational(h_prev, k_prev);
        best.canonicalize();
        have_best = true;
        mpz_class rem = num - a * den;
        num = den;
        den = rem;
    }
    if (!have_best) {
        return Rational(mpz_class(std::floor(x)));
    }
    return best;
}

Rational rational_pow(const Rational &base, unsigned exp)
{
    Rational out(1);
    for (unsigned i = 0; i < exp; ++i) {
        out *= base;
    }
    return out;
}

Rational factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

std::string to_string(const Rational &r)
{
    Rational c(r);
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

GaussRational &GaussRational::operator*=(const GaussRational &o)
{
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussRational &GaussRational::operator/=(const GaussRational &o)
{
    const Rational norm = o.re * o.re + o.im * o.im;
    if (sgn(norm) == 0) {
        throw domain_error("division by zero Gaussian rational");
    }
    *this *= o.conj();
    re /= norm;
    im /= norm;
    return *this;
}

std::ostream &operator<<(std::ostream &os, const GaussRational &z)
{
    return os << to_string(z);
}

std::string to_string(const GaussRational &z)
{
    std::ostringstream ss;
    if (z.is_real()) {
        ss << z.re.get_str();
    } else if (sgn(z.re) == 0) {
        ss << z.im.get_str() << "i";
    } else {
        ss << "(" << z.re.get_str() << (sgn(z.im) < 0 ? "" : "+") << z.im.get_str() << "i)";
    }
    return ss.str();
}

} // namespace starkms
