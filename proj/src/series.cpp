#include "starkms/series.hpp"

#include <cmath>

namespace starkms
{

const char *to_string(Sign s)
{
    switch (s) {
        case Sign::negative:
            return "negative";
        case Sign::zero:
            return "zero";
        case Sign::positive:
            return "positive";
    }
    return "?";
}

Sign ring_sign(const ScalarSeries<GaussRational> &a)
{
    for (const auto &c : a.coefficients()) {
        if (!c.is_real()) {
            throw domain_error("ring_sign: series has a non-real coefficient");
        }
    }
    for (const auto &c : a.coefficients()) {
        if (const int s = sgn(c.re); s != 0) {
            return s > 0 ? Sign::positive : Sign::negative;
        }
    }
    return Sign::zero;
}

Sign ring_sign(const ScalarSeries<Complex> &a, double imag_tol)
{
    for (const auto &c : a.coefficients()) {
        if (std::abs(c.imag()) > imag_tol) {
            throw domain_error("ring_sign: series has a non-real coefficient");
        }
    }
    for (const auto &c : a.coefficients()) {
        if (c.real() != 0.0) {
            return c.real() > 0 ? Sign::positive : Sign::negative;
        }
    }
    return Sign::zero;
}

} // namespace starkms
