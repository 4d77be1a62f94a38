#pragma once

#include <cmath>
#include <numbers>

#include "starkms/scalar.hpp"
#include "starkms/series.hpp"

namespace starkms
{

// value · π^pi_power. Exact volume integrals on R^{2n} come out as Gaussian
// rationals times π^n; the torus backend uses pi_power = 2 with a floating
// multiplier.
template <class S>
struct PiScaled
{
    S value{};
    int pi_power = 0;

    [[nodiscard]] Complex to_complex() const
    {
        return to_starkms_complex(value) * std::pow(std::numbers::pi, pi_power);
    }

private:
    static Complex to_starkms_complex(const S &v) { return starkms::to_complex(v); }
};

// A λ-series of values sharing one power of π (a functional's output).
template <class S>
struct PiSeries
{
    ScalarSeries<S> series;
    int pi_power = 0;

    [[nodiscard]] ScalarSeries<Complex> to_complex() const
    {
        const double scale = std::pow(std::numbers::pi, pi_power);
        return series.map([scale](const S &v) { return starkms::to_complex(v) * scale; });
    }
};

} // namespace starkms
