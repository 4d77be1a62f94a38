#pragma once

// Independent numerical oracles used by the tests. Nothing here calls into the
// exact integration or star-product code paths it is used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle
{

// Trapezoid rule on [-L, L]^2; spectrally accurate for Gaussian-decaying integrands.
inline std::complex<double> integrate_plane(const std::function<std::complex<double>(double, double)> &f, double L = 12.0,
                                            int steps = 480)
{
    const double h = 2 * L / steps;
    std::complex<double> acc = 0.0;
    for (int i = 0; i <= steps; ++i) {
        const double x = -L + i * h;
        const double wx = (i == 0 || i == steps) ? 0.5 : 1.0;
        for (int j = 0; j <= steps; ++j) {
            const double y = -L + j * h;
            const double wy = (j == 0 || j == steps) ? 0.5 : 1.0;
            acc += wx * wy * f(x, y);
        }
    }
    return acc * h * h;
}

// Periodic trapezoid rule on [0, 2π)^2 (exact for trigonometric polynomials of low degree).
inline std::complex<double> integrate_torus(const std::function<std::complex<double>(double, double)> &f, int steps = 64)
{
    const double h = 2 * M_PI / steps;
    std::complex<double> acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        for (int j = 0; j < steps; ++j) {
            acc += f(i * h, j * h);
        }
    }
    return acc * h * h;
}

// Fourier coefficient of a 1-D periodic function by the trapezoid rule.
inline std::complex<double> fourier_coefficient_1d(const std::function<double(double)> &f, int k, int steps = 512)
{
    const double h = 2 * M_PI / steps;
    std::complex<double> acc = 0.0;
    for (int i = 0; i < steps; ++i) {
        const double x = i * h;
        acc += f(x) * std::polar(1.0, -k * x);
    }
    return acc / static_cast<double>(steps);
}

// Π^r(f, g) for n = 1, written from the binomial expansion of (∂_q⊗∂_p − ∂_p⊗∂_q)^r:
//   Σ_j C(r,j)(−1)^j ∂_q^{r−j}∂_p^j f · ∂_q^j ∂_p^{r−j} g.
// D(f, a, b) returns ∂_q^a ∂_p^b f; scale_by(h, k) multiplies by the integer k.
template <class F, class Deriv, class Scale>
F bivector_power(int r, const F &f, const F &g, Deriv D, Scale scale_by)
{
    F out = f.zero_like();
    long binom = 1;
    for (int j = 0; j <= r; ++j) {
        const long sign = (j % 2 == 0) ? 1 : -1;
        out = out + scale_by(D(f, r - j, j) * D(g, j, r - j), sign * binom);
        binom = binom * (r - j) / (j + 1);
    }
    return out;
}

} // namespace oracle
