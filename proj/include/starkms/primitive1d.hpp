#pragma once

#include <vector>

#include "starkms/scalar.hpp"

namespace starkms
{

// Compactly decaying primitive of a 1-D function with vanishing integral.

// Exact route for φ(x) = P(x)·e^{c x²/2}, c < 0, P given by its coefficients
// (index = power of x). Returns Q with (Q e^{c x²/2})' = φ; throws
// precondition_error if ∫φ ≠ 0 (then no decaying primitive exists).
std::vector<Rational> compact_primitive_gaussian(const std::vector<Rational> &poly, const Rational &c);

struct SampledPrimitive
{
    std::vector<double> values; // h at the input grid points, h(x_0) = 0
    double total_integral = 0.0;
};

// Sampled route: φ on a uniform grid with spacing dx (fourth-order composite
// quadrature on each cell via cubic interpolation). Precondition: |∫φ| <=
// tol·(∫|φ| + 1e-300).
SampledPrimitive compact_primitive_sampled(const std::vector<double> &phi, double dx, double tol = 1e-8);

} // namespace starkms
