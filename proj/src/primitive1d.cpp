#include "starkms/primitive1d.hpp"

#include <cmath>
#include <string>

#include "starkms/errors.hpp"

namespace starkms
{

std::vector<Rational> compact_primitive_gaussian(const std::vector<Rational> &poly, const Rational &c)
{
    if (sgn(c) >= 0) {
        throw precondition_error("compact_primitive_gaussian needs a decaying weight c < 0");
    }
    int m = static_cast<int>(poly.size()) - 1;
    while (m >= 0 && sgn(poly[static_cast<std::size_t>(m)]) == 0) {
        --m;
    }
    if (m < 0) {
        return {};
    }
    // Q' + c x Q = P, deg Q = m − 1; coefficient of x^j: (j+1)Q_{j+1} + c Q_{j−1} = P_j.
    std::vector<Rational> q(static_cast<std::size_t>(m) + 1, Rational(0));
    auto Q = [&](int j) -> Rational { return (j < 0 || j > m) ? Rational(0) : q[static_cast<std::size_t>(j)]; };
    for (int j = m; j >= 1; --j) {
        q[static_cast<std::size_t>(j - 1)] = (poly[static_cast<std::size_t>(j)] - (j + 1) * Q(j + 1)) / c;
    }
    // The x^0 equation is the solvability condition ∫φ = 0.
    if (Q(1) != poly[0]) {
        throw precondition_error("compact_primitive: integral of phi is nonzero (" + to_string(Rational(poly[0] - Q(1))) +
                                 " mismatch)");
    }
    q.resize(static_cast<std::size_t>(std::max(m, 1)));
    return q;
}

SampledPrimitive compact_primitive_sampled(const std::vector<double> &phi, double dx, double tol)
{
    SampledPrimitive out;
    const std::size_t n = phi.size();
    out.values.assign(n, 0.0);
    if (n < 2) {
        return out;
    }
    double abs_total = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        double cell = 0.0;
        if (n >= 4) {
            // Cubic through four neighbouring samples, integrated over [x_{i-1}, x_i].
            const std::size_t a = (i == 1) ? 0 : (i == n - 1 ? n - 4 : i - 2);
            const double f0 = phi[a], f1 = phi[a + 1], f2 = phi[a + 2], f3 = phi[a + 3];
            const std::size_t cell_index = i - 1 - a; // 0, 1 or 2
            if (cell_index == 0) {
                cell = dx * (9 * f0 + 19 * f1 - 5 * f2 + f3) / 24.0;
            } else if (cell_index == 1) {
                cell = dx * (-f0 + 13 * f1 + 13 * f2 - f3) / 24.0;
            } else {
                cell = dx * (f0 - 5 * f1 + 19 * f2 + 9 * f3) / 24.0;
            }
        } else {
            cell = 0.5 * dx * (phi[i - 1] + phi[i]);
        }
        out.values[i] = out.values[i - 1] + cell;
        abs_total += 0.5 * dx * (std::abs(phi[i - 1]) + std::abs(phi[i]));
    }
    out.total_integral = out.values.back();
    if (std::abs(out.total_integral) > tol * (abs_total + 1e-300)) {
        throw precondition_error("compact_primitive: integral of phi is nonzero (" + std::to_string(out.total_integral) +
                                 ")");
    }
    return out;
}

} // namespace starkms
