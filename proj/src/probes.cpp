#include "starkms/probes.hpp"

#include <algorithm>
#include <functional>

namespace starkms
{

std::vector<Exponent> monomials_up_to(std::size_t n, int max_degree)
{
    std::vector<Exponent> out;
    const std::size_t dim = 2 * n;
    for (int d = 0; d <= max_degree; ++d) {
        std::vector<Exponent> level;
        Exponent e(dim, 0);
        std::function<void(std::size_t, int)> rec = [&](std::size_t axis, int left) {
            if (axis + 1 == dim) {
                e[axis] = left;
                level.push_back(e);
                return;
            }
            for (int k = left; k >= 0; --k) {
                e[axis] = k;
                rec(axis + 1, left - k);
            }
        };
        rec(0, d);
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

PolyFunction random_poly(SplitMix64 &rng, std::size_t n, int max_degree, long range, bool complex)
{
    PolyFunction f(n);
    for (const auto &e : monomials_up_to(n, max_degree)) {
        const long re = rng.uniform_int(-range, range);
        const long im = complex ? rng.uniform_int(-range, range) : 0;
        f.add_term(e, GaussRational(Rational(re), Rational(im)));
    }
    return f;
}

ExpPolyFunction random_gaussian_probe(SplitMix64 &rng, std::size_t n, int max_degree, const Rational &weight,
                                      long range, bool complex)
{
    const PolyFunction p = random_poly(rng, n, max_degree, range, complex);
    return ExpPolyFunction::term(p, PolyFunction::reference_quadratic(n) * GaussRational(weight));
}

FourierFunction random_fourier(SplitMix64 &rng, int band, int probe_band, long range, bool complex)
{
    FourierFunction f(band);
    const int pb = std::min(band, probe_band);
    for (int k1 = -pb; k1 <= pb; ++k1) {
        for (int k2 = -pb; k2 <= pb; ++k2) {
            const long re = rng.uniform_int(-range, range);
            const long im = complex ? rng.uniform_int(-range, range) : 0;
            f.set_coefficient(k1, k2, Complex(static_cast<double>(re), static_cast<double>(im)));
        }
    }
    if (!complex) {
        // Real-valued: symmetrize the coefficients.
        FourierFunction c = f.conj();
        f = (f + c) * Complex(0.5);
    }
    return f;
}

} // namespace starkms
