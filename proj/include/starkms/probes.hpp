#pragma once

// Seeded probe generation.
//
// The generator is SplitMix64 driven by a counter: state_{j+1} = state_j +
// 0x9E3779B97F4A7C15 (starting at the seed), output = mix(state_{j+1}) with
// the standard SplitMix64 finalizer. Integers in [lo, hi] are lo + (x mod
// (hi − lo + 1)). Random polynomials enumerate monomials by total degree
// 0..d and, within one degree, in descending lexicographic order of the
// exponent vector (q_1..q_n, p_1..p_n); each monomial draws its real part and
// then (for complex probes) its imaginary part from [−range, range].

#include <cstddef>
#include <cstdint>
#include <vector>

#include "starkms/exppoly.hpp"
#include "starkms/fourier.hpp"
#include "starkms/poly.hpp"

namespace starkms
{

class SplitMix64
{
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    long uniform_int(long lo, long hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(next() % span);
    }

private:
    std::uint64_t state_;
};

// All exponent vectors of total degree <= d, in the documented order.
std::vector<Exponent> monomials_up_to(std::size_t n, int max_degree);

PolyFunction random_poly(SplitMix64 &rng, std::size_t n, int max_degree, long range = 3, bool complex = true);

// random_poly · e^{weight·H₀}
ExpPolyFunction random_gaussian_probe(SplitMix64 &rng, std::size_t n, int max_degree, const Rational &weight,
                                      long range = 3, bool complex = true);

// Modes |k_i| <= probe_band of a torus function with band `band`.
FourierFunction random_fourier(SplitMix64 &rng, int band, int probe_band, long range = 3, bool complex = true);

} // namespace starkms
