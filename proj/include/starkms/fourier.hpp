#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "starkms/integral.hpp"
#include "starkms/scalar.hpp"

namespace starkms
{

// Band-limited function on T² = (R/2πZ)², coordinates (θ₁, θ₂), stored as the
// dense block of Fourier coefficients with |k_i| <= band. Products drop
// out-of-band modes and accumulate their L² norm in leakage().
//
// For the generic algebra the torus is a phase space with one degree of
// freedom: axis 0 is θ₁ (playing q), axis 1 is θ₂ (playing p), ω = dθ₁∧dθ₂.
class FourierFunction
{
public:
    using Scalar = Complex;

    explicit FourierFunction(int band = 0);

    static FourierFunction constant(int band, Complex c);
    // e^{i(k₁θ₁ + k₂θ₂)}
    static FourierFunction mode(int band, int k1, int k2, Complex c = 1.0);

    [[nodiscard]] int band() const { return band_; }
    [[nodiscard]] std::size_t dof() const { return 1; }
    [[nodiscard]] double leakage() const { return leakage_; }
    [[nodiscard]] Complex coefficient(int k1, int k2) const;
    void set_coefficient(int k1, int k2, Complex c);
    [[nodiscard]] const std::vector<Complex> &data() const { return coeffs_; }

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_real(double tol = 0.0) const;
    [[nodiscard]] double max_abs() const;
    [[nodiscard]] FourierFunction zero_like() const { return FourierFunction(band_); }
    // Spectral derivative, exact in band.
    [[nodiscard]] FourierFunction derivative(std::size_t axis) const;
    [[nodiscard]] FourierFunction conj() const;
    // Pullback by the translation θ ↦ θ + shift.
    [[nodiscard]] FourierFunction translate(double shift1, double shift2) const;
    // Re-band: modes outside the new band are dropped and counted as leakage.
    [[nodiscard]] FourierFunction with_band(int band) const;
    [[nodiscard]] Complex evaluate(double theta1, double theta2) const;
    // ∫ f dθ₁∧dθ₂ = (2π)²·f̂(0,0), reported as 4·f̂(0,0)·π².
    [[nodiscard]] PiScaled<Complex> integrate() const;
    [[nodiscard]] bool integrable() const { return true; }

    void check_compatible(const FourierFunction &o) const;

    FourierFunction &operator+=(const FourierFunction &o);
    FourierFunction &operator-=(const FourierFunction &o);
    FourierFunction &operator*=(Complex c);

    friend FourierFunction operator+(FourierFunction a, const FourierFunction &b) { return a += b; }
    friend FourierFunction operator-(FourierFunction a, const FourierFunction &b) { return a -= b; }
    friend FourierFunction operator*(FourierFunction a, Complex c) { return a *= c; }
    friend FourierFunction operator*(Complex c, FourierFunction a) { return a *= c; }
    friend FourierFunction operator*(const FourierFunction &a, const FourierFunction &b);
    friend FourierFunction operator-(const FourierFunction &a);

    [[nodiscard]] std::string to_string() const;

private:
    [[nodiscard]] std::size_t index(int k1, int k2) const
    {
        const int w = 2 * band_ + 1;
        return static_cast<std::size_t>((k1 + band_) * w + (k2 + band_));
    }

    int band_;
    std::vector<Complex> coeffs_;
    double leakage_ = 0.0;
};

inline bool is_zero(const FourierFunction &f) { return f.is_zero(); }
inline FourierFunction conj(const FourierFunction &f) { return f.conj(); }
inline FourierFunction zero_like(const FourierFunction &f) { return f.zero_like(); }

} // namespace starkms
