#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starkms/integral.hpp"
#include "starkms/poly.hpp"

namespace starkms
{

// Σ_j P_j · e^{E_j} on R^{2n}, with P_j and E_j exact polynomials.
//
// The exponents are kept symbolic and merged exactly, so the ring is closed
// under products and partial derivatives. A term is integrable against the
// symplectic volume iff E_j = c·H₀ with rational c < 0 (or P_j = 0), where
// H₀ = ½Σ(q_i² + p_i²).
class ExpPolyFunction
{
public:
    using Scalar = GaussRational;
    using TermMap = std::map<PolyFunction, PolyFunction>; // exponent -> prefactor

    explicit ExpPolyFunction(std::size_t n = 1) : n_(n) {}
    // Plain polynomial (exponent 0).
    ExpPolyFunction(const PolyFunction &p); // NOLINT(google-explicit-constructor)

    static ExpPolyFunction constant(std::size_t n, const GaussRational &c);
    // prefactor · e^{exponent}
    static ExpPolyFunction term(const PolyFunction &prefactor, const PolyFunction &exponent);
    // e^{c·H₀}
    static ExpPolyFunction gaussian(std::size_t n, const Rational &c);

    [[nodiscard]] std::size_t dof() const { return n_; }
    [[nodiscard]] const TermMap &terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_polynomial() const;
    // Throws domain_error unless is_polynomial().
    [[nodiscard]] PolyFunction as_polynomial() const;
    // Prefactor attached to a given exponent (zero if absent).
    [[nodiscard]] PolyFunction prefactor(const PolyFunction &exponent) const;

    [[nodiscard]] ExpPolyFunction zero_like() const { return ExpPolyFunction(n_); }
    [[nodiscard]] ExpPolyFunction derivative(std::size_t axis) const;
    [[nodiscard]] ExpPolyFunction conj() const;
    [[nodiscard]] ExpPolyFunction substitute(const std::vector<PolyFunction> &images) const;
    [[nodiscard]] Complex evaluate(const std::vector<double> &x) const;

    // Weight c if e^{exponent} = e^{c·H₀}, nothing otherwise.
    [[nodiscard]] static std::optional<Rational> gaussian_weight(const PolyFunction &exponent);
    [[nodiscard]] bool integrable() const;
    // ∫ f Ω with Ω = Π dq_i∧dp_i, as an exact multiple of π^n.
    [[nodiscard]] PiScaled<GaussRational> integrate() const;

    void check_compatible(const ExpPolyFunction &o) const;

    ExpPolyFunction &operator+=(const ExpPolyFunction &o);
    ExpPolyFunction &operator-=(const ExpPolyFunction &o);
    ExpPolyFunction &operator*=(const GaussRational &c);

    friend ExpPolyFunction operator+(ExpPolyFunction a, const ExpPolyFunction &b) { return a += b; }
    friend ExpPolyFunction operator-(ExpPolyFunction a, const ExpPolyFunction &b) { return a -= b; }
    friend ExpPolyFunction operator*(ExpPolyFunction a, const GaussRational &c) { return a *= c; }
    friend ExpPolyFunction operator*(const GaussRational &c, ExpPolyFunction a) { return a *= c; }
    friend ExpPolyFunction operator*(const ExpPolyFunction &a, const ExpPolyFunction &b);
    friend ExpPolyFunction operator-(const ExpPolyFunction &a);
    friend bool operator==(const ExpPolyFunction &a, const ExpPolyFunction &b)
    {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

    [[nodiscard]] std::string to_string() const;

private:
    void add_term(const PolyFunction &exponent, const PolyFunction &prefactor);

    std::size_t n_;
    TermMap terms_;
};

inline bool is_zero(const ExpPolyFunction &f) { return f.is_zero(); }
inline ExpPolyFunction conj(const ExpPolyFunction &f) { return f.conj(); }
inline ExpPolyFunction zero_like(const ExpPolyFunction &f) { return f.zero_like(); }

// Exact Gaussian moment ∫_R x^m e^{c x²/2} dx / sqrt(2π/(−c)) = (m−1)!!·(−1/c)^{m/2} (0 for odd m).
Rational gaussian_moment_ratio(int m, const Rational &c);

} // namespace starkms
