#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "starkms/scalar.hpp"

namespace starkms
{

// Exponent vector (q_1..q_n, p_1..p_n).
using Exponent = std::vector<int>;

// Exact multivariate polynomial on R^{2n} with Gaussian-rational coefficients.
// Axis a < n is q_{a+1}, axis a >= n is p_{a-n+1}. Zero coefficients are
// never stored.
class PolyFunction
{
public:
    using Scalar = GaussRational;
    using TermMap = std::map<Exponent, GaussRational>;

    explicit PolyFunction(std::size_t n = 1) : n_(n) {}

    static PolyFunction constant(std::size_t n, const GaussRational &c);
    static PolyFunction variable(std::size_t n, std::size_t axis);
    static PolyFunction q(std::size_t n, std::size_t i) { return variable(n, i); }
    static PolyFunction p(std::size_t n, std::size_t i) { return variable(n, n + i); }
    static PolyFunction monomial(std::size_t n, Exponent e, const GaussRational &c);
    // ½ Σ (q_i² + p_i²).
    static PolyFunction reference_quadratic(std::size_t n);

    [[nodiscard]] std::size_t dof() const { return n_; }
    [[nodiscard]] std::size_t phase_dim() const { return 2 * n_; }
    [[nodiscard]] const TermMap &terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_real() const;
    // -1 for the zero polynomial.
    [[nodiscard]] int degree() const;
    [[nodiscard]] GaussRational coefficient(const Exponent &e) const;
    [[nodiscard]] GaussRational constant_term() const;

    [[nodiscard]] PolyFunction zero_like() const { return PolyFunction(n_); }
    [[nodiscard]] PolyFunction derivative(std::size_t axis) const;
    [[nodiscard]] PolyFunction conj() const;
    // Substitutes variable a by images[a] (each a polynomial in the same n).
    [[nodiscard]] PolyFunction substitute(const std::vector<PolyFunction> &images) const;

    [[nodiscard]] Complex evaluate(const std::vector<double> &x) const;
    [[nodiscard]] GaussRational evaluate_exact(const std::vector<Rational> &x) const;

    void check_compatible(const PolyFunction &o) const;

    PolyFunction &operator+=(const PolyFunction &o);
    PolyFunction &operator-=(const PolyFunction &o);
    PolyFunction &operator*=(const GaussRational &c);
    // Adds c·x^e in place.
    void add_term(const Exponent &e, const GaussRational &c);

    friend PolyFunction operator+(PolyFunction a, const PolyFunction &b) { return a += b; }
    friend PolyFunction operator-(PolyFunction a, const PolyFunction &b) { return a -= b; }
    friend PolyFunction operator*(PolyFunction a, const GaussRational &c) { return a *= c; }
    friend PolyFunction operator*(const GaussRational &c, PolyFunction a) { return a *= c; }
    friend PolyFunction operator*(const PolyFunction &a, const PolyFunction &b);
    friend PolyFunction operator-(const PolyFunction &a);

    friend bool operator==(const PolyFunction &a, const PolyFunction &b)
    {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }
    friend bool operator<(const PolyFunction &a, const PolyFunction &b)
    {
        if (a.n_ != b.n_) {
            return a.n_ < b.n_;
        }
        return a.terms_ < b.terms_;
    }

    [[nodiscard]] std::string to_string() const;

private:
    std::size_t n_;
    TermMap terms_;
};

inline bool is_zero(const PolyFunction &f) { return f.is_zero(); }
inline PolyFunction conj(const PolyFunction &f) { return f.conj(); }
inline PolyFunction zero_like(const PolyFunction &f) { return f.zero_like(); }

// Poisson bracket {f,g} = Σ_i (∂_{q_i} f ∂_{p_i} g − ∂_{p_i} f ∂_{q_i} g), for any backend.
template <class F>
F poisson_bracket(const F &f, const F &g)
{
    f.check_compatible(g);
    const std::size_t n = f.dof();
    F out = f.zero_like();
    for (std::size_t i = 0; i < n; ++i) {
        out = out + f.derivative(i) * g.derivative(n + i) - f.derivative(n + i) * g.derivative(i);
    }
    return out;
}

} // namespace starkms
