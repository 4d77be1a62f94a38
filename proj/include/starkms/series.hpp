#pragma once

// Truncated formal power series in the deformation parameter λ.
//
// FormalSeries<T> stores exactly K + 1 coefficients (orders 0..K). T is either
// a scalar (GaussRational, Complex) or a coefficient function of one of the
// backends. Truncation is silent: products drop orders above K, and binary
// operations return the smaller of the two truncation orders.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "starkms/errors.hpp"
#include "starkms/scalar.hpp"

namespace starkms
{

template <class T>
class FormalSeries
{
public:
    using value_type = T;

    FormalSeries() = default;

    // coeffs.size() == K + 1; callers pass explicit zeros for missing orders.
    explicit FormalSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs))
    {
        if (coeffs_.empty()) {
            throw precondition_error("a formal series needs at least the λ^0 coefficient");
        }
    }

    // c·λ^0 padded with zeros up to order K.
    static FormalSeries constant(const T &c, std::size_t K)
    {
        std::vector<T> v(K + 1, zero_like(c));
        v[0] = c;
        return FormalSeries(std::move(v));
    }

    // c·λ^order (zero series if order > K).
    static FormalSeries monomial(const T &c, std::size_t order, std::size_t K)
    {
        std::vector<T> v(K + 1, zero_like(c));
        if (order <= K) {
            v[order] = c;
        }
        return FormalSeries(std::move(v));
    }

    static FormalSeries zero(const T &prototype, std::size_t K)
    {
        return FormalSeries(std::vector<T>(K + 1, zero_like(prototype)));
    }

    [[nodiscard]] std::size_t truncation() const { return coeffs_.size() - 1; }
    [[nodiscard]] const T &operator[](std::size_t r) const { return coeffs_.at(r); }
    [[nodiscard]] const std::vector<T> &coefficients() const { return coeffs_; }

    [[nodiscard]] FormalSeries truncated(std::size_t K) const
    {
        if (K >= coeffs_.size()) {
            throw truncation_bound_error("cannot raise the truncation order of a series");
        }
        return FormalSeries(std::vector<T>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(K + 1)));
    }

    // Smallest order with a nonzero coefficient; nullopt for the zero series.
    [[nodiscard]] std::optional<std::size_t> lowest_order() const
    {
        for (std::size_t r = 0; r < coeffs_.size(); ++r) {
            if (!is_zero(coeffs_[r])) {
                return r;
            }
        }
        return std::nullopt;
    }

    [[nodiscard]] bool is_zero_series() const { return !lowest_order().has_value(); }

    template <class F>
    [[nodiscard]] auto map(F &&fn) const
    {
        using U = std::decay_t<decltype(fn(coeffs_[0]))>;
        std::vector<U> out;
        out.reserve(coeffs_.size());
        for (const auto &c : coeffs_) {
            out.push_back(fn(c));
        }
        return FormalSeries<U>(std::move(out));
    }

    friend FormalSeries operator+(const FormalSeries &a, const FormalSeries &b)
    {
        const std::size_t K = std::min(a.truncation(), b.truncation());
        std::vector<T> v;
        v.reserve(K + 1);
        for (std::size_t r = 0; r <= K; ++r) {
            v.push_back(a.coeffs_[r] + b.coeffs_[r]);
        }
        return FormalSeries(std::move(v));
    }

    friend FormalSeries operator-(const FormalSeries &a, const FormalSeries &b)
    {
        const std::size_t K = std::min(a.truncation(), b.truncation());
        std::vector<T> v;
        v.reserve(K + 1);
        for (std::size_t r = 0; r <= K; ++r) {
            v.push_back(a.coeffs_[r] - b.coeffs_[r]);
        }
        return FormalSeries(std::move(v));
    }

    friend FormalSeries operator-(const FormalSeries &a)
    {
        return a.map([](const T &c) { return -c; });
    }

    // Cauchy product over the coefficient algebra's own (commutative) product.
    friend FormalSeries operator*(const FormalSeries &a, const FormalSeries &b)
    {
        const std::size_t K = std::min(a.truncation(), b.truncation());
        std::vector<T> v;
        v.reserve(K + 1);
        for (std::size_t r = 0; r <= K; ++r) {
            T acc = zero_like(a.coeffs_[0]);
            for (std::size_t s = 0; s <= r; ++s) {
                if (is_zero(a.coeffs_[s]) || is_zero(b.coeffs_[r - s])) {
                    continue;
                }
                acc = acc + a.coeffs_[s] * b.coeffs_[r - s];
            }
            v.push_back(std::move(acc));
        }
        return FormalSeries(std::move(v));
    }

    friend bool operator==(const FormalSeries &a, const FormalSeries &b)
    {
        if (a.truncation() != b.truncation()) {
            return false;
        }
        for (std::size_t r = 0; r < a.coeffs_.size(); ++r) {
            if (!is_zero(a.coeffs_[r] - b.coeffs_[r])) {
                return false;
            }
        }
        return true;
    }

private:
    std::vector<T> coeffs_;
};

template <class S>
using ScalarSeries = FormalSeries<S>;

// Scalar-series action on a function series: (c·f)_r = Σ_{s+t=r} c_s f_t.
template <class S, class F>
FormalSeries<F> scale(const ScalarSeries<S> &c, const FormalSeries<F> &f)
{
    const std::size_t K = std::min(c.truncation(), f.truncation());
    std::vector<F> v;
    v.reserve(K + 1);
    for (std::size_t r = 0; r <= K; ++r) {
        F acc = zero_like(f[0]);
        for (std::size_t s = 0; s <= r; ++s) {
            if (!is_zero(c[s])) {
                acc = acc + f[r - s] * c[s];
            }
        }
        v.push_back(std::move(acc));
    }
    return FormalSeries<F>(std::move(v));
}

template <class T, class S>
FormalSeries<T> scale(const FormalSeries<T> &f, const S &c)
{
    return f.map([&](const T &x) { return x * c; });
}

// Coefficient-wise complex conjugation; λ is real.
template <class T>
FormalSeries<T> conjugate_series(const FormalSeries<T> &a)
{
    return a.map([](const T &x) { return conj(x); });
}

template <class T>
std::optional<std::size_t> lowest_order(const FormalSeries<T> &a)
{
    return a.lowest_order();
}

enum class Sign
{
    negative = -1,
    zero = 0,
    positive = 1
};

const char *to_string(Sign s);

// Ring ordering of R[[λ]]: the lowest nonzero coefficient decides.
Sign ring_sign(const ScalarSeries<GaussRational> &a);
// Floating variant; coefficients with |im| > imag_tol are rejected.
Sign ring_sign(const ScalarSeries<Complex> &a, double imag_tol = 0.0);

} // namespace starkms
