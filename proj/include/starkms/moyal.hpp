#pragma once

// Moyal-Weyl star product, order by order:
//
//   f * g = Σ_r λ^r M_r(f, g),   M_r(f, g) = (1/r!)(i/2)^r Π^r(f, g),
//
// where Π(f, g) = Σ_i (∂_{q_i} f ∂_{p_i} g − ∂_{p_i} f ∂_{q_i} g) and Π^r is its
// r-th power as a bidifferential operator. The expansion of Π^r into
// (left multi-index, right multi-index, coefficient) triples is computed once
// per StarContext. On T² the same constant-coefficient formula is used with
// (θ₁, θ₂) in the roles of (q, p).

#include <cstddef>
#include <map>
#include <vector>

#include "starkms/errors.hpp"
#include "starkms/poly.hpp"
#include "starkms/series.hpp"

namespace starkms
{

enum class PhaseSpace
{
    euclidean, // R^{2n}
    torus      // T²
};

struct BidiffTerm
{
    Exponent left;
    Exponent right;
    GaussRational coeff;
};

class StarContext
{
public:
    StarContext(PhaseSpace space, std::size_t n, std::size_t truncation);

    static StarContext euclidean(std::size_t n, std::size_t truncation) { return {PhaseSpace::euclidean, n, truncation}; }
    static StarContext torus(std::size_t truncation) { return {PhaseSpace::torus, 1, truncation}; }

    [[nodiscard]] PhaseSpace phase_space() const { return space_; }
    [[nodiscard]] std::size_t dof() const { return n_; }
    [[nodiscard]] std::size_t truncation() const { return K_; }
    [[nodiscard]] const std::vector<BidiffTerm> &bidiff_terms(std::size_t r) const;

    template <class F>
    void check_compatible(const F &f) const
    {
        if (f.dof() != n_) {
            throw context_mismatch("function and star context have different phase-space dimension");
        }
    }

private:
    PhaseSpace space_;
    std::size_t n_;
    std::size_t K_;
    std::vector<std::vector<BidiffTerm>> table_;
};

// Memoized partial derivatives ∂^m f.
template <class F>
class DerivativeCache
{
public:
    explicit DerivativeCache(const F &f) : zero_(f.zero_like()) { cache_.emplace(Exponent(2 * f.dof(), 0), f); }

    const F &get(const Exponent &m)
    {
        if (auto it = cache_.find(m); it != cache_.end()) {
            return it->second;
        }
        for (std::size_t a = 0; a < m.size(); ++a) {
            if (m[a] > 0) {
                Exponent lower = m;
                lower[a] -= 1;
                const F &base = get(lower);
                F d = is_zero(base) ? zero_ : base.derivative(a);
                return cache_.emplace(m, std::move(d)).first->second;
            }
        }
        return cache_.begin()->second;
    }

private:
    F zero_;
    std::map<Exponent, F> cache_;
};

// Σ over the Π^r expansion of coeff · L(left) · R(right), with caller-supplied
// left/right derivative providers.
template <class F, class LeftDerivative, class RightDerivative>
F contract_bidiff(const StarContext &ctx, std::size_t r, LeftDerivative &&left, RightDerivative &&right, const F &zero)
{
    F out = zero;
    for (const auto &term : ctx.bidiff_terms(r)) {
        const F &a = left(term.left);
        if (is_zero(a)) {
            continue;
        }
        const F &b = right(term.right);
        if (is_zero(b)) {
            continue;
        }
        out = out + (a * b) * from_gaussian<typename F::Scalar>(term.coeff);
    }
    return out;
}

// M_r(f, g).
template <class F>
F moyal_bidiff(const StarContext &ctx, std::size_t r, const F &f, const F &g)
{
    ctx.check_compatible(f);
    f.check_compatible(g);
    DerivativeCache<F> df(f), dg(g);
    return contract_bidiff(
        ctx, r, [&](const Exponent &m) -> const F & { return df.get(m); },
        [&](const Exponent &m) -> const F & { return dg.get(m); }, f.zero_like());
}

// (f*g)_k = Σ_{r+s+t=k} M_r(f_s, g_t), truncated at min(K_f, K_g, K_ctx).
template <class F>
FormalSeries<F> star_product(const StarContext &ctx, const FormalSeries<F> &f, const FormalSeries<F> &g)
{
    const std::size_t K = std::min({f.truncation(), g.truncation(), ctx.truncation()});
    ctx.check_compatible(f[0]);
    f[0].check_compatible(g[0]);
    std::vector<DerivativeCache<F>> df, dg;
    df.reserve(K + 1);
    dg.reserve(K + 1);
    for (std::size_t s = 0; s <= K; ++s) {
        df.emplace_back(f[s]);
        dg.emplace_back(g[s]);
    }
    const F zero = f[0].zero_like();
    std::vector<F> out(K + 1, zero);
    for (std::size_t s = 0; s <= K; ++s) {
        if (is_zero(f[s])) {
            continue;
        }
        for (std::size_t t = 0; s + t <= K; ++t) {
            if (is_zero(g[t])) {
                continue;
            }
            for (std::size_t r = 0; r + s + t <= K; ++r) {
                out[r + s + t] = out[r + s + t] + contract_bidiff(
                                                      ctx, r, [&](const Exponent &m) -> const F & { return df[s].get(m); },
                                                      [&](const Exponent &m) -> const F & { return dg[t].get(m); }, zero);
            }
        }
    }
    return FormalSeries<F>(std::move(out));
}

template <class F>
FormalSeries<F> star_product(const StarContext &ctx, const F &f, const F &g)
{
    const std::size_t K = ctx.truncation();
    return star_product(ctx, FormalSeries<F>::constant(f, K), FormalSeries<F>::constant(g, K));
}

template <class F>
FormalSeries<F> star_commutator(const StarContext &ctx, const FormalSeries<F> &f, const FormalSeries<F> &g)
{
    return star_product(ctx, f, g) - star_product(ctx, g, f);
}

// ad(H)f = H*f − f*H.
template <class F>
FormalSeries<F> ad(const StarContext &ctx, const F &H, const FormalSeries<F> &f)
{
    return star_commutator(ctx, FormalSeries<F>::constant(H, f.truncation()), f);
}

// conj(f*g) − conj(g)*conj(f); zero for a Hermitian star product.
template <class F>
FormalSeries<F> check_hermitian(const StarContext &ctx, const FormalSeries<F> &f, const FormalSeries<F> &g)
{
    return conjugate_series(star_product(ctx, f, g)) -
           star_product(ctx, conjugate_series(g), conjugate_series(f));
}

// (f*g)*h − f*(g*h).
template <class F>
FormalSeries<F> check_associativity(const StarContext &ctx, const FormalSeries<F> &f, const FormalSeries<F> &g,
                                    const FormalSeries<F> &h)
{
    return star_product(ctx, star_product(ctx, f, g), h) - star_product(ctx, f, star_product(ctx, g, h));
}

} // namespace starkms
