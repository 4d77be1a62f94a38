#pragma once

// Derivations, automorphism groups and the star exponential.
//
//   δ_X          global star-commutator derivation of a symplectic X
//                (= ad(H) when i_Xω = dH), lowest λ-order >= 1
//   e^{βδ_X}     Σ_r (βδ_X)^r / r!, finite at truncation K
//   Exp(βH)      solution of d/dβ f = H*f, f(0) = 1, as e^{βH}(1 + Σ λ^r g_r(β))
//   A_t          solution of d/dt f = (i/λ) δ_X f
//   A_{t+iλβ}    A_t ∘ e^{−βδ_X}, the formal substitution t → t + iλβ in A_t

#include <cstddef>
#include <map>
#include <vector>

#include "starkms/errors.hpp"
#include "starkms/exppoly.hpp"
#include "starkms/fourier.hpp"
#include "starkms/moyal.hpp"
#include "starkms/vector_field.hpp"

namespace starkms
{

// δ_X f. Hamiltonian fields use ad(H); closed one-forms evaluate
// Σ_r λ^r (M_r(H,·) − M_r(·,H)) = 2 Σ_{r odd} λ^r M_r(H,·) with every
// derivative of the local Hamiltonian read off from α.
template <class F>
FormalSeries<F> delta_X(const StarContext &ctx, const VectorField<F> &X, const FormalSeries<F> &f)
{
    X.require_closed();
    if (X.is_hamiltonian()) {
        return ad(ctx, X.hamiltonian(), f);
    }
    const std::size_t K = std::min(ctx.truncation(), f.truncation());
    const F zero = f[0].zero_like();
    std::map<Exponent, F> h_derivs;
    auto left = [&](const Exponent &m) -> const F & {
        auto it = h_derivs.find(m);
        if (it == h_derivs.end()) {
            it = h_derivs.emplace(m, X.hamiltonian_derivative(m)).first;
        }
        return it->second;
    };
    std::vector<F> out(K + 1, zero);
    for (std::size_t s = 0; s < K; ++s) {
        if (is_zero(f[s])) {
            continue;
        }
        DerivativeCache<F> df(f[s]);
        for (std::size_t r = 1; r + s <= K; r += 2) {
            const F m = contract_bidiff(ctx, r, left, [&](const Exponent &e) -> const F & { return df.get(e); }, zero);
            out[r + s] = out[r + s] + m * from_gaussian<typename F::Scalar>(GaussRational(2));
        }
    }
    return FormalSeries<F>(std::move(out));
}

// e^{βδ_X} f; only (βδ_X)^r with r <= K survive truncation.
template <class F>
FormalSeries<F> exp_delta_X(const StarContext &ctx, const VectorField<F> &X, const typename F::Scalar &beta,
                            const FormalSeries<F> &f)
{
    FormalSeries<F> term = f;
    FormalSeries<F> out = f;
    using S = typename F::Scalar;
    const std::size_t K = std::min(ctx.truncation(), f.truncation());
    for (std::size_t r = 1; r <= K; ++r) {
        term = scale(delta_X(ctx, X, term), beta * from_gaussian<S>(GaussRational(make_rational(1, static_cast<long>(r)))));
        if (term.is_zero_series()) {
            break;
        }
        out = out + term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Star exponential (polynomial H on R^{2n}).

class StarExponential
{
public:
    // g[k][m] is the coefficient of β^m in g_k(β); g[0] = {1}.
    StarExponential(PolyFunction H, Rational beta, std::vector<std::vector<PolyFunction>> g);

    [[nodiscard]] const PolyFunction &hamiltonian() const { return H_; }
    [[nodiscard]] const Rational &beta() const { return beta_; }
    [[nodiscard]] std::size_t truncation() const { return g_.size() - 1; }
    // g_k as a polynomial in β (coefficient list by power of β).
    [[nodiscard]] const std::vector<PolyFunction> &correction_polynomial(std::size_t k) const { return g_.at(k); }
    // g_k evaluated at the stored β.
    [[nodiscard]] PolyFunction correction(std::size_t k) const;
    // e^{βH}(1 + Σ λ^k g_k(β)).
    [[nodiscard]] FormalSeries<ExpPolyFunction> series() const;

private:
    PolyFunction H_;
    Rational beta_;
    std::vector<std::vector<PolyFunction>> g_;
};

// Solves g_k(β) = ∫_0^β e^{−sH} Σ_{r=1}^{k} M_r(H, e^{sH} g_{k−r}(s)) ds order by
// order. The e^{sH} factors are carried analytically: derivatives of e^{sH}G
// are e^{sH}·(∂ + s·∂H)G, so every integrand is a polynomial in (s, x).
StarExponential star_exp(const StarContext &ctx, const PolyFunction &H, const Rational &beta);
StarExponential star_exp(const StarContext &ctx, const ExpPolyFunction &H, const Rational &beta);

struct ExpLawResiduals
{
    FormalSeries<ExpPolyFunction> group_law; // Exp(βH)*Exp(β'H) − Exp((β+β')H)
    FormalSeries<ExpPolyFunction> commutes;  // Exp(βH)*H − H*Exp(βH)
};

ExpLawResiduals check_exp_laws(const StarContext &ctx, const PolyFunction &H, const Rational &beta,
                               const Rational &beta_prime);

// e^{βδ_X}(f) − Exp(βH)*f*Exp(−βH) for Hamiltonian X with polynomial H.
FormalSeries<ExpPolyFunction> check_inner(const StarContext &ctx, const VectorField<ExpPolyFunction> &X,
                                          const Rational &beta, const FormalSeries<ExpPolyFunction> &f);

// ---------------------------------------------------------------------------
// Exact affine-symplectic flow of a polynomial Hamiltonian of degree <= 2.

class QuadraticFlow
{
public:
    // Supported: A = J·Hess(H) with A² = κ·I. Throws unsupported_error otherwise.
    QuadraticFlow(const PolyFunction &H, double t);

    [[nodiscard]] double requested_time() const { return t_; }
    // Time actually realised by the exact rational map (differs from t by the
    // rational approximation of tan/tanh, below 1e−15 for |t| < 10).
    [[nodiscard]] double effective_time() const { return t_eff_; }
    // φ_t(x) = S x + d.
    [[nodiscard]] const std::vector<std::vector<Rational>> &linear_part() const { return S_; }
    [[nodiscard]] const std::vector<Rational> &offset() const { return d_; }

    [[nodiscard]] PolyFunction pullback(const PolyFunction &f) const { return f.substitute(images_); }
    [[nodiscard]] ExpPolyFunction pullback(const ExpPolyFunction &f) const { return f.substitute(images_); }

private:
    double t_;
    double t_eff_;
    std::vector<std::vector<Rational>> S_;
    std::vector<Rational> d_;
    std::vector<PolyFunction> images_;
};

// H with dH = α for a closed polynomial one-form on R^{2n} (radial line integral, H(0) = 0).
PolyFunction primitive_of_closed_form(const std::vector<PolyFunction> &alpha);

// A_t on the exact path: degree <= 2 Hamiltonians (or closed polynomial forms
// with such a primitive). T_t is the identity there because ad(H) = iλ{H,·}.
FormalSeries<ExpPolyFunction> evolve_At(const StarContext &ctx, const VectorField<ExpPolyFunction> &X, double t,
                                        const FormalSeries<ExpPolyFunction> &f);

// A_{t+iλβ} f = A_t(e^{−βδ_X} f).
FormalSeries<ExpPolyFunction> complexify_At(const StarContext &ctx, const VectorField<ExpPolyFunction> &X, double t,
                                            const Rational &beta, const FormalSeries<ExpPolyFunction> &f);

// ---------------------------------------------------------------------------
// Torus evolution.

struct TorusEvolution
{
    FormalSeries<FourierFunction> value;
    double step = 0.0;     // RK4 step actually used (0 for the exact translation)
    std::size_t steps = 0; // number of RK4 steps
    double residual = 0.0; // step-doubling defect ‖f_h − f_{h/2}‖∞
    double leakage = 0.0;  // accumulated out-of-band norm
    bool exact = false;    // true when X has constant α (pure translation)
};

struct TorusEvolutionOptions
{
    double relative_step_error = 1e-10;
    double residual_threshold = 1e-8;
    double initial_step = 0.05;
    std::size_t max_steps = 1u << 16;
};

// Exact translation when α is constant, otherwise RK4 on the coupled
// per-order system d/dt f_k = Σ_{r odd} 2i M_r(H, f_{k+1−r}).
TorusEvolution evolve_At(const StarContext &ctx, const VectorField<FourierFunction> &X, double t,
                         const FormalSeries<FourierFunction> &f, const TorusEvolutionOptions &opts = {});

// Always integrates numerically (used to cross-check the translation path).
TorusEvolution evolve_At_numeric(const StarContext &ctx, const VectorField<FourierFunction> &X, double t,
                                 const FormalSeries<FourierFunction> &f, const TorusEvolutionOptions &opts = {});

TorusEvolution complexify_At(const StarContext &ctx, const VectorField<FourierFunction> &X, double t, double beta,
                             const FormalSeries<FourierFunction> &f, const TorusEvolutionOptions &opts = {});

} // namespace starkms
