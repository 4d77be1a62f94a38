#pragma once

// Trace, KMS functionals and their checks on the exact exp-polynomial backend,
// plus the classical (order-zero) conditions on both R^{2n} and T².
//
// KMS twist: with δ_X = ad(H) and μ = tr(Exp(−βH) * ·), the static condition
// holds in the form
//
//   μ(f*g) = μ(g * A_{iλβ} f),   A_{iλβ} = e^{−βδ_X},
//
// which reduces at order zero to μ₀({f,g} − β g L_X f) = 0.

#include <functional>
#include <string>
#include <vector>

#include "starkms/dynamics.hpp"
#include "starkms/integral.hpp"

namespace starkms
{

using Observable = FormalSeries<ExpPolyFunction>;
using FunctionalValue = PiSeries<GaussRational>;

// μ = Σ λ^r μ_r, given as an evaluation rule on observable series.
class FormalFunctional
{
public:
    using Rule = std::function<FunctionalValue(const Observable &)>;

    FormalFunctional(std::string name, Rule rule) : name_(std::move(name)), rule_(std::move(rule)) {}

    [[nodiscard]] const std::string &name() const { return name_; }
    FunctionalValue operator()(const Observable &f) const { return rule_(f); }

    // (c·μ)(f) = c·μ(f) for a scalar series c.
    [[nodiscard]] FormalFunctional scaled(const ScalarSeries<GaussRational> &c) const;

private:
    std::string name_;
    Rule rule_;
};

// tr(f) = Σ λ^r ∫ f_r Ω.
FormalFunctional trace_functional(const StarContext &ctx);

// μ(f) = tr(Exp(−βH) * f). H polynomial; integrability is checked on use.
FormalFunctional kms_construct(const StarContext &ctx, const PolyFunction &H, const Rational &beta);

// μ rescaled by the inverse series of μ(reference) so that μ(reference) = 1.
FormalFunctional normalized(const FormalFunctional &mu, const Observable &reference);

// μ(f*g) − μ(g * A_{iλβ} f).
FunctionalValue static_kms_residual(const StarContext &ctx, const FormalFunctional &mu,
                                    const VectorField<ExpPolyFunction> &X, const Rational &beta, const Observable &f,
                                    const Observable &g);

// μ(A_t f * g) − μ(g * A_{t+iλβ} f), on the exact quadratic flow.
FunctionalValue dynamic_kms_residual(const StarContext &ctx, const FormalFunctional &mu,
                                     const VectorField<ExpPolyFunction> &X, double t, const Rational &beta,
                                     const Observable &f, const Observable &g);

// μ(f*g − g*f).
FunctionalValue trace_residual(const StarContext &ctx, const FormalFunctional &mu, const Observable &f,
                               const Observable &g);

// μ₀({f,g} − β g L_X f) with μ₀ = ∫ ρ · Ω.
PiScaled<GaussRational> classical_kms_residual(const ExpPolyFunction &density, const VectorField<ExpPolyFunction> &X,
                                               const Rational &beta, const ExpPolyFunction &f,
                                               const ExpPolyFunction &g);
Complex classical_kms_residual(const FourierFunction &density, const VectorField<FourierFunction> &X, double beta,
                               const FourierFunction &f, const FourierFunction &g);

// Classical dynamical condition at time t: the static residual of φ_t^* f against g.
PiScaled<GaussRational> classical_dynamic_kms_residual(const ExpPolyFunction &density,
                                                       const VectorField<ExpPolyFunction> &X, double t,
                                                       const Rational &beta, const ExpPolyFunction &f,
                                                       const ExpPolyFunction &g);

// μ̃(f) = μ(Exp(βH) * f).
FormalFunctional tilde_transform(const StarContext &ctx, const FormalFunctional &mu, const PolyFunction &H,
                                 const Rational &beta);
// ρ̃ = e^{βH} ρ.
ExpPolyFunction tilde_transform_classical(const ExpPolyFunction &density, const PolyFunction &H,
                                          const Rational &beta);

// tr(f) = tr′(f) + conj(tr′(conj f)).
FormalFunctional realify(const FormalFunctional &tr_prime);

struct PositivityProbe
{
    FunctionalValue value;        // tr(f̄ * f)
    Sign sign = Sign::zero;       // after the global normalization
    FunctionalValue reality;      // tr(f̄) − conj(tr(f))
};

struct PositivityReport
{
    std::vector<PositivityProbe> probes;
    bool flipped = false;         // global sign flip applied
    bool all_positive = false;    // every nonzero probe positive
    bool real = false;            // all reality residuals vanish
    bool gelfand_trivial = false; // no nonzero probe with tr(f̄*f) = 0
};

PositivityReport realify_and_positivity(const StarContext &ctx, const FormalFunctional &tr_prime,
                                        const std::vector<Observable> &probes);

} // namespace starkms
