#include "starkms/states.hpp"

namespace starkms
{

namespace
{

FunctionalValue subtract(const FunctionalValue &a, const FunctionalValue &b)
{
    if (a.pi_power != b.pi_power) {
        throw std::logic_error("functional values with different powers of π");
    }
    return {a.series - b.series, a.pi_power};
}

// 1/c for a scalar series with c₀ ≠ 0.
ScalarSeries<GaussRational> inverse(const ScalarSeries<GaussRational> &c)
{
    if (is_zero(c[0])) {
        throw domain_error("cannot normalise by a functional value with vanishing λ⁰ term");
    }
    const std::size_t K = c.truncation();
    std::vector<GaussRational> inv(K + 1);
    inv[0] = GaussRational(1) / c[0];
    for (std::size_t r = 1; r <= K; ++r) {
        GaussRational acc;
        for (std::size_t s = 1; s <= r; ++s) {
            acc += c[s] * inv[r - s];
        }
        inv[r] = -acc * inv[0];
    }
    return ScalarSeries<GaussRational>(std::move(inv));
}

} // namespace

FormalFunctional FormalFunctional::scaled(const ScalarSeries<GaussRational> &c) const
{
    Rule rule = rule_;
    return {name_ + " (rescaled)", [rule, c](const Observable &f) {
                FunctionalValue v = rule(f);
                v.series = v.series * c.truncated(std::min(c.truncation(), v.series.truncation()));
                return v;
            }};
}

FormalFunctional trace_functional(const StarContext &ctx)
{
    const int n = static_cast<int>(ctx.dof());
    return {"tr", [n](const Observable &f) {
                std::vector<GaussRational> v;
                for (const auto &c : f.coefficients()) {
                    const PiScaled<GaussRational> i = c.integrate();
                    if (!i.value.is_zero() && i.pi_power != n) {
                        throw std::logic_error("unexpected power of π in a volume integral");
                    }
                    v.push_back(i.value);
                }
                return FunctionalValue{ScalarSeries<GaussRational>(std::move(v)), n};
            }};
}

FormalFunctional kms_construct(const StarContext &ctx, const PolyFunction &H, const Rational &beta)
{
    const Observable boltzmann = star_exp(ctx, H, -beta).series();
    const FormalFunctional tr = trace_functional(ctx);
    return {"tr(Exp(-beta H) * .)", [ctx, boltzmann, tr](const Observable &f) {
                return tr(star_product(ctx, boltzmann, f));
            }};
}

FormalFunctional normalized(const FormalFunctional &mu, const Observable &reference)
{
    const FunctionalValue ref = mu(reference);
    const ScalarSeries<GaussRational> inv = inverse(ref.series);
    const int shift = ref.pi_power;
    return {mu.name() + " normalized", [mu, inv, shift](const Observable &f) {
                FunctionalValue v = mu(f);
                const std::size_t K = std::min(v.series.truncation(), inv.truncation());
                v.series = v.series.truncated(K) * inv.truncated(K);
                v.pi_power -= shift;
                return v;
            }};
}

FunctionalValue static_kms_residual(const StarContext &ctx, const FormalFunctional &mu,
                                    const VectorField<ExpPolyFunction> &X, const Rational &beta, const Observable &f,
                                    const Observable &g)
{
    const Observable twisted = exp_delta_X(ctx, X, GaussRational(-beta), f);
    return subtract(mu(star_product(ctx, f, g)), mu(star_product(ctx, g, twisted)));
}

FunctionalValue dynamic_kms_residual(const StarContext &ctx, const FormalFunctional &mu,
                                     const VectorField<ExpPolyFunction> &X, double t, const Rational &beta,
                                     const Observable &f, const Observable &g)
{
    const Observable ft = evolve_At(ctx, X, t, f);
    const Observable fc = complexify_At(ctx, X, t, beta, f);
    return subtract(mu(star_product(ctx, ft, g)), mu(star_product(ctx, g, fc)));
}

FunctionalValue trace_residual(const StarContext &ctx, const FormalFunctional &mu, const Observable &f,
                               const Observable &g)
{
    return mu(star_commutator(ctx, f, g));
}

PiScaled<GaussRational> classical_kms_residual(const ExpPolyFunction &density, const VectorField<ExpPolyFunction> &X,
                                               const Rational &beta, const ExpPolyFunction &f,
                                               const ExpPolyFunction &g)
{
    const ExpPolyFunction integrand =
        density * (poisson_bracket(f, g) - g * X.lie_derivative(f) * GaussRational(beta));
    return integrand.integrate();
}

Complex classical_kms_residual(const FourierFunction &density, const VectorField<FourierFunction> &X, double beta,
                               const FourierFunction &f, const FourierFunction &g)
{
    const FourierFunction integrand = density * (poisson_bracket(f, g) - g * X.lie_derivative(f) * Complex(beta));
    return integrand.integrate().to_complex();
}

PiScaled<GaussRational> classical_dynamic_kms_residual(const ExpPolyFunction &density,
                                                       const VectorField<ExpPolyFunction> &X, double t,
                                                       const Rational &beta, const ExpPolyFunction &f,
                                                       const ExpPolyFunction &g)
{
    const StarContext ctx = StarContext::euclidean(f.dof(), 0);
    const ExpPolyFunction ft = evolve_At(ctx, X, t, Observable::constant(f, 0))[0];
    return classical_kms_residual(density, X, beta, ft, g);
}

FormalFunctional tilde_transform(const StarContext &ctx, const FormalFunctional &mu, const PolyFunction &H,
                                 const Rational &beta)
{
    const Observable boltzmann = star_exp(ctx, H, beta).series();
    return {mu.name() + " tilde", [ctx, mu, boltzmann](const Observable &f) {
                return mu(star_product(ctx, boltzmann, f));
            }};
}

ExpPolyFunction tilde_transform_classical(const ExpPolyFunction &density, const PolyFunction &H, const Rational &beta)
{
    return density * ExpPolyFunction::term(PolyFunction::constant(H.dof(), GaussRational(1)), H * GaussRational(beta));
}

FormalFunctional realify(const FormalFunctional &tr_prime)
{
    return {"real part of " + tr_prime.name(), [tr_prime](const Observable &f) {
                FunctionalValue a = tr_prime(f);
                const FunctionalValue b = tr_prime(conjugate_series(f));
                a.series = a.series + conjugate_series(b.series);
                return a;
            }};
}

PositivityReport realify_and_positivity(const StarContext &ctx, const FormalFunctional &tr_prime,
                                        const std::vector<Observable> &probes)
{
    const FormalFunctional tr = realify(tr_prime);
    PositivityReport report;
    report.real = true;
    report.gelfand_trivial = true;
    std::vector<Sign> raw;
    for (const auto &f : probes) {
        PositivityProbe p;
        p.value = tr(star_product(ctx, conjugate_series(f), f));
        const FunctionalValue a = tr(conjugate_series(f));
        FunctionalValue b = tr(f);
        b.series = conjugate_series(b.series);
        p.reality = subtract(a, b);
        report.real = report.real && p.reality.series.is_zero_series();
        p.sign = ring_sign(p.value.series);
        raw.push_back(p.sign);
        report.probes.push_back(std::move(p));
    }
    // Global normalization: flip if the first nonzero probe is negative.
    for (Sign s : raw) {
        if (s != Sign::zero) {
            report.flipped = s == Sign::negative;
            break;
        }
    }
    report.all_positive = true;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        auto &p = report.probes[i];
        if (report.flipped) {
            p.sign = p.sign == Sign::positive ? Sign::negative : p.sign == Sign::negative ? Sign::positive : Sign::zero;
        }
        const bool nonzero_probe = !probes[i].is_zero_series();
        if (nonzero_probe && p.sign != Sign::positive) {
            report.all_positive = false;
        }
        if (nonzero_probe && p.sign == Sign::zero) {
            report.gelfand_trivial = false;
        }
    }
    return report;
}

} // namespace starkms
