#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "starkms/probes.hpp"
#include "starkms/states.hpp"

using namespace starkms;
using GR = GaussRational;

namespace
{

PolyFunction q() { return PolyFunction::q(1, 0); }
PolyFunction p() { return PolyFunction::p(1, 0); }
PolyFunction c(long num, long den = 1) { return PolyFunction::constant(1, GR(make_rational(num, den))); }
PolyFunction H0() { return PolyFunction::reference_quadratic(1); }

Observable obs(const ExpPolyFunction &f, std::size_t K) { return Observable::constant(f, K); }

ExpPolyFunction weighted(const PolyFunction &P, long num, long den)
{
    return ExpPolyFunction::term(P, H0() * GR(make_rational(num, den)));
}

bool is_zero_value(const FunctionalValue &v) { return v.series.is_zero_series(); }

ScalarSeries<GR> scalars(std::vector<GR> v) { return ScalarSeries<GR>(std::move(v)); }

} // namespace

TEST_CASE("trace_functional: Gaussian normalisation and linearity")
{
    const auto ctx = StarContext::euclidean(1, 4);
    const auto tr = trace_functional(ctx);
    const FunctionalValue v = tr(obs(ExpPolyFunction::gaussian(1, Rational(-1)), 4));
    CHECK(v.pi_power == 1);
    CHECK(v.series == scalars({GR(2), GR(0), GR(0), GR(0), GR(0)}));
    // quadrature cross-check of the exact value
    const Complex quad = oracle::integrate_plane([](double x, double y) { return std::exp(-(x * x + y * y) / 2); });
    CHECK(std::abs(v.to_complex()[0] - quad) < 1e-10);

    SplitMix64 rng(41);
    const ExpPolyFunction f = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
    const ExpPolyFunction g = random_gaussian_probe(rng, 1, 3, Rational(-1));
    const auto cs = scalars({GR(1), GR(Rational(0), Rational(2)), GR(0), GR(make_rational(-1, 3)), GR(0)});
    const FunctionalValue lhs = tr(scale(cs, obs(f, 4)) + obs(g, 4));
    const FunctionalValue rhs = tr(obs(f, 4));
    CHECK(lhs.series == cs * rhs.series + tr(obs(g, 4)).series);
    CHECK(tr(Observable::monomial(f, 2, 4)).series == scalars({GR(0), GR(0), rhs.series[0], GR(0), GR(0)}));
    CHECK_THROWS_AS((void)tr(obs(ExpPolyFunction(q()), 4)), domain_error);
}

TEST_CASE("trace_functional: trace property")
{
    const auto ctx = StarContext::euclidean(1, 4);
    const auto tr = trace_functional(ctx);
    SplitMix64 rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        const Observable f = obs(random_gaussian_probe(rng, 1, 3, make_rational(-1, 2)), 4);
        const Observable g = obs(random_gaussian_probe(rng, 1, 3, make_rational(-1, 4)), 4);
        CHECK(is_zero_value(trace_residual(ctx, tr, f, g)));
    }
    const auto ctx2 = StarContext::euclidean(2, 2);
    const auto tr2 = trace_functional(ctx2);
    for (int trial = 0; trial < 3; ++trial) {
        const Observable f = Observable::constant(random_gaussian_probe(rng, 2, 2, make_rational(-1, 2)), 2);
        const Observable g = Observable::constant(random_gaussian_probe(rng, 2, 2, make_rational(-1, 2)), 2);
        CHECK(is_zero_value(trace_residual(ctx2, tr2, f, g)));
    }
}

TEST_CASE("kms_construct: values")
{
    const auto ctx = StarContext::euclidean(1, 4);
    CHECK(kms_construct(ctx, H0(), Rational(0))(obs(ExpPolyFunction::gaussian(1, Rational(-1)), 4)).series ==
          trace_functional(ctx)(obs(ExpPolyFunction::gaussian(1, Rational(-1)), 4)).series);

    const auto mu = kms_construct(ctx, H0(), Rational(1));
    const FunctionalValue one = mu(obs(ExpPolyFunction(c(1)), 4));
    // ∫ e^{−H₀} = 2π, λ² term ∫ e^{−H₀}(−1/8 + H₀/12) = −π/12
    CHECK(one.pi_power == 1);
    CHECK(one.series[0] == GR(2));
    CHECK(one.series[1] == GR(0));
    CHECK(one.series[2] == GR(make_rational(-1, 12)));
    const Complex quad = oracle::integrate_plane([](double x, double y) {
        const double h = (x * x + y * y) / 2;
        return std::exp(-h) * (-1.0 / 8 + h / 12);
    });
    CHECK(std::abs(one.to_complex()[2] - quad) < 1e-10);

    SplitMix64 rng(43);
    for (int trial = 0; trial < 3; ++trial) {
        const ExpPolyFunction f = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
        for (const Rational beta : {make_rational(1, 2), Rational(1)}) {
            const FunctionalValue v = kms_construct(ctx, H0(), beta)(obs(f, 4));
            const auto direct = (ExpPolyFunction::gaussian(1, -beta) * f).integrate();
            CHECK(v.series[0] == direct.value);
        }
    }
}

TEST_CASE("normalized functional")
{
    const auto ctx = StarContext::euclidean(1, 4);
    const Observable ref = obs(ExpPolyFunction::gaussian(1, Rational(-1)), 4);
    const auto mu = normalized(kms_construct(ctx, H0(), make_rational(1, 2)), ref);
    const FunctionalValue v = mu(ref);
    CHECK(v.pi_power == 0);
    CHECK(v.series == scalars({GR(1), GR(0), GR(0), GR(0), GR(0)}));
}

TEST_CASE("static KMS: constructed state has zero residual")
{
    const auto ctx = StarContext::euclidean(1, 4);
    const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H0()));
    SplitMix64 rng(44);
    for (const Rational beta : {make_rational(1, 2), Rational(1)}) {
        const auto mu = kms_construct(ctx, H0(), beta);
        for (int trial = 0; trial < 4; ++trial) {
            const Observable f = obs(random_gaussian_probe(rng, 1, 2, make_rational(-1, 2)), 4);
            const Observable g = obs(random_gaussian_probe(rng, 1, 2, make_rational(-1, 2)), 4);
            CHECK(is_zero_value(static_kms_residual(ctx, mu, X, beta, f, g)));
        }
    }
}

TEST_CASE("static KMS: β = 0 reduces to the trace condition, negative control at β = 1")
{
    const auto ctx = StarContext::euclidean(1, 4);
    const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H0()));
    const auto tr = trace_functional(ctx);
    SplitMix64 rng(45);
    const Observable f = obs(random_gaussian_probe(rng, 1, 2, make_rational(-1, 2)), 4);
    const Observable g = obs(random_gaussian_probe(rng, 1, 2, make_rational(-1, 2)), 4);
    CHECK(static_kms_residual(ctx, tr, X, Rational(0), f, g).series == trace_residual(ctx, tr, f, g).series);

    // f = q e^{−H₀/2}, g = p e^{−H₀/2}: λ¹ residual = β ∫ g·i{H₀,f} = −iβ∫p²e^{−H₀} = −2πiβ
    const Observable fq = obs(weighted(q(), -1, 2), 4);
    const Observable gp = obs(weighted(p(), -1, 2), 4);
    const FunctionalValue r = static_kms_residual(ctx, tr, X, Rational(1), fq, gp);
    CHECK(!is_zero_value(r));
    CHECK(r.series[0] == GR(0));
    CHECK(r.series[1] == GR(Rational(0), Rational(-2)));
    const Complex quad = oracle::integrate_plane(
        [](double x, double y) { return Complex(0, -1) * y * y * std::exp(-(x * x + y * y) / 2); });
    CHECK(std::abs(r.to_complex()[1] - quad) < 1e-10);
}

TEST_CASE("dynamic KMS")
{
    const auto ctx = StarContext::euclidean(1, 4);
    const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H0()));
    SplitMix64 rng(46);
    const Rational beta(1);
    const auto mu = kms_construct(ctx, H0(), beta);
    for (int trial = 0; trial < 3; ++trial) {
        const Observable f = obs(random_gaussian_probe(rng, 1, 2, make_rational(-1, 2)), 4);
        const Observable g = obs(random_gaussian_probe(rng, 1, 2, make_rational(-1, 2)), 4);
        CHECK(dynamic_kms_residual(ctx, mu, X, 0.0, beta, f, g).series ==
              static_kms_residual(ctx, mu, X, beta, f, g).series);
        CHECK(is_zero_value(dynamic_kms_residual(ctx, mu, X, 1.0, beta, f, g)));
    }
    const auto tr = trace_functional(ctx);
    CHECK(!is_zero_value(
        dynamic_kms_residual(ctx, tr, X, 1.0, beta, obs(weighted(q(), -1, 2), 4), obs(weighted(p(), -1, 2), 4))));
}

TEST_CASE("classical KMS on R²")
{
    const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H0()));
    SplitMix64 rng(47);
    for (const Rational beta : {Rational(0), make_rational(1, 2), Rational(1)}) {
        const ExpPolyFunction rho = ExpPolyFunction::gaussian(1, -beta);
        for (int trial = 0; trial < 5; ++trial) {
            const ExpPolyFunction f = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
            const ExpPolyFunction g = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
            CHECK(classical_kms_residual(rho, X, beta, f, g).value.is_zero());
            CHECK(classical_dynamic_kms_residual(rho, X, 0.6, beta, f, g).value.is_zero());
        }
    }
    // wrong density is detected
    const ExpPolyFunction f = weighted(q(), -1, 2), g = weighted(p(), -1, 2);
    CHECK(!classical_kms_residual(ExpPolyFunction(c(1)), X, Rational(1), f, g).value.is_zero());
}

TEST_CASE("classical KMS on T²: uniform density against X = ∂_θ₁")
{
    const int N = 4;
    const auto X = VectorField<FourierFunction>::from_one_form({FourierFunction(N), FourierFunction::constant(N, 1.0)});
    const FourierFunction uniform = FourierFunction::constant(N, 1.0);
    const Complex r = classical_kms_residual(uniform, X, 1.0, FourierFunction::mode(N, 1, 0),
                                             FourierFunction::mode(N, -1, 0));
    // {f,g} = 0, g L_X f = i, ∫ = 4π², residual −4π² i
    CHECK(std::abs(r - Complex(0, -4 * std::numbers::pi * std::numbers::pi)) < 1e-12);
    CHECK(std::abs(classical_kms_residual(uniform, X, 0.0, FourierFunction::mode(N, 1, 2),
                                          FourierFunction::mode(N, -1, -2))) < 1e-12);
}

TEST_CASE("tilde transform: KMS state ⟺ trace")
{
    const auto ctx = StarContext::euclidean(1, 4);
    SplitMix64 rng(48);
    const Rational beta = make_rational(1, 2);
    const auto tr = trace_functional(ctx);
    const auto mu_tilde = tilde_transform(ctx, kms_construct(ctx, H0(), beta), H0(), beta);
    for (int trial = 0; trial < 3; ++trial) {
        const Observable f = obs(random_gaussian_probe(rng, 1, 2, Rational(-1)), 4);
        const Observable g = obs(random_gaussian_probe(rng, 1, 2, Rational(-1)), 4);
        CHECK(mu_tilde(f).series == tr(f).series);
        CHECK(is_zero_value(trace_residual(ctx, mu_tilde, f, g)));
    }
    // reverse direction: a trace μ is not KMS and its transform is not a trace
    const auto tr_tilde = tilde_transform(ctx, tr, H0(), beta);
    const Observable fq = obs(weighted(q(), -1, 1), 4), gp = obs(weighted(p(), -1, 1), 4);
    CHECK(!is_zero_value(trace_residual(ctx, tr_tilde, fq, gp)));
    CHECK(tilde_transform(ctx, tr, H0(), Rational(0))(fq).series == tr(fq).series);

    // classical: ρ = e^{−βH₀} → ρ̃ = 1, which kills brackets
    const ExpPolyFunction rho_tilde = tilde_transform_classical(ExpPolyFunction::gaussian(1, -beta), H0(), beta);
    CHECK(rho_tilde == ExpPolyFunction(c(1)));
    const ExpPolyFunction f = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
    const ExpPolyFunction g = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
    CHECK((rho_tilde * poisson_bracket(f, g)).integrate().value.is_zero());
}

TEST_CASE("realify_and_positivity")
{
    const auto ctx = StarContext::euclidean(1, 4);
    const auto half_tr = trace_functional(ctx).scaled(scalars({GR(make_rational(1, 2)), GR(0), GR(0), GR(0), GR(0)}));
    const PolyFunction i = PolyFunction::constant(1, GR(Rational(0), Rational(1)));
    const Observable f = obs(weighted(q() + i * p(), -1, 2), 4);
    SplitMix64 rng(49);
    std::vector<Observable> probes = {f, obs(weighted(q() * q() - c(1), -1, 2), 4)};
    for (int trial = 0; trial < 5; ++trial) {
        probes.push_back(obs(random_gaussian_probe(rng, 1, 3, make_rational(-1, 2)), 4));
    }
    const PositivityReport rep = realify_and_positivity(ctx, half_tr, probes);
    CHECK(rep.real);
    CHECK(rep.all_positive);
    CHECK(rep.gelfand_trivial);
    CHECK(!rep.flipped);
    // λ⁰ of tr(f̄*f) = ∫(q²+p²)e^{−H₀} = 4π
    CHECK(rep.probes[0].value.series[0] == GR(4));
    CHECK(rep.probes[0].value.pi_power == 1);

    // a negated trace is normalised by one global flip
    const auto neg = trace_functional(ctx).scaled(scalars({GR(-1), GR(0), GR(0), GR(0), GR(0)}));
    const PositivityReport rn = realify_and_positivity(ctx, neg, probes);
    CHECK(rn.flipped);
    CHECK(rn.all_positive);

    // zero probe gives a zero value
    const PositivityReport rz = realify_and_positivity(ctx, half_tr, {Observable::zero(ExpPolyFunction(1), 4)});
    CHECK(rz.probes[0].value.series.is_zero_series());
}
