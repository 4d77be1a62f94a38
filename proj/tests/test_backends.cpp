#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "starkms/exppoly.hpp"
#include "starkms/fourier.hpp"
#include "starkms/primitive1d.hpp"
#include "starkms/probes.hpp"
#include "starkms/vector_field.hpp"

using namespace starkms;
using GR = GaussRational;

namespace
{

PolyFunction q() { return PolyFunction::q(1, 0); }
PolyFunction p() { return PolyFunction::p(1, 0); }
PolyFunction c(long num, long den = 1) { return PolyFunction::constant(1, GR(make_rational(num, den))); }
PolyFunction H0() { return PolyFunction::reference_quadratic(1); }

} // namespace

TEST_CASE("pointwise_algebra: derivatives")
{
    CHECK((q() * q() * p()).derivative(0) == c(2) * q() * p());

    // ∂_q (q e^{−H₀}) = (1 − q²) e^{−H₀}
    const ExpPolyFunction f = ExpPolyFunction::term(q(), -H0());
    const ExpPolyFunction expected = ExpPolyFunction::term(c(1) - q() * q(), -H0());
    CHECK(f.derivative(0) == expected);
}

TEST_CASE("pointwise_algebra: Fourier mode products and band overflow")
{
    const FourierFunction a = FourierFunction::mode(2, 1, -1);
    const FourierFunction b = FourierFunction::mode(2, 1, 2);
    const FourierFunction ab = a * b;
    CHECK(ab.coefficient(2, 1) == Complex(1.0));
    CHECK(ab.leakage() == 0.0);

    const FourierFunction d = FourierFunction::mode(2, 2, 0) * FourierFunction::mode(2, 1, 0);
    CHECK(d.is_zero());
    CHECK(d.leakage() == doctest::Approx(1.0));
}

TEST_CASE("pointwise_algebra: mixed backends are rejected")
{
    CHECK_THROWS_AS(PolyFunction::q(1, 0) + PolyFunction::q(2, 0), context_mismatch);
    CHECK_THROWS_AS(FourierFunction(2) + FourierFunction(3), context_mismatch);
    CHECK_THROWS_AS(ExpPolyFunction::gaussian(1, Rational(-1)) * ExpPolyFunction::gaussian(2, Rational(-1)),
                    context_mismatch);
}

TEST_CASE("poisson_bracket")
{
    CHECK(poisson_bracket(q(), p()) == c(1));
    SplitMix64 rng(3);
    const PolyFunction f = random_poly(rng, 1, 3);
    CHECK(poisson_bracket(f, f).is_zero());
    CHECK(poisson_bracket(c(1, 2) * q() * q(), c(1, 2) * p() * p()) == q() * p());
}

TEST_CASE("lie_derivative")
{
    // X = ∂_θ₁ on T² is i_Xω = dθ₂ under ω = dθ₁∧dθ₂.
    const int N = 3;
    const auto X = VectorField<FourierFunction>::from_one_form(
        {FourierFunction(N), FourierFunction::constant(N, 1.0)});
    CHECK(X.is_closed());
    const FourierFunction f = FourierFunction::mode(N, 1, 0);
    const FourierFunction lf = X.lie_derivative(f);
    CHECK(lf.coefficient(1, 0) == Complex(0.0, 1.0));
    CHECK(X.lie_derivative(FourierFunction::constant(N, 1.0)).is_zero());

    const auto XH = VectorField<PolyFunction>::from_hamiltonian(H0());
    CHECK(XH.lie_derivative(H0()).is_zero());
    CHECK(XH.lie_derivative(c(1)).is_zero());
}

TEST_CASE("convention audit: one set of signs for bracket, flow and one-forms")
{
    // {q, p} = 1 and d/dt f = {f, H}: for H₀, q̇ = p and ṗ = −q.
    CHECK(poisson_bracket(q(), p()) == c(1));
    const auto X = VectorField<PolyFunction>::from_hamiltonian(H0());
    CHECK(X.lie_derivative(q()) == p());
    CHECK(X.lie_derivative(p()) == -q());
    // i_Xω = dH: components X^q = ∂_p H, X^p = −∂_q H; the one-form route agrees.
    const auto Y = VectorField<PolyFunction>::from_one_form({q(), p()}); // α = dH₀
    CHECK(Y.lie_derivative(q()) == p());
    CHECK(Y.lie_derivative(p()) == -q());
    // H = θ₂ on the torus generates ∂_θ₁.
    const auto T = VectorField<FourierFunction>::from_one_form({FourierFunction(1), FourierFunction::constant(1, 1.0)});
    CHECK(T.component(0).coefficient(0, 0) == Complex(1.0));
    CHECK(T.component(1).is_zero());
}

TEST_CASE("integrate_volume: Gaussian moments against quadrature")
{
    const PiScaled<GR> g = ExpPolyFunction::gaussian(1, Rational(-1)).integrate();
    CHECK(g.value == GR(2));
    CHECK(g.pi_power == 1);
    const auto quad = oracle::integrate_plane([](double x, double y) { return std::exp(-(x * x + y * y) / 2); });
    CHECK(g.to_complex().real() == doctest::Approx(quad.real()).epsilon(1e-12));
    CHECK(quad.real() == doctest::Approx(2 * std::numbers::pi).epsilon(1e-12));

    const PiScaled<GR> m2 = ExpPolyFunction::term(q() * q(), -H0()).integrate();
    CHECK(m2.value == GR(2));
    CHECK(m2.pi_power == 1);

    SplitMix64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
        const Rational w = make_rational(-rng.uniform_int(1, 4), 2);
        const ExpPolyFunction f = random_gaussian_probe(rng, 1, 4, w);
        const Complex exact = f.integrate().to_complex();
        const auto num = oracle::integrate_plane([&](double x, double y) { return f.evaluate({x, y}); }, 14.0, 560);
        CHECK(std::abs(exact - num) < 1e-9 * (1 + std::abs(num)));
    }
}

TEST_CASE("integrate_volume: n = 2 normalisation")
{
    const PiScaled<GR> g = ExpPolyFunction::gaussian(2, Rational(-1)).integrate();
    CHECK(g.value == GR(4));
    CHECK(g.pi_power == 2);
}

TEST_CASE("integrate_volume: non-integrable input names the term")
{
    const ExpPolyFunction poly(q() * p());
    CHECK_FALSE(poly.integrable());
    try {
        (void)poly.integrate();
        FAIL("expected domain_error");
    } catch (const domain_error &e) {
        CHECK(std::string(e.what()).find("q1") != std::string::npos);
    }
    CHECK_THROWS_AS((void)ExpPolyFunction::gaussian(1, make_rational(1, 2)).integrate(), domain_error);
    CHECK(ExpPolyFunction(1).integrate().value.is_zero());
}

TEST_CASE("integrate_volume: torus brackets have zero mean")
{
    SplitMix64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const FourierFunction f = random_fourier(rng, 6, 3), g = random_fourier(rng, 6, 3);
        CHECK(poisson_bracket(f, g).integrate().value == Complex(0.0));
    }
    const auto quad = oracle::integrate_torus([](double, double) { return 1.0; });
    CHECK(FourierFunction::constant(2, 1.0).integrate().to_complex().real() == doctest::Approx(quad.real()));
}

TEST_CASE("properties: Leibniz and Jacobi on exact backends")
{
    SplitMix64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const PolyFunction f = random_poly(rng, 1, 3), g = random_poly(rng, 1, 3), h = random_poly(rng, 1, 3);
        for (std::size_t a = 0; a < 2; ++a) {
            CHECK((f * g).derivative(a) == f.derivative(a) * g + f * g.derivative(a));
        }
        const PolyFunction jac = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                                 poisson_bracket(h, poisson_bracket(f, g));
        CHECK(jac.is_zero());
    }
    // Two degrees of freedom.
    for (int trial = 0; trial < 5; ++trial) {
        const PolyFunction f = random_poly(rng, 2, 2), g = random_poly(rng, 2, 2), h = random_poly(rng, 2, 2);
        const PolyFunction jac = poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f)) +
                                 poisson_bracket(h, poisson_bracket(f, g));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("properties: integration by parts and Liouville, exactly")
{
    SplitMix64 rng(37);
    const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(q() * q() * p() + c(1, 3) * p()));
    for (int trial = 0; trial < 10; ++trial) {
        const ExpPolyFunction f = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
        const ExpPolyFunction g = random_gaussian_probe(rng, 1, 3, make_rational(-1, 2));
        for (std::size_t a = 0; a < 2; ++a) {
            const auto lhs = (f.derivative(a) * g).integrate();
            const auto rhs = (f * g.derivative(a)).integrate();
            CHECK(lhs.value == -rhs.value);
        }
        CHECK(X.lie_derivative(f).integrate().value.is_zero());
    }
}

TEST_CASE("closedness check accepts closed and rejects perturbed forms")
{
    SplitMix64 rng(41);
    const PolyFunction h = random_poly(rng, 1, 4, 3, false);
    auto closed = VectorField<PolyFunction>::from_one_form({h.derivative(0), h.derivative(1)});
    CHECK(closed.is_closed());
    auto open = VectorField<PolyFunction>::from_one_form({h.derivative(0), h.derivative(1) + q()});
    CHECK_FALSE(open.is_closed());
    CHECK_THROWS_AS(open.require_closed(), precondition_error);

    const int N = 3;
    FourierFunction a2 = FourierFunction::constant(N, 1.0);
    const auto torus_closed = VectorField<FourierFunction>::from_one_form({FourierFunction(N), a2});
    CHECK(torus_closed.is_closed());
    a2.set_coefficient(1, 0, 1e-3);
    const auto torus_open = VectorField<FourierFunction>::from_one_form({FourierFunction(N), a2});
    CHECK_FALSE(torus_open.is_closed());
}

TEST_CASE("compact_primitive_1d")
{
    CHECK(compact_primitive_gaussian({}, Rational(-2)).empty());
    // φ = 2x e^{−x²} (weight c = −2) has primitive −e^{−x²}.
    const auto Q = compact_primitive_gaussian({Rational(0), Rational(2)}, Rational(-2));
    REQUIRE(Q.size() == 1);
    CHECK(Q[0] == Rational(-1));
    CHECK_THROWS_AS(compact_primitive_gaussian({Rational(1)}, Rational(-2)), precondition_error);

    // Sampled: φ = d/dx e^{−x²/2}; the primitive must be the Gaussian (h(−L) ≈ 0).
    const double L = 10.0, dx = 0.01;
    std::vector<double> phi, gauss;
    for (double x = -L; x <= L + 1e-12; x += dx) {
        phi.push_back(-x * std::exp(-x * x / 2));
        gauss.push_back(std::exp(-x * x / 2));
    }
    const auto h = compact_primitive_sampled(phi, dx);
    double err = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        err = std::max(err, std::abs(h.values[i] - gauss[i]));
    }
    CHECK(err < 1e-8);
    CHECK(std::abs(h.values.back()) < 1e-8);

    const auto zero = compact_primitive_sampled(std::vector<double>(100, 0.0), dx);
    for (double v : zero.values) {
        CHECK(v == 0.0);
    }

    std::vector<double> bump;
    for (double x = -L; x <= L + 1e-12; x += dx) {
        bump.push_back(std::exp(-x * x));
    }
    CHECK_THROWS_AS(compact_primitive_sampled(bump, dx), precondition_error);
}
