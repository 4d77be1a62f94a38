#include <doctest.h>

#include "starkms/poly.hpp"
#include "starkms/probes.hpp"
#include "starkms/series.hpp"

using namespace starkms;

namespace
{

using GR = GaussRational;
using PSeries = FormalSeries<PolyFunction>;
using SSeries = ScalarSeries<GaussRational>;

PolyFunction q() { return PolyFunction::q(1, 0); }
PolyFunction p() { return PolyFunction::p(1, 0); }
PolyFunction one() { return PolyFunction::constant(1, GR(1)); }
PolyFunction zero() { return PolyFunction(1); }

SSeries scalars(std::initializer_list<long> re)
{
    std::vector<GR> v;
    for (long x : re) {
        v.emplace_back(Rational(x));
    }
    return SSeries(v);
}

SSeries random_scalar_series(SplitMix64 &rng, std::size_t K)
{
    std::vector<GR> v;
    for (std::size_t r = 0; r <= K; ++r) {
        v.emplace_back(Rational(rng.uniform_int(-4, 4), rng.uniform_int(1, 3)), Rational(rng.uniform_int(-4, 4)));
    }
    return SSeries(v);
}

PSeries random_poly_series(SplitMix64 &rng, std::size_t K)
{
    std::vector<PolyFunction> v;
    for (std::size_t r = 0; r <= K; ++r) {
        v.push_back(random_poly(rng, 1, 2));
    }
    return PSeries(v);
}

} // namespace

TEST_CASE("series_arith: telescoping product (1 + λf)(1 − λf) = 1 − λ²f²")
{
    const PolyFunction f = q();
    const PSeries a{std::vector{one(), f, zero()}};
    const PSeries b{std::vector{one(), -f, zero()}};
    const PSeries expected{std::vector{one(), zero(), -(f * f)}};
    CHECK(a * b == expected);
}

TEST_CASE("series_arith: zero series annihilates")
{
    SplitMix64 rng(7);
    const PSeries a = random_poly_series(rng, 3);
    const PSeries z = PSeries::zero(zero(), 3);
    CHECK((a * z).is_zero_series());
}

TEST_CASE("series_arith: (1 + λq)(1 + λp) at K = 1 is 1 + λ(q + p)")
{
    const PSeries a{std::vector{one(), q()}};
    const PSeries b{std::vector{one(), p()}};
    const PSeries expected{std::vector{one(), q() + p()}};
    CHECK(a * b == expected);
}

TEST_CASE("series_arith: result carries the smaller truncation order")
{
    const PSeries a{std::vector{one(), q(), p()}};
    const PSeries b{std::vector{one(), p()}};
    CHECK((a + b).truncation() == 1);
    CHECK((a * b).truncation() == 1);
}

TEST_CASE("series_arith: mismatched phase spaces are rejected")
{
    const PSeries a = PSeries::constant(PolyFunction::q(1, 0), 2);
    const PSeries b = PSeries::constant(PolyFunction::q(2, 0), 2);
    CHECK_THROWS_AS(a + b, context_mismatch);
    CHECK_THROWS_AS(a * b, context_mismatch);
}

TEST_CASE("series_arith: scalar multiplication by a λ-series")
{
    const SSeries c = scalars({0, 0, 1, 0});
    const PSeries f = PSeries::constant(q(), 3);
    const PSeries out = scale(c, f);
    CHECK(out == PSeries(std::vector{zero(), zero(), q(), zero()}));
}

TEST_CASE("conjugate_series")
{
    const SSeries i_lambda{std::vector{GR(), GR::i_unit()}};
    const SSeries expected{std::vector{GR(), -GR::i_unit()}};
    CHECK(conjugate_series(i_lambda) == expected);

    SplitMix64 rng(11);
    const SSeries a = random_scalar_series(rng, 5);
    CHECK(conjugate_series(conjugate_series(a)) == a);

    // conj(q + iλp) = q − iλp
    const PSeries f{std::vector{q(), p() * GR::i_unit()}};
    const PSeries g{std::vector{q(), p() * (-GR::i_unit())}};
    CHECK(conjugate_series(f) == g);
}

TEST_CASE("ring_sign")
{
    CHECK(ring_sign(scalars({0, 0, 0, 0})) == Sign::zero);
    CHECK(ring_sign(scalars({0, 0, 3, -5})) == Sign::positive);
    CHECK(ring_sign(scalars({-2, 100})) == Sign::negative);
    const SSeries complex{std::vector{GR(0), GR(Rational(1), Rational(1))}};
    CHECK_THROWS_AS(ring_sign(complex), domain_error);
}

TEST_CASE("lowest_order")
{
    const PSeries f{std::vector{zero(), zero(), q()}};
    CHECK(lowest_order(f) == 2u);
    CHECK_FALSE(lowest_order(PSeries::zero(zero(), 4)).has_value());
}

TEST_CASE("properties: ring axioms on exact scalar and polynomial series")
{
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t K = static_cast<std::size_t>(rng.uniform_int(0, 6));
        const SSeries a = random_scalar_series(rng, K), b = random_scalar_series(rng, K), c = random_scalar_series(rng, K);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(conjugate_series(a + b) == conjugate_series(a) + conjugate_series(b));

        const PSeries f = random_poly_series(rng, K), g = random_poly_series(rng, K), h = random_poly_series(rng, K);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * g == g * f);
    }
}

TEST_CASE("properties: truncation is consistent with multiplication")
{
    SplitMix64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t K = static_cast<std::size_t>(rng.uniform_int(0, 4));
        const std::size_t Kbig = K + static_cast<std::size_t>(rng.uniform_int(1, 3));
        const SSeries a = random_scalar_series(rng, Kbig), b = random_scalar_series(rng, Kbig);
        CHECK((a * b).truncated(K) == a.truncated(K) * b.truncated(K));
    }
}

TEST_CASE("properties: squares of real series are non-negative in the ring ordering")
{
    SplitMix64 rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<GR> v;
        for (int r = 0; r <= 5; ++r) {
            // Sparse so that leading zeros occur.
            v.emplace_back(rng.uniform_int(0, 2) == 0 ? Rational(0) : Rational(rng.uniform_int(-6, 6), 5));
        }
        const SSeries a(v);
        const Sign s = ring_sign(a * a);
        CHECK((s == Sign::positive || s == Sign::zero));
    }
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("1/2") == Rational(1, 2));
    CHECK(parse_rational("-3") == Rational(-3));
    CHECK(parse_rational("0.25") == Rational(1, 4));
    CHECK(parse_rational("1e-3") == Rational(1, 1000));
    CHECK_THROWS_AS(parse_rational("abc"), precondition_error);
    CHECK_THROWS_AS(parse_rational("1/0"), precondition_error);
    CHECK(rational_approx(0.5) == Rational(1, 2));
    CHECK(std::abs(rational_approx(3.14159265358979).get_d() - 3.14159265358979) < 1e-15);
}
