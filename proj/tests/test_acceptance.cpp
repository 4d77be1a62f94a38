// Acceptance criteria 1-10. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Tolerances and runtime limits are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "starkms/nullspace.hpp"
#include "starkms/probes.hpp"
#include "starkms/runner.hpp"
#include "starkms/states.hpp"

using namespace starkms;
using GR = GaussRational;
using PSeries = FormalSeries<PolyFunction>;
using ESeries = FormalSeries<ExpPolyFunction>;

namespace
{

constexpr double moyal_time_limit_s = 30.0;
constexpr double nullspace_time_limit_s = 60.0;
constexpr double full_suite_time_limit_s = 300.0;
constexpr double star_exp_rel_tol = 1e-9;
constexpr double nullspace_rel_tol = 1e-8;
constexpr double gap_ratio_min = 1e3;
constexpr double angle_max = 1e-3;

struct Outcome
{
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string &what)
    {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

const GR I(Rational(0), Rational(1));
PolyFunction q() { return PolyFunction::q(1, 0); }
PolyFunction p() { return PolyFunction::p(1, 0); }
PolyFunction H0() { return PolyFunction::reference_quadratic(1); }
PolyFunction one() { return PolyFunction::constant(1, GR(1)); }
ESeries obs(const ExpPolyFunction &f, std::size_t K) { return ESeries::constant(f, K); }
ExpPolyFunction weighted(const PolyFunction &P, const Rational &w) { return ExpPolyFunction::term(P, H0() * GR(w)); }

bool zero(const FunctionalValue &v) { return v.series.is_zero_series(); }

std::vector<ExpPolyFunction> gaussian_probes(std::uint64_t seed, int count)
{
    SplitMix64 rng(seed);
    std::vector<ExpPolyFunction> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(random_gaussian_probe(rng, 1, 2, make_rational(-1, 2), 3));
    }
    return out;
}

// λ^order coefficient of Σ_m β^m/m! H^{*m} at an exact point, from plain star products only.
GR taylor_exp_coefficient(const StarContext &ctx, const PolyFunction &H, const Rational &beta,
                          const std::vector<Rational> &x, std::size_t order, int terms)
{
    const std::size_t K = ctx.truncation();
    PSeries power = PSeries::constant(one(), K);
    const PSeries h = PSeries::constant(H, K);
    GR acc(0);
    Rational weight(1);
    for (int m = 0; m <= terms; ++m) {
        acc = acc + power[order].evaluate_exact(x) * GR(weight);
        power = star_product(ctx, h, power);
        weight = weight * beta / Rational(m + 1);
    }
    return acc;
}

Outcome moyal_axioms()
{
    Outcome o;
    const std::size_t K = 6;
    const auto ctx = StarContext::euclidean(1, K);
    SplitMix64 rng(2024);
    int nonzero_assoc = 0, nonzero_herm = 0;
    for (int i = 0; i < 50; ++i) {
        const PSeries f = PSeries::constant(random_poly(rng, 1, 4), K);
        const PSeries g = PSeries::constant(random_poly(rng, 1, 4), K);
        const PSeries h = PSeries::constant(random_poly(rng, 1, 4), K);
        nonzero_assoc += check_associativity(ctx, f, g, h).is_zero_series() ? 0 : 1;
        nonzero_herm += check_hermitian(ctx, f, g).is_zero_series() ? 0 : 1;
    }
    o.require(nonzero_assoc == 0, std::to_string(nonzero_assoc) + " nonzero associativity residuals");
    o.require(nonzero_herm == 0, std::to_string(nonzero_herm) + " nonzero hermiticity residuals");
    o.detail = o.pass ? "50 triples and 50 pairs, degree <= 4, K = 6, all residuals exactly 0" : o.detail;
    return o;
}

Outcome commutator_and_ad()
{
    Outcome o;
    const std::size_t K = 4;
    const auto ctx = StarContext::euclidean(1, K);
    const PSeries comm = star_commutator(ctx, PSeries::constant(q(), K), PSeries::constant(p(), K));
    o.require(comm == PSeries::monomial(PolyFunction::constant(1, I), 1, K), "q*p - p*q != i lambda");
    SplitMix64 rng(77);
    const PolyFunction H = random_poly(rng, 1, 3);
    int bad = 0;
    for (int i = 0; i < 20; ++i) {
        const PSeries f = PSeries::constant(random_poly(rng, 1, 4), K);
        bad += ad(ctx, H0(), f)[0].is_zero() && ad(ctx, H, f)[0].is_zero() ? 0 : 1;
    }
    o.require(bad == 0, std::to_string(bad) + " probes with nonzero lambda^0 in ad(H)f");
    o.detail = o.pass ? "q*p - p*q = i lambda exactly; ad(H)f has zero lambda^0 part on 20 probes (H = H0 and a random cubic)"
                      : o.detail;
    return o;
}

Outcome star_exponential()
{
    Outcome o;
    const std::size_t K = 6;
    const auto ctx = StarContext::euclidean(1, K);
    const std::vector<Rational> betas = {make_rational(1, 2), Rational(1)};
    for (const auto &b : betas) {
        const auto Eq = star_exp(ctx, q(), b);
        o.require(Eq.series() == obs(ExpPolyFunction::term(one(), q() * GR(b)), K), "Exp(beta q) != e^{beta q}");
        const auto E = star_exp(ctx, H0(), b);
        o.require(E.correction(1).is_zero(), "lambda^1 coefficient of Exp(beta H0) nonzero");
    }
    // λ² against the β-Taylor oracle at 10 sampled points.
    const auto ctx2 = StarContext::euclidean(1, 2);
    SplitMix64 rng(5);
    double worst = 0.0;
    for (int pt = 0; pt < 10; ++pt) {
        const Rational b = betas[static_cast<std::size_t>(pt % 2)];
        const std::vector<Rational> x = {make_rational(rng.uniform_int(-15, 15), 10),
                                         make_rational(rng.uniform_int(-15, 15), 10)};
        const Complex value = star_exp(ctx, H0(), b).series()[2].evaluate({x[0].get_d(), x[1].get_d()});
        const Complex oracle = to_complex(taylor_exp_coefficient(ctx2, H0(), b, x, 2, 70));
        worst = std::max(worst, std::abs(value - oracle) / std::abs(oracle));
    }
    o.require(worst < star_exp_rel_tol, "lambda^2 relative error " + std::to_string(worst));
    for (const auto &b : betas) {
        for (const auto &bp : betas) {
            o.require(check_exp_laws(ctx, H0(), b, bp).group_law.is_zero_series(), "group law residual nonzero");
        }
    }
    std::ostringstream d;
    d << "Exp(beta q) exact, lambda^1 = 0, lambda^2 max rel err " << worst << " at 10 points, group law exact (K = 6)";
    if (o.pass) {
        o.detail = d.str();
    }
    return o;
}

Outcome inner_identity()
{
    Outcome o;
    const std::size_t K = 4;
    const auto ctx = StarContext::euclidean(1, K);
    const auto probes = gaussian_probes(41, 10);
    int bad = 0;
    for (const PolyFunction &H : {q(), H0()}) {
        const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H));
        for (const Rational &b : {make_rational(1, 2), Rational(1)}) {
            for (const auto &f : probes) {
                bad += check_inner(ctx, X, b, obs(f, K)).is_zero_series() ? 0 : 1;
            }
        }
    }
    o.require(bad == 0, std::to_string(bad) + " nonzero inner-identity residuals");
    o.detail = o.pass ? "H in {q, H0}, beta in {1/2, 1}, 10 probes, K = 4: residuals exactly 0" : o.detail;
    return o;
}

Outcome trace()
{
    Outcome o;
    const std::size_t K = 4;
    const auto ctx = StarContext::euclidean(1, K);
    const auto tr = trace_functional(ctx);
    const auto probes = gaussian_probes(51, 100);
    int bad = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        bad += zero(trace_residual(ctx, tr, obs(probes[2 * i], K), obs(probes[2 * i + 1], K))) ? 0 : 1;
    }
    o.require(bad == 0, std::to_string(bad) + " pairs with tr(f*g - g*f) != 0");
    const FunctionalValue g = tr(obs(ExpPolyFunction::gaussian(1, Rational(-1)), K));
    o.require(g.pi_power == 1 && g.series[0] == GR(2), "tr(e^{-H0}) lambda^0 is not exactly 2 pi");
    const Complex quad = oracle::integrate_plane([](double x, double y) { return std::exp(-(x * x + y * y) / 2); });
    o.require(std::abs(quad - 2 * M_PI) < 1e-10, "quadrature oracle disagrees with 2 pi");
    o.detail = o.pass ? "50 pairs exactly 0; tr(e^{-H0}) = 2 pi exactly (quadrature oracle agrees)" : o.detail;
    return o;
}

Outcome kms_states()
{
    Outcome o;
    const std::size_t K = 4;
    const auto ctx = StarContext::euclidean(1, K);
    const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H0()));
    const auto probes = gaussian_probes(61, 40);
    int bad_static = 0, bad_dynamic = 0;
    for (const Rational &b : {make_rational(1, 2), Rational(1)}) {
        const auto mu = kms_construct(ctx, H0(), b);
        for (std::size_t i = 0; i < 20; ++i) {
            const ESeries f = obs(probes[2 * i], K), g = obs(probes[2 * i + 1], K);
            bad_static += zero(static_kms_residual(ctx, mu, X, b, f, g)) ? 0 : 1;
            if (i < 5) {
                for (double t : {0.0, 1.0}) {
                    bad_dynamic += zero(dynamic_kms_residual(ctx, mu, X, t, b, f, g)) ? 0 : 1;
                }
            }
        }
    }
    o.require(bad_static == 0, std::to_string(bad_static) + " nonzero static residuals");
    o.require(bad_dynamic == 0, std::to_string(bad_dynamic) + " nonzero dynamic residuals");
    const FunctionalValue control =
        static_kms_residual(ctx, trace_functional(ctx), X, Rational(1), obs(weighted(q(), make_rational(-1, 2)), K),
                            obs(weighted(p(), make_rational(-1, 2)), K));
    o.require(!zero(control), "negative control residual vanished");
    if (o.pass) {
        o.detail = "static: 2 x 20 pairs exactly 0 (K = 4); dynamic t in {0, 1}: exactly 0; control lambda^1 = " +
                   to_string(control.series[1].im) + " i pi";
    }
    return o;
}

Outcome classical_order()
{
    Outcome o;
    const auto probes = gaussian_probes(71, 40);
    const auto X = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H0()));
    int bad = 0;
    for (const Rational &b : {make_rational(1, 2), Rational(1)}) {
        const ExpPolyFunction rho = ExpPolyFunction::term(one(), H0() * GR(-b));
        for (std::size_t i = 0; i < 20; ++i) {
            bad += classical_kms_residual(rho, X, b, probes[2 * i], probes[2 * i + 1]).value.is_zero() ? 0 : 1;
        }
    }
    o.require(bad == 0, std::to_string(bad) + " nonzero classical residuals");
    // β = 0: the condition is ∫{f,g} Ω = 0 for any density-free pairing.
    int bad0 = 0;
    const ExpPolyFunction flat = ExpPolyFunction::constant(1, GR(1));
    for (std::size_t i = 0; i < 20; ++i) {
        bad0 += classical_kms_residual(flat, X, Rational(0), probes[2 * i], probes[2 * i + 1]).value.is_zero() ? 0 : 1;
    }
    o.require(bad0 == 0, "beta = 0 reduction failed");
    o.detail = o.pass ? "e^{-beta H0} exact zero on 2 x 20 pairs; beta = 0 bracket integrals vanish on 20 pairs" : o.detail;
    return o;
}

Outcome positivity()
{
    Outcome o;
    const std::size_t K = 4;
    const auto ctx = StarContext::euclidean(1, K);
    const auto tr = trace_functional(ctx);
    const auto half = tr.scaled(ScalarSeries<GR>::constant(GR(make_rational(1, 2)), K));
    std::vector<ESeries> probes;
    for (const auto &f : gaussian_probes(81, 20)) {
        probes.push_back(obs(f, K));
    }
    const PositivityReport rep = realify_and_positivity(ctx, half, probes);
    int positive = 0;
    for (const auto &pr : rep.probes) {
        positive += pr.sign == Sign::positive ? 1 : 0;
    }
    o.require(positive == 20, std::to_string(positive) + "/20 positive");
    o.require(rep.gelfand_trivial, "probe in the Gel'fand ideal");
    // Reality residual of the trace itself, computed directly.
    int bad = 0;
    for (const auto &f : probes) {
        const FunctionalValue a = tr(conjugate_series(f));
        FunctionalValue b = tr(f);
        b.series = b.series.map([](const GR &z) { return z.conj(); });
        bad += (a.pi_power == b.pi_power && a.series == b.series) ? 0 : 1;
    }
    o.require(bad == 0 && rep.real, "reality residual nonzero");
    o.detail = o.pass ? std::string("20/20 positive after ") + (rep.flipped ? "a global flip" : "no flip") +
                            "; reality residual exactly 0"
                      : o.detail;
    return o;
}

Outcome nullspace_experiment()
{
    Outcome o;
    const auto translation = TorusOneForm::constant(Rational(0), Rational(1)); // X = ∂_θ₁
    const auto d0 = nullspace_dim(assemble_constraints(2, 4, Rational(0), translation), nullspace_rel_tol);
    const auto d1 = nullspace_dim(assemble_constraints(2, 4, Rational(1), translation), nullspace_rel_tol);
    o.require(d0.dimension == 1, "beta = 0 dimension " + std::to_string(d0.dimension));
    o.require(d1.dimension == 0, "beta = 1 dimension " + std::to_string(d1.dimension));

    const double beta = 0.5;
    std::map<Mode, GR> H;
    H[{1, 0}] = GR(make_rational(1, 2));
    H[{-1, 0}] = GR(make_rational(1, 2));
    const ConstraintSystem cs = assemble_constraints(6, 12, make_rational(1, 2), TorusOneForm::exact(H));
    const NullspaceResult r = nullspace_dim(cs, nullspace_rel_tol);
    o.require(r.dimension == 1, "cos dimension " + std::to_string(r.dimension));
    auto boltzmann = [&](double b) {
        std::vector<Complex> v;
        for (const auto &[k1, k2] : cs.columns()) {
            v.push_back(k2 == 0 ? oracle::fourier_coefficient_1d([&](double x) { return std::exp(-b * std::cos(x)); }, k1)
                                : Complex(0.0));
        }
        return v;
    };
    double angle = M_PI, wrong_angle = 0.0;
    if (r.dimension == 1) {
        angle = vector_angle(r.null_vectors[0], boltzmann(beta));
        // the comparison must be able to tell β = 1/2 from β = 1
        wrong_angle = vector_angle(r.null_vectors[0], boltzmann(2 * beta));
    }
    o.require(wrong_angle > angle_max, "angle test does not discriminate beta");
    o.require(r.gap_ratio >= gap_ratio_min, "gap ratio " + std::to_string(r.gap_ratio));
    o.require(angle < angle_max, "angle " + std::to_string(angle));
    std::ostringstream d;
    d << "translation dims (" << d0.dimension << ", " << d1.dimension << "); cos t1: dim " << r.dimension << ", gap "
      << r.gap_ratio << ", angle " << angle << " (" << wrong_angle << " against beta = 1)";
    if (o.pass) {
        o.detail = d.str();
    }
    return o;
}

Outcome determinism()
{
    Outcome o;
    std::vector<std::string> first, second;
    int failed = 0;
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto &path : bundled_scenarios()) {
            const Report rep = run_scenario(load_scenario(path));
            failed += rep.all_passed() ? 0 : 1;
            ojson j = to_json(rep);
            j.erase("run_info");
            (pass == 0 ? first : second).push_back(j.dump(2));
        }
    }
    o.require(!first.empty(), "no bundled scenarios found");
    o.require(first == second, "reports differ between runs");
    o.require(failed == 0, std::to_string(failed) + " scenario runs with failing checks");
    o.detail = o.pass ? std::to_string(first.size()) + " bundled scenarios run twice, byte-identical JSON" : o.detail;
    return o;
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        const char *name;
        std::function<Outcome()> run;
        double limit_s; // 0: no separate limit
    };
    const std::vector<Criterion> criteria = {
        {1, "Moyal axioms", moyal_axioms, moyal_time_limit_s},
        {2, "canonical commutator", commutator_and_ad, 0},
        {3, "star exponential", star_exponential, 0},
        {4, "inner automorphism identity", inner_identity, 0},
        {5, "trace", trace, 0},
        {6, "KMS state", kms_states, 0},
        {7, "classical order", classical_order, 0},
        {8, "positivity", positivity, 0},
        {9, "torus nullspace experiment", nullspace_experiment, nullspace_time_limit_s},
        {10, "determinism", determinism, full_suite_time_limit_s},
    };
    int failures = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception &e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs >= c.limit_s) {
            out.pass = false;
            out.detail += " (over the " + std::to_string(static_cast<int>(c.limit_s)) + " s limit)";
        }
        failures += out.pass ? 0 : 1;
        std::printf("%s criterion %d (%s): %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", c.id, c.name, out.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
