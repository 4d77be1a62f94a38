#include "starkms/runner.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <numbers>
#include <type_traits>

#include "starkms/expr.hpp"
#include "starkms/nullspace.hpp"
#include "starkms/probes.hpp"
#include "starkms/states.hpp"

namespace starkms
{

namespace
{

using ESeries = FormalSeries<ExpPolyFunction>;
using PSeries = FormalSeries<PolyFunction>;
using TSeries = FormalSeries<FourierFunction>;

// ---------------------------------------------------------------------------
// JSON encodings: exact rationals as "num/den", complex values as [re, im].

ojson enc(const GaussRational &z) { return ojson::array({to_string(z.re), to_string(z.im)}); }
ojson enc(const Complex &z) { return ojson::array({z.real(), z.imag()}); }
ojson enc(const Rational &r) { return to_string(r); }

ojson enc(const FunctionalValue &v)
{
    ojson orders = ojson::array();
    for (const auto &c : v.series.coefficients()) {
        orders.push_back(enc(c));
    }
    return {{"pi_power", v.pi_power}, {"orders", std::move(orders)}};
}

template <class F>
ojson enc_functions(const FormalSeries<F> &s)
{
    ojson orders = ojson::array();
    for (const auto &c : s.coefficients()) {
        orders.push_back(c.is_zero() ? std::string("0") : c.to_string());
    }
    return {{"orders", std::move(orders)}};
}

ojson enc(const PiScaled<GaussRational> &v) { return {{"pi_power", v.pi_power}, {"value", enc(v.value)}}; }

ojson zero_orders(std::size_t K)
{
    ojson orders = ojson::array();
    for (std::size_t r = 0; r <= K; ++r) {
        orders.push_back("0");
    }
    return {{"orders", std::move(orders)}};
}

// ---------------------------------------------------------------------------

class Runner
{
public:
    explicit Runner(Report &report) : report_(report) {}

    // fn fills kind/residual/tolerance/passed/note/data; exceptions become error records.
    void check(const std::string &id, const std::string &anchor, ojson params,
               const std::function<void(CheckRecord &)> &fn)
    {
        CheckRecord c;
        c.id = id;
        c.anchor = anchor;
        c.parameters = params.is_null() ? ojson::object() : std::move(params);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            fn(c);
        } catch (const std::exception &e) {
            c.kind = "error";
            c.passed = false;
            c.note = e.what();
            c.residual = nullptr;
        }
        c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report_.checks.push_back(std::move(c));
    }

private:
    Report &report_;
};

// Residual series over a probe set: zero iff every probe gives zero; the first
// nonzero residual is recorded verbatim.
template <class Series, class Encode>
void exact_zero(CheckRecord &c, std::size_t K, const std::vector<Series> &residuals, Encode encode)
{
    c.kind = "exact_zero";
    c.tolerance = "0";
    c.passed = true;
    c.residual = zero_orders(K);
    std::size_t failures = 0;
    for (const auto &r : residuals) {
        if (!r.is_zero_series()) {
            if (failures == 0) {
                c.residual = encode(r);
            }
            ++failures;
            c.passed = false;
        }
    }
    c.data["probes"] = residuals.size();
    c.data["nonzero"] = failures;
}

void exact_zero_values(CheckRecord &c, std::size_t K, const std::vector<FunctionalValue> &values)
{
    c.kind = "exact_zero";
    c.tolerance = "0";
    c.passed = true;
    std::size_t failures = 0;
    c.residual = values.empty() ? zero_orders(K) : enc(values.front());
    for (const auto &v : values) {
        if (!v.series.is_zero_series()) {
            if (failures == 0) {
                c.residual = enc(v);
            }
            ++failures;
            c.passed = false;
        }
    }
    c.data["probes"] = values.size();
    c.data["nonzero"] = failures;
}

// Short form for check ids: "1" rather than "1/1".
std::string label(const Rational &r)
{
    const std::string s = to_string(r);
    return s.ends_with("/1") ? s.substr(0, s.size() - 2) : s;
}

// ---------------------------------------------------------------------------
// R^{2n}

class EuclideanSuites
{
public:
    EuclideanSuites(const Scenario &s, Runner &run)
        : s_(s), run_(run), n_(s.dof), K_(s.truncation), ctx_(StarContext::euclidean(s.dof, s.truncation)),
          X_(VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(PolyFunction::reference_quadratic(n_))))
    {
        if (!s.one_form.empty()) {
            std::vector<PolyFunction> alpha;
            for (const auto &a : s.one_form) {
                alpha.push_back(parse_poly(a, n_));
            }
            // closed one-forms on R^{2n} are exact; the primitive gives the same δ_X
            H_ = primitive_of_closed_form(alpha);
            X_ = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H_));
        } else {
            const ExpPolyFunction H = parse_exppoly(s.hamiltonian.empty() ? "H0" : s.hamiltonian, n_);
            if (!H.is_polynomial()) {
                throw config_error("hamiltonian must be a polynomial on R2n");
            }
            H_ = H.as_polynomial();
            X_ = VectorField<ExpPolyFunction>::from_hamiltonian(ExpPolyFunction(H_));
        }
        SplitMix64 rng(s.probes.seed);
        for (int i = 0; i < 2 * s.probes.count; ++i) {
            probes_.push_back(
                random_gaussian_probe(rng, n_, s.probes.degree, s.probes.weight, s.probes.range));
        }
        SplitMix64 prng(s.probes.seed + 1);
        for (int i = 0; i < 3 * s.probes.poly_count; ++i) {
            polys_.push_back(random_poly(prng, n_, s.probes.poly_degree, s.probes.range));
        }
    }

    void run(const std::string &suite)
    {
        if (suite == "moyal") {
            moyal();
        } else if (suite == "star_exp") {
            star_exp_suite();
        } else if (suite == "inner") {
            inner();
        } else if (suite == "trace") {
            trace();
        } else if (suite == "kms_static") {
            kms_static();
        } else if (suite == "kms_dynamic") {
            kms_dynamic();
        } else if (suite == "kms_classical") {
            kms_classical();
        } else if (suite == "tilde") {
            tilde();
        } else if (suite == "positivity") {
            positivity();
        } else if (suite == "evolution") {
            evolution();
        }
    }

private:
    ESeries obs(const ExpPolyFunction &f) const { return ESeries::constant(f, K_); }
    std::size_t pairs() const { return probes_.size() / 2; }
    const ExpPolyFunction &first(std::size_t i) const { return probes_[2 * i]; }
    const ExpPolyFunction &second(std::size_t i) const { return probes_[2 * i + 1]; }

    ExpPolyFunction weighted(const PolyFunction &P, const Rational &w) const
    {
        return ExpPolyFunction::term(P, PolyFunction::reference_quadratic(n_) * GaussRational(w));
    }
    // The documented negative-control pair q₁e^{wH₀}, p₁e^{wH₀}.
    std::pair<ESeries, ESeries> control_pair(const Rational &w) const
    {
        return {obs(weighted(PolyFunction::q(n_, 0), w)), obs(weighted(PolyFunction::p(n_, 0), w))};
    }
    Rational max_beta() const
    {
        Rational b(1);
        for (const auto &x : s_.betas) {
            if (x > b) {
                b = x;
            }
        }
        return b;
    }

    void moyal()
    {
        const std::size_t m = polys_.size() / 3;
        run_.check("moyal.associativity", "(f*g)*h = f*(g*h)", {{"triples", m}, {"K", K_}}, [&](CheckRecord &c) {
            std::vector<PSeries> res;
            for (std::size_t i = 0; i < m; ++i) {
                res.push_back(check_associativity(ctx_, PSeries::constant(polys_[3 * i], K_),
                                                  PSeries::constant(polys_[3 * i + 1], K_),
                                                  PSeries::constant(polys_[3 * i + 2], K_)));
            }
            exact_zero(c, K_, res, enc_functions<PolyFunction>);
        });
        run_.check("moyal.hermitian", "conj(f*g) = conj(g)*conj(f)", {{"pairs", m}, {"K", K_}}, [&](CheckRecord &c) {
            std::vector<PSeries> res;
            for (std::size_t i = 0; i < m; ++i) {
                res.push_back(check_hermitian(ctx_, PSeries::constant(polys_[3 * i], K_),
                                              PSeries::constant(polys_[3 * i + 1], K_)));
            }
            exact_zero(c, K_, res, enc_functions<PolyFunction>);
        });
        run_.check("moyal.parity", "M_r(f,g) = (-1)^r M_r(g,f)", {{"pairs", m}}, [&](CheckRecord &c) {
            std::vector<PSeries> res;
            for (std::size_t i = 0; i < m; ++i) {
                std::vector<PolyFunction> v;
                for (std::size_t r = 0; r <= K_; ++r) {
                    const PolyFunction a = moyal_bidiff(ctx_, r, polys_[3 * i], polys_[3 * i + 1]);
                    const PolyFunction b = moyal_bidiff(ctx_, r, polys_[3 * i + 1], polys_[3 * i]);
                    v.push_back(r % 2 == 0 ? a - b : a + b);
                }
                res.emplace_back(std::move(v));
            }
            exact_zero(c, K_, res, enc_functions<PolyFunction>);
        });
        run_.check("moyal.canonical_commutator", "q*p - p*q = i lambda", {{"K", K_}}, [&](CheckRecord &c) {
            std::vector<PSeries> res;
            for (std::size_t i = 0; i < n_; ++i) {
                const PSeries comm = star_commutator(ctx_, PSeries::constant(PolyFunction::q(n_, i), K_),
                                                     PSeries::constant(PolyFunction::p(n_, i), K_));
                res.push_back(comm - PSeries::monomial(
                                         PolyFunction::constant(n_, GaussRational(Rational(0), Rational(1))), 1, K_));
            }
            exact_zero(c, K_, res, enc_functions<PolyFunction>);
        });
        run_.check("moyal.ad_lowest_order", "ad(H) raises the lambda-degree by at least one", {{"probes", m}},
                   [&](CheckRecord &c) {
                       std::vector<PSeries> res;
                       for (std::size_t i = 0; i < m; ++i) {
                           const PSeries a = ad(ctx_, H_, PSeries::constant(polys_[3 * i], K_));
                           res.push_back(PSeries::constant(a[0], K_));
                       }
                       exact_zero(c, K_, res, enc_functions<PolyFunction>);
                   });
        run_.check("moyal.strong_closedness", "integral of f*g equals integral of fg", {{"pairs", pairs()}},
                   [&](CheckRecord &c) {
                       std::vector<FunctionalValue> res;
                       const auto tr = trace_functional(ctx_);
                       for (std::size_t i = 0; i < pairs(); ++i) {
                           FunctionalValue v = tr(star_product(ctx_, obs(first(i)), obs(second(i))));
                           const FunctionalValue w = tr(obs(first(i) * second(i)));
                           v.series = v.series - w.series;
                           res.push_back(v);
                       }
                       exact_zero_values(c, K_, res);
                   });
    }

    void star_exp_suite()
    {
        run_.check("star_exp.unit", "Exp(0 H) = 1", {}, [&](CheckRecord &c) {
            const ESeries e = star_exp(ctx_, H_, Rational(0)).series() - obs(ExpPolyFunction::constant(n_, GaussRational(1)));
            exact_zero(c, K_, std::vector<ESeries>{e}, enc_functions<ExpPolyFunction>);
        });
        for (const auto &b : s_.betas) {
            run_.check("star_exp.first_order[beta=" + label(b) + "]", "lambda^1 coefficient of Exp(beta H) vanishes",
                       {{"beta", enc(b)}}, [&](CheckRecord &c) {
                           const auto E = star_exp(ctx_, H_, b);
                           const ESeries g1 = ESeries::constant(ExpPolyFunction(E.correction(std::min<std::size_t>(1, K_))), K_);
                           exact_zero(c, K_, std::vector<ESeries>{K_ >= 1 ? g1 : ESeries::zero(ExpPolyFunction(n_), K_)},
                                      enc_functions<ExpPolyFunction>);
                           if (K_ >= 2) {
                               c.data["g2"] = E.correction(2).to_string();
                           }
                       });
        }
        for (const auto &b1 : s_.betas) {
            for (const auto &b2 : s_.betas) {
                run_.check("star_exp.group_law[beta=" + label(b1) + ",beta'=" + label(b2) + "]",
                           "Exp(beta H)*Exp(beta' H) = Exp((beta+beta') H)", {{"beta", enc(b1)}, {"beta_prime", enc(b2)}},
                           [&](CheckRecord &c) {
                               const auto r = check_exp_laws(ctx_, H_, b1, b2);
                               exact_zero(c, K_, std::vector<ESeries>{r.group_law}, enc_functions<ExpPolyFunction>);
                           });
            }
            run_.check("star_exp.commutes[beta=" + label(b1) + "]", "Exp(beta H)*H = H*Exp(beta H)",
                       {{"beta", enc(b1)}}, [&](CheckRecord &c) {
                           const auto r = check_exp_laws(ctx_, H_, b1, Rational(0));
                           exact_zero(c, K_, std::vector<ESeries>{r.commutes}, enc_functions<ExpPolyFunction>);
                       });
        }
    }

    void inner()
    {
        for (const auto &b : s_.betas) {
            run_.check("inner[beta=" + label(b) + "]", "exp(beta delta_X) f = Exp(beta H)*f*Exp(-beta H)",
                       {{"beta", enc(b)}, {"probes", probes_.size()}}, [&](CheckRecord &c) {
                           std::vector<ESeries> res;
                           for (const auto &f : probes_) {
                               res.push_back(check_inner(ctx_, X_, b, obs(f)));
                           }
                           exact_zero(c, K_, res, enc_functions<ExpPolyFunction>);
                       });
        }
    }

    void trace()
    {
        const auto tr = trace_functional(ctx_);
        run_.check("trace.commutators", "tr(f*g - g*f) = 0", {{"pairs", pairs()}}, [&](CheckRecord &c) {
            std::vector<FunctionalValue> res;
            for (std::size_t i = 0; i < pairs(); ++i) {
                res.push_back(trace_residual(ctx_, tr, obs(first(i)), obs(second(i))));
            }
            exact_zero_values(c, K_, res);
        });
        run_.check("trace.gaussian", "tr(exp(-H0)) = (2 pi)^n", {{"n", n_}}, [&](CheckRecord &c) {
            FunctionalValue v = tr(obs(ExpPolyFunction::gaussian(n_, Rational(-1))));
            c.data["value"] = enc(v);
            v.series = v.series - ScalarSeries<GaussRational>::constant(GaussRational(rational_pow(Rational(2), static_cast<unsigned>(n_))), K_);
            exact_zero_values(c, K_, {v});
            c.passed = c.passed && v.pi_power == static_cast<int>(n_);
        });
    }

    void kms_static()
    {
        for (const auto &b : s_.betas) {
            run_.check("kms_static[beta=" + label(b) + "]", "mu(f*g) = mu(g * A_{i lambda beta} f), mu = tr(Exp(-beta H)*.)",
                       {{"beta", enc(b)}, {"pairs", pairs()}}, [&](CheckRecord &c) {
                           const auto mu = kms_construct(ctx_, H_, b);
                           std::vector<FunctionalValue> res;
                           for (std::size_t i = 0; i < pairs(); ++i) {
                               res.push_back(static_kms_residual(ctx_, mu, X_, b, obs(first(i)), obs(second(i))));
                           }
                           exact_zero_values(c, K_, res);
                       });
        }
        const auto tr = trace_functional(ctx_);
        run_.check("kms_static.beta_zero", "at beta = 0 the KMS condition is the trace condition", {{"pairs", pairs()}},
                   [&](CheckRecord &c) {
                       std::vector<FunctionalValue> res;
                       for (std::size_t i = 0; i < pairs(); ++i) {
                           FunctionalValue a = static_kms_residual(ctx_, tr, X_, Rational(0), obs(first(i)), obs(second(i)));
                           a.series = a.series - trace_residual(ctx_, tr, obs(first(i)), obs(second(i))).series;
                           res.push_back(a);
                       }
                       exact_zero_values(c, K_, res);
                   });
        const Rational b = max_beta();
        run_.check("kms_static.negative_control", "tr is not KMS at beta != 0 (q e^{-H0/2}, p e^{-H0/2})",
                   {{"beta", enc(b)}}, [&](CheckRecord &c) {
                       const auto [f, g] = control_pair(make_rational(-1, 2));
                       const FunctionalValue v = static_kms_residual(ctx_, tr, X_, b, f, g);
                       c.kind = "nonzero";
                       c.tolerance = "0";
                       c.residual = enc(v);
                       c.passed = !v.series.is_zero_series();
                   });
    }

    void kms_dynamic()
    {
        for (const auto &b : s_.betas) {
            for (const auto &t : s_.times) {
                run_.check("kms_dynamic[beta=" + label(b) + ",t=" + label(t) + "]",
                           "mu(A_t f * g) = mu(g * A_{t + i lambda beta} f)",
                           {{"beta", enc(b)}, {"t", enc(t)}, {"pairs", pairs()}}, [&](CheckRecord &c) {
                               const auto mu = kms_construct(ctx_, H_, b);
                               std::vector<FunctionalValue> res;
                               for (std::size_t i = 0; i < pairs(); ++i) {
                                   res.push_back(dynamic_kms_residual(ctx_, mu, X_, t.get_d(), b, obs(first(i)),
                                                                      obs(second(i))));
                               }
                               exact_zero_values(c, K_, res);
                               c.data["effective_t"] = QuadraticFlow(H_, t.get_d()).effective_time();
                           });
            }
        }
        const Rational b = max_beta();
        run_.check("kms_dynamic.negative_control", "tr fails the dynamic condition at beta != 0", {{"beta", enc(b)}, {"t", "1/1"}},
                   [&](CheckRecord &c) {
                       const auto [f, g] = control_pair(make_rational(-1, 2));
                       const FunctionalValue v = dynamic_kms_residual(ctx_, trace_functional(ctx_), X_, 1.0, b, f, g);
                       c.kind = "nonzero";
                       c.tolerance = "0";
                       c.residual = enc(v);
                       c.passed = !v.series.is_zero_series();
                   });
    }

    void kms_classical()
    {
        for (const auto &b : s_.betas) {
            run_.check("kms_classical[beta=" + label(b) + "]", "mu0({f,g} - beta g L_X f) = 0 for mu0 = e^{-beta H} Omega",
                       {{"beta", enc(b)}, {"pairs", pairs()}}, [&](CheckRecord &c) {
                           const ExpPolyFunction rho = ExpPolyFunction::term(PolyFunction::constant(n_, GaussRational(1)),
                                                                             H_ * GaussRational(-b));
                           c.kind = "exact_zero";
                           c.tolerance = "0";
                           c.passed = true;
                           c.residual = enc(GaussRational(0));
                           for (std::size_t i = 0; i < pairs(); ++i) {
                               const auto r = classical_kms_residual(rho, X_, b, first(i), second(i));
                               if (!r.value.is_zero()) {
                                   c.passed = false;
                                   c.residual = enc(r);
                                   break;
                               }
                               for (const auto &t : s_.times) {
                                   const auto rt = classical_dynamic_kms_residual(rho, X_, t.get_d(), b, first(i), second(i));
                                   if (!rt.value.is_zero()) {
                                       c.passed = false;
                                       c.residual = enc(rt);
                                       break;
                                   }
                               }
                           }
                           c.data["times"] = s_.times.size();
                       });
        }
        run_.check("kms_classical.beta_zero", "brackets integrate to zero", {{"pairs", pairs()}}, [&](CheckRecord &c) {
            c.kind = "exact_zero";
            c.tolerance = "0";
            c.passed = true;
            c.residual = enc(GaussRational(0));
            const ExpPolyFunction one = ExpPolyFunction::constant(n_, GaussRational(1));
            for (std::size_t i = 0; i < pairs(); ++i) {
                const auto r = classical_kms_residual(one, X_, Rational(0), first(i), second(i));
                if (!r.value.is_zero()) {
                    c.passed = false;
                    c.residual = enc(r);
                }
            }
        });
    }

    void tilde()
    {
        const auto tr = trace_functional(ctx_);
        for (const auto &b : s_.betas) {
            run_.check("tilde[beta=" + label(b) + "]", "mu(Exp(beta H)*.) is the trace for the KMS state mu",
                       {{"beta", enc(b)}, {"pairs", pairs()}}, [&](CheckRecord &c) {
                           const auto mt = tilde_transform(ctx_, kms_construct(ctx_, H_, b), H_, b);
                           std::vector<FunctionalValue> res;
                           for (std::size_t i = 0; i < pairs(); ++i) {
                               FunctionalValue v = mt(obs(first(i)));
                               v.series = v.series - tr(obs(first(i))).series;
                               res.push_back(v);
                               res.push_back(trace_residual(ctx_, mt, obs(first(i)), obs(second(i))));
                           }
                           exact_zero_values(c, K_, res);
                       });
            run_.check("tilde.classical[beta=" + label(b) + "]", "e^{beta H} e^{-beta H} = 1", {{"beta", enc(b)}},
                       [&](CheckRecord &c) {
                           const ExpPolyFunction rho = ExpPolyFunction::term(PolyFunction::constant(n_, GaussRational(1)),
                                                                             H_ * GaussRational(-b));
                           const ExpPolyFunction diff = tilde_transform_classical(rho, H_, b) -
                                                        ExpPolyFunction::constant(n_, GaussRational(1));
                           exact_zero(c, 0, std::vector<ESeries>{ESeries::constant(diff, 0)}, enc_functions<ExpPolyFunction>);
                       });
        }
        const Rational b = max_beta();
        run_.check("tilde.negative_control", "the transform of tr is not a trace at beta != 0", {{"beta", enc(b)}},
                   [&](CheckRecord &c) {
                       const auto [f, g] = control_pair(Rational(-1));
                       const FunctionalValue v = trace_residual(ctx_, tilde_transform(ctx_, tr, H_, b), f, g);
                       c.kind = "nonzero";
                       c.tolerance = "0";
                       c.residual = enc(v);
                       c.passed = !v.series.is_zero_series();
                   });
    }

    void positivity()
    {
        run_.check("positivity", "tr(conj(f)*f) positive in the ring ordering, tr real", {{"probes", probes_.size() + 1}},
                   [&](CheckRecord &c) {
                       const auto half = trace_functional(ctx_).scaled(
                           ScalarSeries<GaussRational>::constant(GaussRational(make_rational(1, 2)), K_));
                       const PolyFunction i = PolyFunction::constant(n_, GaussRational(Rational(0), Rational(1)));
                       std::vector<ESeries> obs_list = {
                           obs(weighted(PolyFunction::q(n_, 0) + i * PolyFunction::p(n_, 0), make_rational(-1, 2)))};
                       for (const auto &f : probes_) {
                           obs_list.push_back(obs(f));
                       }
                       const PositivityReport rep = realify_and_positivity(ctx_, half, obs_list);
                       c.kind = "sign";
                       c.tolerance = "0";
                       c.passed = rep.real && rep.all_positive && rep.gelfand_trivial;
                       c.residual = enc(rep.probes.front().value);
                       ojson signs = ojson::array();
                       for (const auto &p : rep.probes) {
                           signs.push_back(to_string(p.sign));
                       }
                       c.data = {{"signs", signs},
                                 {"flipped", rep.flipped},
                                 {"real", rep.real},
                                 {"gelfand_trivial", rep.gelfand_trivial}};
                   });
    }

    void evolution()
    {
        for (const auto &t : s_.times) {
            run_.check("evolution[t=" + label(t) + "]", "A_t is a real automorphism commuting with delta_X, A_t(1) = 1",
                       {{"t", enc(t)}, {"pairs", pairs()}}, [&](CheckRecord &c) {
                           const double td = t.get_d();
                           std::vector<ESeries> res;
                           const ESeries one = obs(ExpPolyFunction::constant(n_, GaussRational(1)));
                           res.push_back(evolve_At(ctx_, X_, td, one) - one);
                           for (std::size_t i = 0; i < pairs(); ++i) {
                               const ESeries f = obs(first(i)), g = obs(second(i));
                               res.push_back(evolve_At(ctx_, X_, td, star_product(ctx_, f, g)) -
                                             star_product(ctx_, evolve_At(ctx_, X_, td, f), evolve_At(ctx_, X_, td, g)));
                               res.push_back(evolve_At(ctx_, X_, td, delta_X(ctx_, X_, f)) -
                                             delta_X(ctx_, X_, evolve_At(ctx_, X_, td, f)));
                               res.push_back(conjugate_series(evolve_At(ctx_, X_, td, f)) -
                                             evolve_At(ctx_, X_, td, conjugate_series(f)));
                           }
                           exact_zero(c, K_, res, enc_functions<ExpPolyFunction>);
                           c.data["effective_t"] = QuadraticFlow(H_, td).effective_time();
                       });
        }
    }

    const Scenario &s_;
    Runner &run_;
    std::size_t n_;
    std::size_t K_;
    StarContext ctx_;
    PolyFunction H_;
    VectorField<ExpPolyFunction> X_;
    std::vector<ExpPolyFunction> probes_;
    std::vector<PolyFunction> polys_;
};

// ---------------------------------------------------------------------------
// T²

class TorusSuites
{
public:
    TorusSuites(const Scenario &s, Runner &run) : s_(s), run_(run), K_(s.truncation), ctx_(StarContext::torus(s.truncation))
    {
        if (!s.one_form.empty()) {
            alpha_.alpha1 = parse_trig(s.one_form[0]);
            alpha_.alpha2 = parse_trig(s.one_form[1]);
            exact_ = !alpha_.alpha1.count({0, 0}) && !alpha_.alpha2.count({0, 0});
            if (exact_) {
                // primitive: a mode c e^{ik·θ} of α₁ with k₁ ≠ 0 comes from c/(ik₁) e^{ik·θ}
                for (const auto &[k, c] : alpha_.alpha1) {
                    if (k.first != 0) {
                        H_[k] = c / GaussRational(Rational(0), Rational(k.first));
                    }
                }
                for (const auto &[k, c] : alpha_.alpha2) {
                    if (k.first == 0) {
                        H_[k] = c / GaussRational(Rational(0), Rational(k.second));
                    }
                }
            }
        } else {
            H_ = parse_trig(s.hamiltonian.empty() ? "cos(t1)" : s.hamiltonian);
            H_.erase({0, 0});
            alpha_ = TorusOneForm::exact(H_);
            exact_ = true;
        }
        if (!alpha_.is_closed()) {
            throw config_error("one_form is not closed");
        }
    }

    void run(const std::string &suite)
    {
        if (suite == "moyal") {
            moyal();
        } else if (suite == "kms_classical") {
            kms_classical();
        } else if (suite == "nullspace") {
            nullspace();
        } else if (suite == "recover_H") {
            recover();
        } else if (suite == "evolution") {
            evolution();
        }
    }

private:
    double H_at(double t1, double t2) const
    {
        Complex v = 0.0;
        for (const auto &[k, c] : H_) {
            v += c.to_complex() * std::polar(1.0, k.first * t1 + k.second * t2);
        }
        return v.real();
    }

    // Fourier coefficients of e^{−βH} by the periodic trapezoid rule.
    FourierFunction boltzmann(double beta, int band) const
    {
        const int M = 64;
        FourierFunction rho(band);
        std::vector<double> samples(M * M);
        for (int a = 0; a < M; ++a) {
            for (int b = 0; b < M; ++b) {
                samples[static_cast<std::size_t>(a * M + b)] = std::exp(-beta * H_at(2 * M_PI * a / M, 2 * M_PI * b / M));
            }
        }
        for (int k1 = -band; k1 <= band; ++k1) {
            for (int k2 = -band; k2 <= band; ++k2) {
                Complex acc = 0.0;
                for (int a = 0; a < M; ++a) {
                    for (int b = 0; b < M; ++b) {
                        acc += samples[static_cast<std::size_t>(a * M + b)] *
                               std::polar(1.0, -2 * M_PI * (k1 * a + k2 * b) / M);
                    }
                }
                rho.set_coefficient(k1, k2, acc / static_cast<double>(M * M));
            }
        }
        return rho;
    }

    void moyal()
    {
        run_.check("moyal.torus_associativity", "(f*g)*h = f*(g*h) on T2", {{"K", K_}}, [&](CheckRecord &c) {
            SplitMix64 rng(s_.probes.seed);
            const int band = 8;
            double worst = 0.0;
            for (int i = 0; i < 3; ++i) {
                const TSeries f = TSeries::constant(random_fourier(rng, band, 2), K_);
                const TSeries g = TSeries::constant(random_fourier(rng, band, 2), K_);
                const TSeries h = TSeries::constant(random_fourier(rng, band, 2), K_);
                const TSeries r = check_associativity(ctx_, f, g, h);
                for (const auto &x : r.coefficients()) {
                    worst = std::max(worst, x.max_abs());
                }
            }
            c.kind = "tolerance";
            c.tolerance = 1e-9;
            c.residual = worst;
            c.passed = worst <= 1e-9;
        });
    }

    void kms_classical()
    {
        for (const auto &b : s_.betas) {
            const double beta = b.get_d();
            if (!exact_ && sgn(b) != 0) {
                run_.check("kms_classical.torus_counterexample[beta=" + label(b) + "]",
                           "uniform density violates the classical KMS condition", {{"beta", enc(b)}},
                           [&](CheckRecord &c) {
                               const int band = std::max(2, alpha_.band() + 2);
                               const auto X = alpha_.to_vector_field(band);
                               // a mode moved by the constant part of X
                               const Mode k = sgn(alpha_.alpha2.count({0, 0}) ? alpha_.alpha2.at({0, 0}).re : Rational(0)) != 0
                                                  ? Mode{1, 0}
                                                  : Mode{0, 1};
                               const Complex r = classical_kms_residual(
                                   FourierFunction::constant(band, 1.0), X, beta,
                                   FourierFunction::mode(band, k.first, k.second),
                                   FourierFunction::mode(band, -k.first, -k.second));
                               c.kind = "nonzero";
                               c.tolerance = 1e-12;
                               c.residual = enc(r);
                               c.passed = std::abs(r) > 1e-12;
                           });
            } else {
                run_.check("kms_classical.torus[beta=" + label(b) + "]",
                           "e^{-beta H} satisfies the classical KMS condition on T2", {{"beta", enc(b)}},
                           [&](CheckRecord &c) {
                               const int band = s_.nullspace.n_mu + 4;
                               const auto X = alpha_.to_vector_field(band);
                               const FourierFunction rho = boltzmann(beta, s_.nullspace.n_mu);
                               const FourierFunction rho_wide = rho.with_band(band);
                               SplitMix64 rng(s_.probes.seed);
                               double worst = 0.0;
                               for (int i = 0; i < s_.probes.count; ++i) {
                                   const FourierFunction f = random_fourier(rng, band, 2);
                                   const FourierFunction g = random_fourier(rng, band, 2);
                                   worst = std::max(worst, std::abs(classical_kms_residual(rho_wide, X, beta, f, g)));
                               }
                               c.kind = "tolerance";
                               c.tolerance = 1e-9;
                               c.residual = worst;
                               c.passed = worst <= 1e-9;
                           });
            }
        }
    }

    NullspaceResult solve(const Rational &b, ConstraintSystem &cs) const
    {
        cs = assemble_constraints(s_.nullspace.n_test, s_.nullspace.n_mu, b, alpha_);
        return nullspace_dim(cs, s_.nullspace.rel_tol);
    }

    void nullspace()
    {
        for (const auto &b : s_.betas) {
            run_.check("nullspace[beta=" + label(b) + "]", "dimension of the classical KMS solution space",
                       {{"beta", enc(b)},
                        {"n_test", s_.nullspace.n_test},
                        {"n_mu", s_.nullspace.n_mu},
                        {"rel_tol", s_.nullspace.rel_tol},
                        {"exact_one_form", exact_}},
                       [&](CheckRecord &c) {
                           ConstraintSystem cs;
                           const NullspaceResult r = solve(b, cs);
                           const std::size_t expected = (sgn(b) == 0 || exact_) ? 1 : 0;
                           c.kind = "dimension";
                           c.tolerance = s_.nullspace.rel_tol;
                           c.residual = r.dimension;
                           c.passed = r.dimension == expected;
                           c.data["expected_dimension"] = expected;
                           c.data["rows"] = cs.rows().size();
                           c.data["columns"] = cs.columns().size();
                           c.data["gap_ratio"] = std::isinf(r.gap_ratio) ? ojson(nullptr) : ojson(r.gap_ratio);
                           c.data["spectrum"] = r.spectrum;
                           ojson vectors = ojson::array();
                           for (const auto &v : r.null_vectors) {
                               ojson entries = ojson::array();
                               for (std::size_t j = 0; j < v.size(); ++j) {
                                   const auto &[k1, k2] = cs.columns()[j];
                                   entries.push_back({k1, k2, v[j].real(), v[j].imag()});
                               }
                               vectors.push_back(std::move(entries));
                           }
                           c.data["null_vectors"] = std::move(vectors);
                           if (exact_ && sgn(b) != 0 && r.dimension == 1) {
                               const FourierFunction rho = boltzmann(b.get_d(), s_.nullspace.n_mu);
                               std::vector<Complex> oracle;
                               for (const auto &[j1, j2] : cs.columns()) {
                                   oracle.push_back(rho.coefficient(j1, j2));
                               }
                               const double angle = vector_angle(r.null_vectors[0], oracle);
                               c.data["angle_to_boltzmann"] = angle;
                               c.passed = c.passed && !std::isinf(r.gap_ratio) && r.gap_ratio >= s_.nullspace.gap_threshold &&
                                          angle < s_.nullspace.angle_tol;
                           }
                           if (!c.passed) {
                               c.note = "dimension " + std::to_string(r.dimension) + ", expected " +
                                        std::to_string(expected) +
                                        (exact_ ? " with gap and angle to e^{-beta H} within limits; try a larger n_mu"
                                                : "");
                           } else if (sgn(b) != 0) {
                               c.note = exact_ ? "consistent with a unique KMS density e^{-beta H}"
                                               : "consistent with nonexistence of KMS states for a non-exact one-form";
                           }
                       });
        }
    }

    void recover()
    {
        for (const auto &b : s_.betas) {
            if (sgn(b) == 0) {
                continue;
            }
            run_.check("recover_H[beta=" + label(b) + "]", "H = -(1/beta) log(null density)", {{"beta", enc(b)}},
                       [&](CheckRecord &c) {
                           ConstraintSystem cs;
                           const NullspaceResult r = solve(b, cs);
                           c.kind = "tolerance";
                           c.tolerance = 1e-6;
                           if (r.dimension == 0) {
                               c.residual = nullptr;
                               c.note = "no null density: Hamiltonian recovery inapplicable";
                               c.passed = !exact_;
                               return;
                           }
                           const int grid = 32;
                           const RecoveredHamiltonian rec = recover_H(density_from_vector(cs, r.null_vectors[0]), b.get_d(), grid);
                           c.note = rec.verdict;
                           if (!rec.ok) {
                               c.residual = nullptr;
                               c.passed = false;
                               return;
                           }
                           std::vector<double> diff;
                           double mean = 0.0;
                           for (int a = 0; a < grid; ++a) {
                               for (int k = 0; k < grid; ++k) {
                                   diff.push_back(rec.values[static_cast<std::size_t>(a * grid + k)] -
                                                  H_at(2 * M_PI * a / grid, 2 * M_PI * k / grid));
                                   mean += diff.back();
                               }
                           }
                           mean /= static_cast<double>(diff.size());
                           double sup = 0.0;
                           for (double d : diff) {
                               sup = std::max(sup, std::abs(d - mean));
                           }
                           c.residual = sup;
                           c.passed = exact_ && sup < 1e-6;
                           c.data["imag_residual"] = rec.imag_residual;
                       });
        }
    }

    void evolution()
    {
        const int band = std::max(8, 4 * alpha_.band() + 4);
        const auto X = alpha_.to_vector_field(band);
        for (const auto &t : s_.times) {
            if (sgn(t) == 0) {
                continue;
            }
            run_.check("evolution.torus[t=" + label(t) + "]", "Heisenberg equation residual of A_t",
                       {{"t", enc(t)}, {"band", band}}, [&](CheckRecord &c) {
                           SplitMix64 rng(s_.probes.seed);
                           const TSeries f = TSeries::constant(random_fourier(rng, band, 1), K_);
                           const TorusEvolution numeric = evolve_At_numeric(ctx_, X, t.get_d(), f);
                           c.kind = "tolerance";
                           c.tolerance = 1e-8;
                           c.residual = numeric.residual;
                           c.passed = numeric.residual <= 1e-8;
                           c.data["steps"] = numeric.steps;
                           c.data["step"] = numeric.step;
                           c.data["leakage"] = numeric.leakage;
                           const TorusEvolution ev = evolve_At(ctx_, X, t.get_d(), f);
                           if (ev.exact) {
                               double diff = 0.0;
                               for (std::size_t k = 0; k <= K_; ++k) {
                                   diff = std::max(diff, (ev.value[k] - numeric.value[k]).max_abs());
                               }
                               c.data["translation_vs_numeric"] = diff;
                               c.passed = c.passed && diff <= 1e-8;
                           }
                       });
        }
    }

    const Scenario &s_;
    Runner &run_;
    std::size_t K_;
    StarContext ctx_;
    TorusOneForm alpha_;
    TrigPoly H_;
    bool exact_ = false;
};

ojson describe(const Scenario &s)
{
    ojson betas = ojson::array(), times = ojson::array();
    for (const auto &b : s.betas) {
        betas.push_back(to_string(b));
    }
    for (const auto &t : s.times) {
        times.push_back(to_string(t));
    }
    ojson j;
    j["phase_space"] = s.space == PhaseSpace::euclidean ? "R2n" : "T2";
    j["dof"] = s.dof;
    j["truncation"] = s.truncation;
    j["hamiltonian"] = s.hamiltonian;
    j["one_form"] = s.one_form;
    j["beta"] = betas;
    j["t"] = times;
    j["probes"] = {{"count", s.probes.count},
                   {"degree", s.probes.degree},
                   {"weight", to_string(s.probes.weight)},
                   {"range", s.probes.range},
                   {"seed", s.probes.seed},
                   {"poly_count", s.probes.poly_count},
                   {"poly_degree", s.probes.poly_degree}};
    if (s.space == PhaseSpace::torus) {
        j["nullspace"] = {{"n_test", s.nullspace.n_test},
                          {"n_mu", s.nullspace.n_mu},
                          {"rel_tol", s.nullspace.rel_tol},
                          {"gap_threshold", s.nullspace.gap_threshold},
                          {"angle_tol", s.nullspace.angle_tol}};
    }
    j["suites"] = s.suites;
    return j;
}

} // namespace

std::string utc_timestamp()
{
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Report run_scenario(Scenario scenario, const RunOptions &opts)
{
    if (opts.truncation) {
        scenario.truncation = *opts.truncation;
    }
    if (opts.seed) {
        scenario.probes.seed = *opts.seed;
    }
    Report report;
    report.scenario = scenario.name;
    report.description = scenario.description;
    report.config = describe(scenario);
    report.timestamp = utc_timestamp();
    Runner run(report);
    if (scenario.suites.empty()) {
        return report;
    }
    // Setup problems (non-closed one-form, non-polynomial H, ...) are config errors;
    // everything after this point is recorded per check.
    auto setup = [&]<class Suites>(std::type_identity<Suites>) {
        try {
            return Suites(scenario, run);
        } catch (const config_error &) {
            throw;
        } catch (const std::exception &e) {
            throw config_error(scenario.name + ": " + e.what());
        }
    };
    if (scenario.space == PhaseSpace::euclidean) {
        EuclideanSuites suites = setup(std::type_identity<EuclideanSuites>{});
        for (const auto &s : scenario.suites) {
            suites.run(s);
        }
    } else {
        TorusSuites suites = setup(std::type_identity<TorusSuites>{});
        for (const auto &s : scenario.suites) {
            suites.run(s);
        }
    }
    return report;
}

} // namespace starkms
