#include <cmath>
#include <numeric>

#include "starkms/dynamics.hpp"

namespace starkms
{

namespace
{

using Matrix = std::vector<std::vector<Rational>>;

Matrix zeros(std::size_t d)
{
    return Matrix(d, std::vector<Rational>(d, Rational(0)));
}

Matrix mul(const Matrix &a, const Matrix &b)
{
    const std::size_t d = a.size();
    Matrix out = zeros(d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
            if (sgn(a[i][k]) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < d; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

std::vector<Rational> mat_vec(const Matrix &a, const std::vector<Rational> &x)
{
    std::vector<Rational> out(x.size(), Rational(0));
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            out[i] += a[i][j] * x[j];
        }
    }
    return out;
}

Rational real_coefficient(const PolyFunction &f, const Exponent &e)
{
    const GaussRational c = f.coefficient(e);
    if (!c.is_real()) {
        throw unsupported_error("exact flow needs a real Hamiltonian");
    }
    return c.re;
}

} // namespace

QuadraticFlow::QuadraticFlow(const PolyFunction &H, double t) : t_(t), t_eff_(t)
{
    if (H.degree() > 2) {
        throw unsupported_error("exact flow path supports Hamiltonians of degree <= 2, got degree " +
                                std::to_string(H.degree()));
    }
    const std::size_t n = H.dof();
    const std::size_t d = 2 * n;
    // Hessian Q and gradient at the origin b.
    Matrix Q = zeros(d);
    std::vector<Rational> b(d, Rational(0));
    for (std::size_t i = 0; i < d; ++i) {
        Exponent e(d, 0);
        e[i] = 1;
        b[i] = real_coefficient(H, e);
        for (std::size_t j = 0; j < d; ++j) {
            Exponent e2(d, 0);
            e2[i] += 1;
            e2[j] += 1;
            Q[i][j] = real_coefficient(H, e2) * (i == j ? 2 : 1);
        }
    }
    // ẋ = J∇H: q̇_i = ∂_{p_i}H, ṗ_i = −∂_{q_i}H.
    Matrix A = zeros(d);
    std::vector<Rational> v(d, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        A[i] = Q[n + i];
        v[i] = b[n + i];
        for (std::size_t j = 0; j < d; ++j) {
            A[n + i][j] = -Q[i][j];
        }
        v[n + i] = -b[i];
    }
    const Matrix A2 = mul(A, A);
    const Rational kappa = A2[0][0];
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (A2[i][j] != (i == j ? kappa : Rational(0))) {
                throw unsupported_error("exact flow path needs (J*Hess H)^2 proportional to the identity");
            }
        }
    }

    S_ = zeros(d);
    d_.assign(d, Rational(0));
    if (sgn(kappa) == 0) {
        // Nilpotent: φ_t(x) = (I + tA)x + (t I + t²/2 A) v, exact for rational t.
        const Rational tr = rational_approx(t);
        t_eff_ = tr.get_d();
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                S_[i][j] = (i == j ? Rational(1) : Rational(0)) + tr * A[i][j];
            }
        }
        const std::vector<Rational> Av = mat_vec(A, v);
        for (std::size_t i = 0; i < d; ++i) {
            d_[i] = tr * v[i] + tr * tr / 2 * Av[i];
        }
    } else {
        // Cayley transform S = (I − τA)^{-1}(I + τA) = ((1 + τ²κ)I + 2τA)/(1 − τ²κ),
        // exactly symplectic and commuting with A, about the fixed point x₀ = −Av/κ.
        const double k = kappa.get_d();
        double tau_d = 0.0;
        if (k < 0) {
            const double w = std::sqrt(-k);
            tau_d = std::tan(w * t / 2) / w;
        } else {
            const double s = std::sqrt(k);
            tau_d = std::tanh(s * t / 2) / s;
        }
        const Rational tau = rational_approx(tau_d);
        if (k < 0) {
            const double w = std::sqrt(-k);
            // atan returns the principal branch; the flow is periodic with period 2π/w
            const double period = 2 * M_PI / w;
            t_eff_ = 2 * std::atan(tau.get_d() * w) / w;
            t_eff_ += period * std::round((t - t_eff_) / period);
        } else {
            const double s = std::sqrt(k);
            t_eff_ = 2 * std::atanh(tau.get_d() * s) / s;
        }
        const Rational denom = 1 - tau * tau * kappa;
        if (sgn(denom) == 0) {
            throw unsupported_error("exact flow: Cayley parameter hits a singularity");
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                const Rational diag = i == j ? Rational(1 + tau * tau * kappa) : Rational(0);
                S_[i][j] = (diag + 2 * tau * A[i][j]) / denom;
            }
        }
        std::vector<Rational> x0 = mat_vec(A, v);
        for (auto &x : x0) {
            x = -x / kappa;
        }
        const std::vector<Rational> Sx0 = mat_vec(S_, x0);
        for (std::size_t i = 0; i < d; ++i) {
            d_[i] = x0[i] - Sx0[i];
        }
    }

    for (std::size_t i = 0; i < d; ++i) {
        PolyFunction img = PolyFunction::constant(n, GaussRational(d_[i]));
        for (std::size_t j = 0; j < d; ++j) {
            img += PolyFunction::variable(n, j) * GaussRational(S_[i][j]);
        }
        images_.push_back(std::move(img));
    }
}

PolyFunction primitive_of_closed_form(const std::vector<PolyFunction> &alpha)
{
    if (alpha.empty()) {
        throw precondition_error("empty one-form");
    }
    const std::size_t n = alpha.front().dof();
    // H(x) = ∫_0^1 α(sx)·x ds: monomial c·x^m in α_a contributes c·x^m·x_a/(|m|+1).
    PolyFunction H(n);
    for (std::size_t a = 0; a < alpha.size(); ++a) {
        for (const auto &[e, c] : alpha[a].terms()) {
            Exponent m = e;
            const int deg = std::accumulate(e.begin(), e.end(), 0);
            m[a] += 1;
            H.add_term(m, c * GaussRational(make_rational(1, deg + 1)));
        }
    }
    for (std::size_t a = 0; a < alpha.size(); ++a) {
        if (!(H.derivative(a) == alpha[a])) {
            throw precondition_error("one-form is not closed");
        }
    }
    return H;
}

namespace
{

PolyFunction flow_hamiltonian(const VectorField<ExpPolyFunction> &X)
{
    X.require_closed();
    if (X.is_hamiltonian()) {
        if (!X.hamiltonian().is_polynomial()) {
            throw unsupported_error("exact flow needs a polynomial Hamiltonian");
        }
        return X.hamiltonian().as_polynomial();
    }
    std::vector<PolyFunction> alpha;
    for (const auto &c : X.one_form()) {
        if (!c.is_polynomial()) {
            throw unsupported_error("exact flow needs a polynomial one-form");
        }
        alpha.push_back(c.as_polynomial());
    }
    return primitive_of_closed_form(alpha);
}

} // namespace

FormalSeries<ExpPolyFunction> evolve_At(const StarContext &ctx, const VectorField<ExpPolyFunction> &X, double t,
                                        const FormalSeries<ExpPolyFunction> &f)
{
    ctx.check_compatible(f[0]);
    if (t == 0.0) {
        return f;
    }
    const QuadraticFlow flow(flow_hamiltonian(X), t);
    return f.map([&](const ExpPolyFunction &c) { return flow.pullback(c); });
}

FormalSeries<ExpPolyFunction> complexify_At(const StarContext &ctx, const VectorField<ExpPolyFunction> &X, double t,
                                            const Rational &beta, const FormalSeries<ExpPolyFunction> &f)
{
    return evolve_At(ctx, X, t, exp_delta_X(ctx, X, GaussRational(-beta), f));
}

} // namespace starkms
