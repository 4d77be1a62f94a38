#include <cmath>

#include "starkms/dynamics.hpp"

namespace starkms
{

namespace
{

using State = std::vector<FourierFunction>;

bool constant_form(const VectorField<FourierFunction> &X)
{
    for (const auto &c : X.one_form()) {
        if (!(c - FourierFunction::constant(c.band(), c.coefficient(0, 0))).is_zero()) {
            return false;
        }
    }
    return true;
}

// d/dt f = (i/λ) δ_X f, truncated at order K.
class HeisenbergRhs
{
public:
    HeisenbergRhs(const VectorField<FourierFunction> &X, std::size_t K) : X_(X), ctx_(StarContext::torus(K + 1)), K_(K)
    {
    }

    State operator()(const State &y)
    {
        const FourierFunction zero = y[0].zero_like();
        State out(K_ + 1, zero);
        auto left = [&](const Exponent &m) -> const FourierFunction & {
            auto it = h_.find(m);
            if (it == h_.end()) {
                it = h_.emplace(m, X_.hamiltonian_derivative(m)).first;
            }
            return it->second;
        };
        for (std::size_t j = 0; j <= K_; ++j) {
            if (y[j].is_zero()) {
                continue;
            }
            DerivativeCache<FourierFunction> dy(y[j]);
            // contributes to order k = j + r − 1
            for (std::size_t r = 1; j + r - 1 <= K_; r += 2) {
                const FourierFunction m = contract_bidiff(
                    ctx_, r, left, [&](const Exponent &e) -> const FourierFunction & { return dy.get(e); }, zero);
                out[j + r - 1] += m * Complex(0.0, 2.0);
            }
        }
        return out;
    }

private:
    const VectorField<FourierFunction> &X_;
    StarContext ctx_;
    std::size_t K_;
    std::map<Exponent, FourierFunction> h_;
};

State axpy(const State &y, const State &k, double h)
{
    State out = y;
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] += k[i] * Complex(h);
    }
    return out;
}

State rk4(HeisenbergRhs &rhs, State y, double t, std::size_t steps)
{
    const double h = t / static_cast<double>(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        const State k1 = rhs(y);
        const State k2 = rhs(axpy(y, k1, h / 2));
        const State k3 = rhs(axpy(y, k2, h / 2));
        const State k4 = rhs(axpy(y, k3, h));
        for (std::size_t i = 0; i < y.size(); ++i) {
            y[i] += (k1[i] + k2[i] * Complex(2.0) + k3[i] * Complex(2.0) + k4[i]) * Complex(h / 6);
        }
    }
    return y;
}

double max_diff(const State &a, const State &b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, (a[i] - b[i]).max_abs());
    }
    return m;
}

} // namespace

TorusEvolution evolve_At_numeric(const StarContext &ctx, const VectorField<FourierFunction> &X, double t,
                                 const FormalSeries<FourierFunction> &f, const TorusEvolutionOptions &opts)
{
    X.require_closed();
    const std::size_t K = std::min(ctx.truncation(), f.truncation());
    State y0(f.coefficients().begin(), f.coefficients().begin() + static_cast<std::ptrdiff_t>(K + 1));
    TorusEvolution out{FormalSeries<FourierFunction>(y0)};
    if (t == 0.0) {
        return out;
    }
    double scale = 1.0;
    for (const auto &c : y0) {
        scale = std::max(scale, c.max_abs());
    }
    HeisenbergRhs rhs(X, K);
    std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::abs(t) / opts.initial_step)));
    State coarse = rk4(rhs, y0, t, n);
    State fine = rk4(rhs, y0, t, 2 * n);
    double defect = max_diff(coarse, fine);
    while (defect > opts.relative_step_error * scale && 4 * n <= opts.max_steps) {
        n *= 2;
        coarse = std::move(fine);
        fine = rk4(rhs, y0, t, 2 * n);
        defect = max_diff(coarse, fine);
    }
    out.value = FormalSeries<FourierFunction>(fine);
    out.steps = 2 * n;
    out.step = t / static_cast<double>(2 * n);
    out.residual = defect;
    for (const auto &c : fine) {
        out.leakage += c.leakage();
    }
    return out;
}

TorusEvolution evolve_At(const StarContext &ctx, const VectorField<FourierFunction> &X, double t,
                         const FormalSeries<FourierFunction> &f, const TorusEvolutionOptions &opts)
{
    X.require_closed();
    if (!constant_form(X)) {
        return evolve_At_numeric(ctx, X, t, f, opts);
    }
    // α constant: δ_X = iλ{H_loc,·} exactly, A_t is the translation by tX.
    const double x1 = X.component(0).coefficient(0, 0).real();
    const double x2 = X.component(1).coefficient(0, 0).real();
    TorusEvolution out{f.map([&](const FourierFunction &c) { return c.translate(t * x1, t * x2); })};
    out.exact = true;
    return out;
}

TorusEvolution complexify_At(const StarContext &ctx, const VectorField<FourierFunction> &X, double t, double beta,
                             const FormalSeries<FourierFunction> &f, const TorusEvolutionOptions &opts)
{
    return evolve_At(ctx, X, t, exp_delta_X(ctx, X, Complex(-beta), f), opts);
}

} // namespace starkms
