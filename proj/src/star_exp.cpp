#include <map>

#include "starkms/dynamics.hpp"

namespace starkms
{

namespace
{

// Polynomial in the auxiliary variable s with PolyFunction coefficients.
using SPoly = std::vector<PolyFunction>;

SPoly add(SPoly a, const SPoly &b)
{
    if (a.size() < b.size()) {
        a.resize(b.size(), PolyFunction(b.front().dof()));
    }
    for (std::size_t m = 0; m < b.size(); ++m) {
        a[m] += b[m];
    }
    return a;
}

bool is_zero(const SPoly &a)
{
    for (const auto &c : a) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

// Memoized D^m G where D_a G = ∂_a G + s·(∂_a H)·G represents e^{−sH} ∂_a (e^{sH} G).
class TwistedDerivatives
{
public:
    TwistedDerivatives(const SPoly &g, const std::vector<PolyFunction> &dH) : dH_(dH)
    {
        cache_.emplace(Exponent(dH.size(), 0), g);
    }

    const SPoly &get(const Exponent &m)
    {
        if (auto it = cache_.find(m); it != cache_.end()) {
            return it->second;
        }
        for (std::size_t a = 0; a < m.size(); ++a) {
            if (m[a] > 0) {
                Exponent lower = m;
                lower[a] -= 1;
                const SPoly base = get(lower);
                const std::size_t n = dH_[a].dof();
                SPoly out(base.size() + 1, PolyFunction(n));
                for (std::size_t k = 0; k < base.size(); ++k) {
                    out[k] += base[k].derivative(a);
                    out[k + 1] += dH_[a] * base[k];
                }
                while (out.size() > 1 && out.back().is_zero()) {
                    out.pop_back();
                }
                return cache_.emplace(m, std::move(out)).first->second;
            }
        }
        return cache_.begin()->second;
    }

private:
    const std::vector<PolyFunction> &dH_;
    std::map<Exponent, SPoly> cache_;
};

} // namespace

StarExponential::StarExponential(PolyFunction H, Rational beta, std::vector<std::vector<PolyFunction>> g)
    : H_(std::move(H)), beta_(std::move(beta)), g_(std::move(g))
{
}

PolyFunction StarExponential::correction(std::size_t k) const
{
    const auto &coeffs = g_.at(k);
    PolyFunction out(H_.dof());
    Rational power(1);
    for (const auto &c : coeffs) {
        out += c * GaussRational(power);
        power *= beta_;
    }
    return out;
}

FormalSeries<ExpPolyFunction> StarExponential::series() const
{
    const PolyFunction exponent = H_ * GaussRational(beta_);
    std::vector<ExpPolyFunction> v;
    for (std::size_t k = 0; k < g_.size(); ++k) {
        v.push_back(ExpPolyFunction::term(correction(k), exponent));
    }
    return FormalSeries<ExpPolyFunction>(std::move(v));
}

StarExponential star_exp(const StarContext &ctx, const PolyFunction &H, const Rational &beta)
{
    ctx.check_compatible(H);
    if (ctx.phase_space() != PhaseSpace::euclidean) {
        throw unsupported_error("star exponential is implemented on R^{2n} only");
    }
    const std::size_t n = H.dof();
    const std::size_t K = ctx.truncation();
    std::vector<PolyFunction> dH;
    for (std::size_t a = 0; a < 2 * n; ++a) {
        dH.push_back(H.derivative(a));
    }
    DerivativeCache<PolyFunction> Hd(H);

    std::vector<SPoly> g;
    g.push_back(SPoly{PolyFunction::constant(n, GaussRational(1))});
    for (std::size_t k = 1; k <= K; ++k) {
        SPoly integrand{PolyFunction(n)};
        for (std::size_t r = 1; r <= k; ++r) {
            const SPoly &prev = g[k - r];
            if (is_zero(prev)) {
                continue;
            }
            TwistedDerivatives Dg(prev, dH);
            for (const auto &term : ctx.bidiff_terms(r)) {
                const PolyFunction &left = Hd.get(term.left);
                if (left.is_zero()) {
                    continue;
                }
                const SPoly &right = Dg.get(term.right);
                SPoly contrib;
                for (const auto &c : right) {
                    contrib.push_back(left * c * term.coeff);
                }
                integrand = add(std::move(integrand), contrib);
            }
        }
        // ∫_0^β s^m ds = β^{m+1}/(m+1)
        SPoly gk(integrand.size() + 1, PolyFunction(n));
        for (std::size_t m = 0; m < integrand.size(); ++m) {
            gk[m + 1] = integrand[m] * GaussRational(make_rational(1, static_cast<long>(m + 1)));
        }
        while (gk.size() > 1 && gk.back().is_zero()) {
            gk.pop_back();
        }
        g.push_back(std::move(gk));
    }
    return StarExponential(H, beta, std::move(g));
}

StarExponential star_exp(const StarContext &ctx, const ExpPolyFunction &H, const Rational &beta)
{
    if (!H.is_polynomial()) {
        throw unsupported_error("star exponential needs a polynomial Hamiltonian, got " + H.to_string());
    }
    return star_exp(ctx, H.as_polynomial(), beta);
}

ExpLawResiduals check_exp_laws(const StarContext &ctx, const PolyFunction &H, const Rational &beta,
                               const Rational &beta_prime)
{
    const auto a = star_exp(ctx, H, beta).series();
    const auto b = star_exp(ctx, H, beta_prime).series();
    const auto ab = star_exp(ctx, H, beta + beta_prime).series();
    const auto Hs = FormalSeries<ExpPolyFunction>::constant(ExpPolyFunction(H), ctx.truncation());
    return {star_product(ctx, a, b) - ab, star_product(ctx, a, Hs) - star_product(ctx, Hs, a)};
}

FormalSeries<ExpPolyFunction> check_inner(const StarContext &ctx, const VectorField<ExpPolyFunction> &X,
                                          const Rational &beta, const FormalSeries<ExpPolyFunction> &f)
{
    if (!X.is_hamiltonian()) {
        throw unsupported_error("inner-automorphism identity applies to Hamiltonian vector fields only");
    }
    const auto plus = star_exp(ctx, X.hamiltonian(), beta).series();
    const auto minus = star_exp(ctx, X.hamiltonian(), Rational(-beta)).series();
    const auto lhs = exp_delta_X(ctx, X, GaussRational(beta), f);
    return lhs - star_product(ctx, star_product(ctx, plus, f), minus);
}

} // namespace starkms
