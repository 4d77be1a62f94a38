#include "starkms/moyal.hpp"

#include <stdexcept>

namespace starkms
{

namespace
{

using Bidiff = std::map<std::pair<Exponent, Exponent>, Rational>;

// Π as a bidifferential operator: Σ_i ∂_{q_i}⊗∂_{p_i} − ∂_{p_i}⊗∂_{q_i}.
Bidiff poisson_bivector(std::size_t n)
{
    Bidiff pi;
    for (std::size_t i = 0; i < n; ++i) {
        Exponent q(2 * n, 0), p(2 * n, 0);
        q[i] = 1;
        p[n + i] = 1;
        pi[{q, p}] += 1;
        pi[{p, q}] -= 1;
    }
    return pi;
}

Bidiff compose(const Bidiff &a, const Bidiff &b)
{
    Bidiff out;
    for (const auto &[ka, ca] : a) {
        for (const auto &[kb, cb] : b) {
            Exponent l = ka.first, r = ka.second;
            for (std::size_t x = 0; x < l.size(); ++x) {
                l[x] += kb.first[x];
                r[x] += kb.second[x];
            }
            out[{l, r}] += ca * cb;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

} // namespace

StarContext::StarContext(PhaseSpace space, std::size_t n, std::size_t truncation)
    : space_(space), n_(n), K_(truncation)
{
    if (n == 0) {
        throw precondition_error("phase space needs at least one degree of freedom");
    }
    if (space == PhaseSpace::torus && n != 1) {
        throw precondition_error("the torus phase space is two-dimensional (n = 1)");
    }
    const Bidiff pi = poisson_bivector(n);
    Bidiff power;
    power[{Exponent(2 * n, 0), Exponent(2 * n, 0)}] = 1;
    const GaussRational half_i(Rational(0), make_rational(1, 2));
    GaussRational prefactor(1); // (i/2)^r / r!
    for (std::size_t r = 0; r <= K_; ++r) {
        if (r > 0) {
            power = compose(power, pi);
            prefactor = prefactor * half_i / GaussRational(Rational(static_cast<long>(r)));
        }
        std::vector<BidiffTerm> terms;
        for (const auto &[key, c] : power) {
            terms.push_back({key.first, key.second, prefactor * GaussRational(c)});
        }
        table_.push_back(std::move(terms));
    }

    // M_1(f,g) − M_1(g,f) must be i{f,g}: the antisymmetrized r = 1 table is i·Π.
    if (K_ >= 1) {
        Bidiff anti;
        for (const auto &t : table_[1]) {
            if (sgn(t.coeff.re) != 0) {
                throw std::logic_error("M_1 coefficient is not purely imaginary");
            }
            anti[{t.left, t.right}] += t.coeff.im;
            anti[{t.right, t.left}] -= t.coeff.im;
        }
        for (auto it = anti.begin(); it != anti.end();) {
            it = sgn(it->second) == 0 ? anti.erase(it) : std::next(it);
        }
        if (anti != pi) {
            throw std::logic_error("star context violates M_1(f,g) - M_1(g,f) = i{f,g}");
        }
    }
}

const std::vector<BidiffTerm> &StarContext::bidiff_terms(std::size_t r) const
{
    if (r > K_) {
        throw truncation_bound_error("bidifferential order " + std::to_string(r) + " exceeds truncation order " +
                                     std::to_string(K_));
    }
    return table_[r];
}

} // namespace starkms
