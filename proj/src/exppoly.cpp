#include "starkms/exppoly.hpp"

#include <cmath>
#include <sstream>

#include "starkms/errors.hpp"

namespace starkms
{

ExpPolyFunction::ExpPolyFunction(const PolyFunction &p) : n_(p.dof())
{
    add_term(PolyFunction(n_), p);
}

ExpPolyFunction ExpPolyFunction::constant(std::size_t n, const GaussRational &c)
{
    return ExpPolyFunction(PolyFunction::constant(n, c));
}

ExpPolyFunction ExpPolyFunction::term(const PolyFunction &prefactor, const PolyFunction &exponent)
{
    prefactor.check_compatible(exponent);
    ExpPolyFunction f(prefactor.dof());
    f.add_term(exponent, prefactor);
    return f;
}

ExpPolyFunction ExpPolyFunction::gaussian(std::size_t n, const Rational &c)
{
    return term(PolyFunction::constant(n, GaussRational(1)),
                PolyFunction::reference_quadratic(n) * GaussRational(c));
}

bool ExpPolyFunction::is_polynomial() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

PolyFunction ExpPolyFunction::as_polynomial() const
{
    if (!is_polynomial()) {
        throw domain_error("exp-polynomial has a non-trivial exponential factor: " + to_string());
    }
    return terms_.empty() ? PolyFunction(n_) : terms_.begin()->second;
}

PolyFunction ExpPolyFunction::prefactor(const PolyFunction &exponent) const
{
    const auto it = terms_.find(exponent);
    return it == terms_.end() ? PolyFunction(n_) : it->second;
}

void ExpPolyFunction::add_term(const PolyFunction &exponent, const PolyFunction &prefactor)
{
    if (prefactor.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(exponent, prefactor);
    if (!inserted) {
        it->second += prefactor;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

ExpPolyFunction ExpPolyFunction::derivative(std::size_t axis) const
{
    // ∂(P e^E) = (∂P + P ∂E) e^E
    ExpPolyFunction out(n_);
    for (const auto &[e, p] : terms_) {
        out.add_term(e, p.derivative(axis) + p * e.derivative(axis));
    }
    return out;
}

ExpPolyFunction ExpPolyFunction::conj() const
{
    ExpPolyFunction out(n_);
    for (const auto &[e, p] : terms_) {
        out.add_term(e.conj(), p.conj());
    }
    return out;
}

ExpPolyFunction ExpPolyFunction::substitute(const std::vector<PolyFunction> &images) const
{
    ExpPolyFunction out(n_);
    for (const auto &[e, p] : terms_) {
        out.add_term(e.substitute(images), p.substitute(images));
    }
    return out;
}

Complex ExpPolyFunction::evaluate(const std::vector<double> &x) const
{
    Complex acc = 0.0;
    for (const auto &[e, p] : terms_) {
        acc += p.evaluate(x) * std::exp(e.evaluate(x));
    }
    return acc;
}

std::optional<Rational> ExpPolyFunction::gaussian_weight(const PolyFunction &exponent)
{
    const std::size_t n = exponent.dof();
    if (exponent.is_zero()) {
        return Rational(0);
    }
    if (exponent.terms().size() != 2 * n) {
        return std::nullopt;
    }
    Exponent e(2 * n, 0);
    e[0] = 2;
    const GaussRational half_c = exponent.coefficient(e);
    if (!half_c.is_real()) {
        return std::nullopt;
    }
    for (std::size_t a = 0; a < 2 * n; ++a) {
        Exponent ea(2 * n, 0);
        ea[a] = 2;
        if (!(exponent.coefficient(ea) == half_c)) {
            return std::nullopt;
        }
    }
    return Rational(half_c.re * 2);
}

bool ExpPolyFunction::integrable() const
{
    for (const auto &[e, p] : terms_) {
        const auto c = gaussian_weight(e);
        if (!c || sgn(*c) >= 0) {
            return false;
        }
    }
    return true;
}

Rational gaussian_moment_ratio(int m, const Rational &c)
{
    if (m % 2 != 0) {
        return Rational(0);
    }
    Rational out(1);
    for (int k = m - 1; k > 0; k -= 2) {
        out *= k;
    }
    return out * rational_pow(Rational(-1) / c, static_cast<unsigned>(m / 2));
}

PiScaled<GaussRational> ExpPolyFunction::integrate() const
{
    GaussRational total;
    for (const auto &[e, p] : terms_) {
        const auto c = gaussian_weight(e);
        if (!c || sgn(*c) >= 0) {
            throw domain_error("non-integrable term (" + p.to_string() + ")*exp(" + e.to_string() +
                               "): exponent must be c*H0 with c < 0");
        }
        // Each (q_i, p_i) pair contributes a factor 2π/(−c).
        const Rational pair_factor = Rational(2) / (-*c);
        const Rational norm = rational_pow(pair_factor, static_cast<unsigned>(n_));
        for (const auto &[mono, coeff] : p.terms()) {
            Rational m(1);
            for (int k : mono) {
                m *= gaussian_moment_ratio(k, *c);
                if (sgn(m) == 0) {
                    break;
                }
            }
            if (sgn(m) != 0) {
                total += coeff * GaussRational(m * norm);
            }
        }
    }
    return {total, static_cast<int>(n_)};
}

void ExpPolyFunction::check_compatible(const ExpPolyFunction &o) const
{
    if (n_ != o.n_) {
        throw context_mismatch("exp-polynomials live on phase spaces of different dimension");
    }
}

ExpPolyFunction &ExpPolyFunction::operator+=(const ExpPolyFunction &o)
{
    check_compatible(o);
    for (const auto &[e, p] : o.terms_) {
        add_term(e, p);
    }
    return *this;
}

ExpPolyFunction &ExpPolyFunction::operator-=(const ExpPolyFunction &o)
{
    check_compatible(o);
    for (const auto &[e, p] : o.terms_) {
        add_term(e, -p);
    }
    return *this;
}

ExpPolyFunction &ExpPolyFunction::operator*=(const GaussRational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, p] : terms_) {
        p *= c;
    }
    return *this;
}

ExpPolyFunction operator*(const ExpPolyFunction &a, const ExpPolyFunction &b)
{
    a.check_compatible(b);
    ExpPolyFunction out(a.n_);
    for (const auto &[ea, pa] : a.terms_) {
        for (const auto &[eb, pb] : b.terms_) {
            out.add_term(ea + eb, pa * pb);
        }
    }
    return out;
}

ExpPolyFunction operator-(const ExpPolyFunction &a)
{
    ExpPolyFunction out(a.n_);
    for (const auto &[e, p] : a.terms_) {
        out.terms_.emplace_hint(out.terms_.end(), e, -p);
    }
    return out;
}

std::string ExpPolyFunction::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream ss;
    bool first = true;
    for (const auto &[e, p] : terms_) {
        if (!first) {
            ss << " + ";
        }
        first = false;
        ss << "(" << p.to_string() << ")";
        if (!e.is_zero()) {
            ss << "*exp(" << e.to_string() << ")";
        }
    }
    return ss.str();
}

} // namespace starkms
