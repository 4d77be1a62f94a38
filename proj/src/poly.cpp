#include "starkms/poly.hpp"

#include <numeric>
#include <sstream>

#include "starkms/errors.hpp"

namespace starkms
{

PolyFunction PolyFunction::constant(std::size_t n, const GaussRational &c)
{
    PolyFunction f(n);
    f.add_term(Exponent(2 * n, 0), c);
    return f;
}

PolyFunction PolyFunction::variable(std::size_t n, std::size_t axis)
{
    if (axis >= 2 * n) {
        throw precondition_error("variable axis out of range");
    }
    Exponent e(2 * n, 0);
    e[axis] = 1;
    return monomial(n, std::move(e), GaussRational(1));
}

PolyFunction PolyFunction::monomial(std::size_t n, Exponent e, const GaussRational &c)
{
    if (e.size() != 2 * n) {
        throw precondition_error("exponent vector has the wrong length");
    }
    for (int k : e) {
        if (k < 0) {
            throw precondition_error("negative exponent");
        }
    }
    PolyFunction f(n);
    f.add_term(e, c);
    return f;
}

PolyFunction PolyFunction::reference_quadratic(std::size_t n)
{
    PolyFunction h(n);
    const GaussRational half(make_rational(1, 2));
    for (std::size_t a = 0; a < 2 * n; ++a) {
        Exponent e(2 * n, 0);
        e[a] = 2;
        h.add_term(e, half);
    }
    return h;
}

bool PolyFunction::is_real() const
{
    for (const auto &[e, c] : terms_) {
        if (!c.is_real()) {
            return false;
        }
    }
    return true;
}

int PolyFunction::degree() const
{
    int d = -1;
    for (const auto &[e, c] : terms_) {
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    }
    return d;
}

GaussRational PolyFunction::coefficient(const Exponent &e) const
{
    const auto it = terms_.find(e);
    return it == terms_.end() ? GaussRational() : it->second;
}

GaussRational PolyFunction::constant_term() const
{
    return coefficient(Exponent(2 * n_, 0));
}

void PolyFunction::add_term(const Exponent &e, const GaussRational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

PolyFunction PolyFunction::derivative(std::size_t axis) const
{
    if (axis >= 2 * n_) {
        throw precondition_error("derivative axis out of range");
    }
    PolyFunction out(n_);
    for (const auto &[e, c] : terms_) {
        if (e[axis] == 0) {
            continue;
        }
        Exponent d = e;
        d[axis] -= 1;
        out.terms_.emplace_hint(out.terms_.end(), std::move(d), c * GaussRational(e[axis]));
    }
    return out;
}

PolyFunction PolyFunction::conj() const
{
    PolyFunction out(n_);
    for (const auto &[e, c] : terms_) {
        out.terms_.emplace_hint(out.terms_.end(), e, c.conj());
    }
    return out;
}

PolyFunction PolyFunction::substitute(const std::vector<PolyFunction> &images) const
{
    if (images.size() != 2 * n_) {
        throw precondition_error("substitute: need one image per phase-space axis");
    }
    for (const auto &img : images) {
        check_compatible(img);
    }
    // powers[a][k] = images[a]^k, grown on demand.
    std::vector<std::vector<PolyFunction>> powers(2 * n_);
    for (std::size_t a = 0; a < 2 * n_; ++a) {
        powers[a].push_back(constant(n_, GaussRational(1)));
    }
    PolyFunction out(n_);
    for (const auto &[e, c] : terms_) {
        PolyFunction term = constant(n_, c);
        for (std::size_t a = 0; a < 2 * n_; ++a) {
            auto &pw = powers[a];
            while (static_cast<int>(pw.size()) <= e[a]) {
                pw.push_back(pw.back() * images[a]);
            }
            if (e[a] > 0) {
                term = term * pw[static_cast<std::size_t>(e[a])];
            }
        }
        out += term;
    }
    return out;
}

Complex PolyFunction::evaluate(const std::vector<double> &x) const
{
    if (x.size() != 2 * n_) {
        throw precondition_error("evaluate: wrong number of coordinates");
    }
    Complex acc = 0.0;
    for (const auto &[e, c] : terms_) {
        double m = 1.0;
        for (std::size_t a = 0; a < e.size(); ++a) {
            for (int k = 0; k < e[a]; ++k) {
                m *= x[a];
            }
        }
        acc += c.to_complex() * m;
    }
    return acc;
}

GaussRational PolyFunction::evaluate_exact(const std::vector<Rational> &x) const
{
    if (x.size() != 2 * n_) {
        throw precondition_error("evaluate: wrong number of coordinates");
    }
    GaussRational acc;
    for (const auto &[e, c] : terms_) {
        Rational m(1);
        for (std::size_t a = 0; a < e.size(); ++a) {
            m *= rational_pow(x[a], static_cast<unsigned>(e[a]));
        }
        acc += c * GaussRational(m);
    }
    return acc;
}

void PolyFunction::check_compatible(const PolyFunction &o) const
{
    if (n_ != o.n_) {
        throw context_mismatch("polynomials live on phase spaces of different dimension");
    }
}

PolyFunction &PolyFunction::operator+=(const PolyFunction &o)
{
    check_compatible(o);
    for (const auto &[e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

PolyFunction &PolyFunction::operator-=(const PolyFunction &o)
{
    check_compatible(o);
    for (const auto &[e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

PolyFunction &PolyFunction::operator*=(const GaussRational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, v] : terms_) {
        v *= c;
    }
    return *this;
}

PolyFunction operator*(const PolyFunction &a, const PolyFunction &b)
{
    a.check_compatible(b);
    PolyFunction out(a.n_);
    Exponent e(2 * a.n_);
    for (const auto &[ea, ca] : a.terms_) {
        for (const auto &[eb, cb] : b.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) {
                e[k] = ea[k] + eb[k];
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

PolyFunction operator-(const PolyFunction &a)
{
    PolyFunction out(a.n_);
    for (const auto &[e, c] : a.terms_) {
        out.terms_.emplace_hint(out.terms_.end(), e, -c);
    }
    return out;
}

std::string PolyFunction::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream ss;
    bool first = true;
    for (const auto &[e, c] : terms_) {
        if (!first) {
            ss << " + ";
        }
        first = false;
        ss << starkms::to_string(c);
        for (std::size_t a = 0; a < e.size(); ++a) {
            if (e[a] == 0) {
                continue;
            }
            ss << "*" << (a < n_ ? "q" : "p") << (a % n_) + 1;
            if (e[a] > 1) {
                ss << "^" << e[a];
            }
        }
    }
    return ss.str();
}

} // namespace starkms
