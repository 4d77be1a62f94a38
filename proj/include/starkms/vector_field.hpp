#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "starkms/errors.hpp"
#include "starkms/exppoly.hpp"
#include "starkms/fourier.hpp"
#include "starkms/poly.hpp"

namespace starkms
{

// Numerical zero for the closedness check: exact backends compare to literal
// zero, the Fourier backend to a small absolute threshold.
inline bool negligible(const PolyFunction &f) { return f.is_zero(); }
inline bool negligible(const ExpPolyFunction &f) { return f.is_zero(); }
inline bool negligible(const FourierFunction &f, double tol = 1e-12) { return f.max_abs() <= tol; }

// Symplectic vector field X, given either by a Hamiltonian H (i_Xω = dH) or by
// a closed one-form α = i_Xω with components (α_{q_1}..α_{q_n}, α_{p_1}..α_{p_n}).
//
// Conventions: ω = Σ dq_i∧dp_i, so X^{q_i} = α_{p_i}, X^{p_i} = −α_{q_i} and
// L_X f = {f, H} in the Hamiltonian case.
template <class F>
class VectorField
{
public:
    enum class Kind
    {
        hamiltonian,
        closed_one_form
    };

    static VectorField from_hamiltonian(F H)
    {
        VectorField X;
        X.kind_ = Kind::hamiltonian;
        for (std::size_t a = 0; a < 2 * H.dof(); ++a) {
            X.alpha_.push_back(H.derivative(a));
        }
        X.hamiltonian_ = std::move(H);
        return X;
    }

    static VectorField from_one_form(std::vector<F> alpha)
    {
        if (alpha.empty() || alpha.size() != 2 * alpha.front().dof()) {
            throw precondition_error("one-form needs one component per phase-space axis");
        }
        for (const auto &c : alpha) {
            alpha.front().check_compatible(c);
        }
        VectorField X;
        X.kind_ = Kind::closed_one_form;
        X.alpha_ = std::move(alpha);
        X.hamiltonian_ = X.alpha_.front().zero_like();
        return X;
    }

    [[nodiscard]] Kind kind() const { return kind_; }
    [[nodiscard]] bool is_hamiltonian() const { return kind_ == Kind::hamiltonian; }
    [[nodiscard]] const F &hamiltonian() const
    {
        if (kind_ != Kind::hamiltonian) {
            throw precondition_error("vector field has no global Hamiltonian");
        }
        return hamiltonian_;
    }
    [[nodiscard]] const std::vector<F> &one_form() const { return alpha_; }
    [[nodiscard]] std::size_t dof() const { return alpha_.front().dof(); }

    // ∂_a α_b = ∂_b α_a for all axis pairs.
    [[nodiscard]] bool is_closed() const
    {
        for (std::size_t a = 0; a < alpha_.size(); ++a) {
            for (std::size_t b = a + 1; b < alpha_.size(); ++b) {
                if (!negligible(alpha_[b].derivative(a) - alpha_[a].derivative(b))) {
                    return false;
                }
            }
        }
        return true;
    }

    void require_closed() const
    {
        if (!is_closed()) {
            throw precondition_error("one-form is not closed: the vector field is not symplectic");
        }
    }

    // Component X^a of the vector field.
    [[nodiscard]] F component(std::size_t axis) const
    {
        const std::size_t n = dof();
        return axis < n ? alpha_[axis + n] : -alpha_[axis - n];
    }

    [[nodiscard]] F lie_derivative(const F &f) const
    {
        alpha_.front().check_compatible(f);
        if (kind_ == Kind::hamiltonian) {
            return poisson_bracket(f, hamiltonian_);
        }
        F out = f.zero_like();
        for (std::size_t a = 0; a < alpha_.size(); ++a) {
            out = out + component(a) * f.derivative(a);
        }
        return out;
    }

    // ∂^m H_loc for |m| >= 1, assembled from α alone (dH_loc = α).
    [[nodiscard]] F hamiltonian_derivative(const Exponent &m) const
    {
        for (std::size_t a = 0; a < m.size(); ++a) {
            if (m[a] > 0) {
                F out = alpha_[a];
                for (std::size_t b = 0; b < m.size(); ++b) {
                    const int times = m[b] - (b == a ? 1 : 0);
                    for (int k = 0; k < times; ++k) {
                        out = out.derivative(b);
                    }
                }
                return out;
            }
        }
        throw precondition_error("the Hamiltonian itself is only defined up to a constant");
    }

    [[nodiscard]] VectorField negated() const
    {
        if (kind_ == Kind::hamiltonian) {
            return from_hamiltonian(-hamiltonian_);
        }
        std::vector<F> a;
        for (const auto &c : alpha_) {
            a.push_back(-c);
        }
        return from_one_form(std::move(a));
    }

private:
    VectorField() = default;

    Kind kind_ = Kind::closed_one_form;
    F hamiltonian_;
    std::vector<F> alpha_;
};

} // namespace starkms
