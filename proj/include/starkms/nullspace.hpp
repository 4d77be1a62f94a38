#pragma once

// Finite Fourier-basis discretization of the classical static KMS condition on T²:
//
//   ∫ ρ ({f,g} − β g L_X f) Ω = 0   for f = e^{ik·θ}, g = e^{il·θ}, |k_i|, |l_i| <= N_test,
//
// with an unknown band-limited density ρ = Σ_{|j_i| <= N_μ} ρ_j e^{ij·θ}. Density
// modes that no term of any test integrand reaches are left out of the system. Each
// row is the coefficient vector of the integrand h = Σ_m h_m e^{im·θ} placed at
// column j = −m (the common factor 4π² is dropped). Matrix entries are exact
// Gaussian rationals; only the SVD runs in floating point.

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "starkms/fourier.hpp"
#include "starkms/scalar.hpp"
#include "starkms/vector_field.hpp"

namespace starkms
{

using Mode = std::pair<int, int>;

// Closed one-form α = α₁ dθ₁ + α₂ dθ₂ with finitely many exact Fourier modes.
struct TorusOneForm
{
    std::map<Mode, GaussRational> alpha1;
    std::map<Mode, GaussRational> alpha2;

    // α = dθ₂, i.e. X = ∂_θ₁ (and generally α = a dθ₁ + b dθ₂).
    static TorusOneForm constant(const Rational &a, const Rational &b);
    // α = dH for a trigonometric polynomial H given by its modes.
    static TorusOneForm exact(const std::map<Mode, GaussRational> &H);

    [[nodiscard]] bool is_closed() const;
    [[nodiscard]] TorusOneForm negated() const;
    [[nodiscard]] int band() const;
    [[nodiscard]] VectorField<FourierFunction> to_vector_field(int band) const;
};

struct ConstraintRow
{
    Mode f;
    Mode g;
    std::map<int, GaussRational> entries; // column index -> entry
};

class ConstraintSystem
{
public:
    [[nodiscard]] int n_test() const { return n_test_; }
    [[nodiscard]] int n_mu() const { return n_mu_; }
    [[nodiscard]] const Rational &beta() const { return beta_; }
    [[nodiscard]] const std::vector<ConstraintRow> &rows() const { return rows_; }
    // Density mode of each column (modes reachable from some test pair, |j_i| <= N_μ),
    // in the enumeration order j₁ then j₂ ascending.
    [[nodiscard]] const std::vector<Mode> &columns() const { return columns_; }
    // -1 for modes that are not columns.
    [[nodiscard]] int column_of(const Mode &j) const;

    friend ConstraintSystem assemble_constraints(int n_test, int n_mu, const Rational &beta, const TorusOneForm &alpha);

private:
    int n_test_ = 0;
    int n_mu_ = 0;
    Rational beta_;
    std::vector<ConstraintRow> rows_;
    std::vector<Mode> columns_;
    std::map<Mode, int> index_;
};

// Rows for all unordered pairs of distinct test modes, in a fixed order.
ConstraintSystem assemble_constraints(int n_test, int n_mu, const Rational &beta, const TorusOneForm &alpha);

struct NullspaceResult
{
    std::size_t dimension = 0;          // # σ < rel_tol·σ_max
    std::vector<double> spectrum;       // descending, one value per column
    double gap_ratio = 0.0;             // smallest retained / largest discarded (∞ if none discarded)
    std::vector<std::vector<Complex>> null_vectors; // density coefficients by column
    double rel_tol = 0.0;
};

// SVD of each connected block of the (block-diagonal) constraint matrix.
NullspaceResult nullspace_dim(const ConstraintSystem &cs, double rel_tol = 1e-8);

// Density from a null vector; phase normalised so that the mean is real positive.
FourierFunction density_from_vector(const ConstraintSystem &cs, const std::vector<Complex> &v);

struct RecoveredHamiltonian
{
    bool ok = false;
    std::string verdict;
    int grid = 0;
    std::vector<double> values; // H on the grid θ = 2π(a, b)/grid, row-major in a
    double imag_residual = 0.0; // max |Im ρ| / max |ρ| after phase normalisation
};

// H = −(1/β) log ρ sampled on a grid × grid lattice.
RecoveredHamiltonian recover_H(const FourierFunction &density, double beta, int grid = 64);

// Angle between two complex vectors (0 when parallel up to a phase).
double vector_angle(const std::vector<Complex> &a, const std::vector<Complex> &b);

void write_spectrum_csv(std::ostream &os, const NullspaceResult &r);
void write_null_vectors_csv(std::ostream &os, const ConstraintSystem &cs, const NullspaceResult &r);

} // namespace starkms
