#include "starkms/nullspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "starkms/errors.hpp"

namespace starkms
{

namespace
{

void add(std::map<Mode, GaussRational> &m, const Mode &k, const GaussRational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = m.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            m.erase(it);
        }
    }
}

FourierFunction to_fourier(const std::map<Mode, GaussRational> &m, int band)
{
    FourierFunction f(band);
    for (const auto &[k, c] : m) {
        f.set_coefficient(k.first, k.second, c.to_complex());
    }
    return f;
}

} // namespace

TorusOneForm TorusOneForm::constant(const Rational &a, const Rational &b)
{
    TorusOneForm out;
    add(out.alpha1, {0, 0}, GaussRational(a));
    add(out.alpha2, {0, 0}, GaussRational(b));
    return out;
}

TorusOneForm TorusOneForm::exact(const std::map<Mode, GaussRational> &H)
{
    TorusOneForm out;
    for (const auto &[k, c] : H) {
        // ∂_a e^{ik·θ} = i k_a e^{ik·θ}
        add(out.alpha1, k, c * GaussRational(Rational(0), Rational(k.first)));
        add(out.alpha2, k, c * GaussRational(Rational(0), Rational(k.second)));
    }
    return out;
}

bool TorusOneForm::is_closed() const
{
    // ∂₁α₂ = ∂₂α₁ mode by mode: k₁ a₂(k) = k₂ a₁(k)
    std::map<Mode, GaussRational> diff;
    for (const auto &[k, c] : alpha2) {
        add(diff, k, c * GaussRational(Rational(k.first)));
    }
    for (const auto &[k, c] : alpha1) {
        add(diff, k, -(c * GaussRational(Rational(k.second))));
    }
    return diff.empty();
}

TorusOneForm TorusOneForm::negated() const
{
    TorusOneForm out;
    for (const auto &[k, c] : alpha1) {
        out.alpha1[k] = -c;
    }
    for (const auto &[k, c] : alpha2) {
        out.alpha2[k] = -c;
    }
    return out;
}

int TorusOneForm::band() const
{
    int b = 0;
    for (const auto *m : {&alpha1, &alpha2}) {
        for (const auto &[k, c] : *m) {
            b = std::max({b, std::abs(k.first), std::abs(k.second)});
        }
    }
    return b;
}

VectorField<FourierFunction> TorusOneForm::to_vector_field(int band) const
{
    return VectorField<FourierFunction>::from_one_form({to_fourier(alpha1, band), to_fourier(alpha2, band)});
}

int ConstraintSystem::column_of(const Mode &j) const
{
    const auto it = index_.find(j);
    return it == index_.end() ? -1 : it->second;
}

ConstraintSystem assemble_constraints(int n_test, int n_mu, const Rational &beta, const TorusOneForm &alpha)
{
    if (n_test < 0 || n_mu < 2 * n_test) {
        throw precondition_error("constraint system needs N_mu >= 2 N_test (got N_test = " + std::to_string(n_test) +
                                 ", N_mu = " + std::to_string(n_mu) + ")");
    }
    if (!alpha.is_closed()) {
        throw precondition_error("one-form is not closed: the vector field is not symplectic");
    }
    ConstraintSystem cs;
    cs.n_test_ = n_test;
    cs.n_mu_ = n_mu;
    cs.beta_ = beta;
    // X¹ = α₂, X² = −α₁
    std::map<Mode, GaussRational> X1 = alpha.alpha2, X2;
    for (const auto &[k, c] : alpha.alpha1) {
        X2[k] = -c;
    }
    std::vector<Mode> tests;
    for (int k1 = -n_test; k1 <= n_test; ++k1) {
        for (int k2 = -n_test; k2 <= n_test; ++k2) {
            tests.emplace_back(k1, k2);
        }
    }
    // Columns: density modes some test integrand can reach structurally (the bracket
    // term always, the transport term when β ≠ 0); other modes are invisible to
    // the test set.
    std::set<Mode> reachable;
    for (std::size_t a = 0; a < tests.size(); ++a) {
        for (std::size_t b = a + 1; b < tests.size(); ++b) {
            const Mode s{tests[a].first + tests[b].first, tests[a].second + tests[b].second};
            reachable.insert({-s.first, -s.second});
            if (sgn(beta) == 0) {
                continue;
            }
            for (const auto *X : {&X1, &X2}) {
                for (const auto &[m, c] : *X) {
                    reachable.insert({-s.first - m.first, -s.second - m.second});
                }
            }
        }
    }
    for (const Mode &j : reachable) {
        if (std::abs(j.first) <= n_mu && std::abs(j.second) <= n_mu) {
            cs.index_[j] = static_cast<int>(cs.columns_.size());
            cs.columns_.push_back(j);
        }
    }
    const GaussRational i_unit(Rational(0), Rational(1));
    for (std::size_t a = 0; a < tests.size(); ++a) {
        for (std::size_t b = a + 1; b < tests.size(); ++b) {
            const Mode k = tests[a], l = tests[b];
            std::map<Mode, GaussRational> h;
            // {e_k, e_l} = (ik₁)(il₂) − (ik₂)(il₁) = −(k₁l₂ − k₂l₁) e_{k+l}
            add(h, {k.first + l.first, k.second + l.second},
                GaussRational(Rational(-(k.first * l.second - k.second * l.first))));
            // −β e_l L_X e_k = −β Σ_m i(k₁X¹_m + k₂X²_m) e_{k+l+m}
            std::map<Mode, GaussRational> transport;
            for (const auto &[m, c] : X1) {
                add(transport, m, c * GaussRational(Rational(k.first)));
            }
            for (const auto &[m, c] : X2) {
                add(transport, m, c * GaussRational(Rational(k.second)));
            }
            for (const auto &[m, c] : transport) {
                add(h, {k.first + l.first + m.first, k.second + l.second + m.second},
                    -(GaussRational(beta) * i_unit * c));
            }
            ConstraintRow row{k, l, {}};
            for (const auto &[m, c] : h) {
                const int col = cs.column_of({-m.first, -m.second});
                if (col >= 0) {
                    row.entries[col] = c;
                }
            }
            cs.rows_.push_back(std::move(row));
        }
    }
    return cs;
}

NullspaceResult nullspace_dim(const ConstraintSystem &cs, double rel_tol)
{
    const std::size_t ncol = cs.columns().size();
    if (cs.rows().empty() || ncol == 0) {
        throw precondition_error("empty constraint system");
    }
    // Connected components of the column graph (columns sharing a row).
    std::vector<std::size_t> parent(ncol);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            x = parent[x] = parent[parent[x]];
        }
        return x;
    };
    for (const auto &row : cs.rows()) {
        if (row.entries.size() < 2) {
            continue;
        }
        const auto first = static_cast<std::size_t>(row.entries.begin()->first);
        for (const auto &[col, c] : row.entries) {
            parent[find(static_cast<std::size_t>(col))] = find(first);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> blocks;
    for (std::size_t c = 0; c < ncol; ++c) {
        blocks[find(c)].push_back(c);
    }
    std::map<std::size_t, std::vector<const ConstraintRow *>> block_rows;
    for (const auto &row : cs.rows()) {
        if (!row.entries.empty()) {
            block_rows[find(static_cast<std::size_t>(row.entries.begin()->first))].push_back(&row);
        }
    }

    struct BlockSvd
    {
        std::vector<std::size_t> cols;
        Eigen::VectorXd sigma; // padded with zeros to cols.size()
        Eigen::MatrixXcd V;
    };
    std::vector<BlockSvd> svds;
    double sigma_max = 0.0;
    for (const auto &[root, cols] : blocks) {
        const auto &rows = block_rows[root];
        std::map<std::size_t, Eigen::Index> local;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            local[cols[i]] = static_cast<Eigen::Index>(i);
        }
        const auto nr = static_cast<Eigen::Index>(std::max<std::size_t>(rows.size(), cols.size()));
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(nr, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto &[col, c] : rows[r]->entries) {
                M(static_cast<Eigen::Index>(r), local[static_cast<std::size_t>(col)]) = c.to_complex();
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullV);
        BlockSvd b{cols, svd.singularValues(), svd.matrixV()};
        if (b.sigma.size() > 0) {
            sigma_max = std::max(sigma_max, b.sigma(0));
        }
        svds.push_back(std::move(b));
    }

    NullspaceResult out;
    out.rel_tol = rel_tol;
    const double cut = rel_tol * sigma_max;
    double smallest_retained = std::numeric_limits<double>::infinity();
    double largest_discarded = 0.0;
    for (const auto &b : svds) {
        for (Eigen::Index i = 0; i < b.sigma.size(); ++i) {
            const double s = b.sigma(i);
            out.spectrum.push_back(s);
            if (s < cut || sigma_max == 0.0) {
                largest_discarded = std::max(largest_discarded, s);
                std::vector<Complex> v(ncol, Complex(0.0));
                for (std::size_t c = 0; c < b.cols.size(); ++c) {
                    v[b.cols[c]] = b.V(static_cast<Eigen::Index>(c), i);
                }
                out.null_vectors.push_back(std::move(v));
            } else {
                smallest_retained = std::min(smallest_retained, s);
            }
        }
    }
    std::sort(out.spectrum.begin(), out.spectrum.end(), std::greater<>());
    out.dimension = out.null_vectors.size();
    if (out.dimension == 0) {
        out.gap_ratio = std::numeric_limits<double>::infinity();
    } else if (largest_discarded == 0.0) {
        out.gap_ratio = std::numeric_limits<double>::infinity();
    } else {
        out.gap_ratio = smallest_retained / largest_discarded;
    }
    return out;
}

FourierFunction density_from_vector(const ConstraintSystem &cs, const std::vector<Complex> &v)
{
    FourierFunction rho(cs.n_mu());
    Complex phase = v.at(static_cast<std::size_t>(cs.column_of({0, 0})));
    phase = std::abs(phase) > 0 ? std::conj(phase) / std::abs(phase) : Complex(1.0);
    for (std::size_t c = 0; c < v.size(); ++c) {
        rho.set_coefficient(cs.columns()[c].first, cs.columns()[c].second, v[c] * phase);
    }
    return rho;
}

RecoveredHamiltonian recover_H(const FourierFunction &density, double beta, int grid)
{
    RecoveredHamiltonian out;
    out.grid = grid;
    if (beta == 0.0) {
        out.verdict = "beta = 0: the density carries no Hamiltonian";
        return out;
    }
    Complex mean = density.coefficient(0, 0);
    const Complex phase = std::abs(mean) > 0 ? std::conj(mean) / std::abs(mean) : Complex(1.0);
    std::vector<Complex> samples;
    double max_abs = 0.0, max_imag = 0.0;
    for (int a = 0; a < grid; ++a) {
        for (int b = 0; b < grid; ++b) {
            const Complex v = density.evaluate(2 * M_PI * a / grid, 2 * M_PI * b / grid) * phase;
            samples.push_back(v);
            max_abs = std::max(max_abs, std::abs(v));
            max_imag = std::max(max_imag, std::abs(v.imag()));
        }
    }
    out.imag_residual = max_abs > 0 ? max_imag / max_abs : 0.0;
    for (const Complex &v : samples) {
        if (!(v.real() > 0.0)) {
            out.verdict = "no positive global density: Hamiltonian recovery fails";
            out.values.clear();
            return out;
        }
        out.values.push_back(-std::log(v.real()) / beta);
    }
    out.ok = true;
    out.verdict = "globally defined Hamiltonian recovered";
    return out;
}

double vector_angle(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
    double na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += std::norm(a[i]);
        nb += std::norm(b[i]);
    }
    na = std::sqrt(na);
    nb = std::sqrt(nb);
    Complex dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += std::conj(a[i] / na) * (b[i] / nb);
    }
    // |b̂ − ⟨â,b̂⟩â| = sin θ without the cancellation of 1 − cos²θ
    double r2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r2 += std::norm(b[i] / nb - dot * (a[i] / na));
    }
    return std::asin(std::min(1.0, std::sqrt(r2)));
}

void write_spectrum_csv(std::ostream &os, const NullspaceResult &r)
{
    os << "index,singular_value\n";
    os.precision(17);
    for (std::size_t i = 0; i < r.spectrum.size(); ++i) {
        os << i << ',' << r.spectrum[i] << '\n';
    }
}

void write_null_vectors_csv(std::ostream &os, const ConstraintSystem &cs, const NullspaceResult &r)
{
    os << "vector,k1,k2,re,im\n";
    os.precision(17);
    for (std::size_t v = 0; v < r.null_vectors.size(); ++v) {
        for (std::size_t c = 0; c < cs.columns().size(); ++c) {
            const Complex z = r.null_vectors[v][c];
            os << v << ',' << cs.columns()[c].first << ',' << cs.columns()[c].second << ',' << z.real() << ','
               << z.imag() << '\n';
        }
    }
}

} // namespace starkms
