#include "starkms/fourier.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "starkms/errors.hpp"

namespace starkms
{

FourierFunction::FourierFunction(int band) : band_(band)
{
    if (band < 0) {
        throw precondition_error("Fourier band must be non-negative");
    }
    const auto w = static_cast<std::size_t>(2 * band + 1);
    coeffs_.assign(w * w, Complex(0.0));
}

FourierFunction FourierFunction::constant(int band, Complex c)
{
    FourierFunction f(band);
    f.set_coefficient(0, 0, c);
    return f;
}

FourierFunction FourierFunction::mode(int band, int k1, int k2, Complex c)
{
    FourierFunction f(band);
    f.set_coefficient(k1, k2, c);
    return f;
}

Complex FourierFunction::coefficient(int k1, int k2) const
{
    if (std::abs(k1) > band_ || std::abs(k2) > band_) {
        return 0.0;
    }
    return coeffs_[index(k1, k2)];
}

void FourierFunction::set_coefficient(int k1, int k2, Complex c)
{
    if (std::abs(k1) > band_ || std::abs(k2) > band_) {
        throw precondition_error("Fourier mode outside the band");
    }
    coeffs_[index(k1, k2)] = c;
}

bool FourierFunction::is_zero() const
{
    for (const auto &c : coeffs_) {
        if (c != Complex(0.0)) {
            return false;
        }
    }
    return true;
}

bool FourierFunction::is_real(double tol) const
{
    for (int k1 = -band_; k1 <= band_; ++k1) {
        for (int k2 = -band_; k2 <= band_; ++k2) {
            if (std::abs(coefficient(k1, k2) - std::conj(coefficient(-k1, -k2))) > tol) {
                return false;
            }
        }
    }
    return true;
}

double FourierFunction::max_abs() const
{
    double m = 0.0;
    for (const auto &c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

FourierFunction FourierFunction::derivative(std::size_t axis) const
{
    if (axis > 1) {
        throw precondition_error("torus derivative axis must be 0 or 1");
    }
    FourierFunction out(*this);
    for (int k1 = -band_; k1 <= band_; ++k1) {
        for (int k2 = -band_; k2 <= band_; ++k2) {
            const int k = axis == 0 ? k1 : k2;
            out.coeffs_[index(k1, k2)] *= Complex(0.0, k);
        }
    }
    return out;
}

FourierFunction FourierFunction::conj() const
{
    FourierFunction out(band_);
    out.leakage_ = leakage_;
    for (int k1 = -band_; k1 <= band_; ++k1) {
        for (int k2 = -band_; k2 <= band_; ++k2) {
            out.coeffs_[index(k1, k2)] = std::conj(coefficient(-k1, -k2));
        }
    }
    return out;
}

FourierFunction FourierFunction::translate(double shift1, double shift2) const
{
    FourierFunction out(*this);
    for (int k1 = -band_; k1 <= band_; ++k1) {
        for (int k2 = -band_; k2 <= band_; ++k2) {
            out.coeffs_[index(k1, k2)] *= std::polar(1.0, k1 * shift1 + k2 * shift2);
        }
    }
    return out;
}

FourierFunction FourierFunction::with_band(int band) const
{
    FourierFunction out(band);
    double dropped = 0.0;
    for (int k1 = -band_; k1 <= band_; ++k1) {
        for (int k2 = -band_; k2 <= band_; ++k2) {
            const Complex c = coefficient(k1, k2);
            if (std::abs(k1) <= band && std::abs(k2) <= band) {
                out.coeffs_[out.index(k1, k2)] = c;
            } else {
                dropped += std::norm(c);
            }
        }
    }
    out.leakage_ = leakage_ + std::sqrt(dropped);
    return out;
}

Complex FourierFunction::evaluate(double theta1, double theta2) const
{
    Complex acc = 0.0;
    for (int k1 = -band_; k1 <= band_; ++k1) {
        for (int k2 = -band_; k2 <= band_; ++k2) {
            acc += coefficient(k1, k2) * std::polar(1.0, k1 * theta1 + k2 * theta2);
        }
    }
    return acc;
}

PiScaled<Complex> FourierFunction::integrate() const
{
    return {4.0 * coefficient(0, 0), 2};
}

void FourierFunction::check_compatible(const FourierFunction &o) const
{
    if (band_ != o.band_) {
        throw context_mismatch("Fourier functions with different bands");
    }
}

FourierFunction &FourierFunction::operator+=(const FourierFunction &o)
{
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    leakage_ += o.leakage_;
    return *this;
}

FourierFunction &FourierFunction::operator-=(const FourierFunction &o)
{
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= o.coeffs_[i];
    }
    leakage_ += o.leakage_;
    return *this;
}

FourierFunction &FourierFunction::operator*=(Complex c)
{
    for (auto &v : coeffs_) {
        v *= c;
    }
    leakage_ *= std::abs(c);
    return *this;
}

FourierFunction operator*(const FourierFunction &a, const FourierFunction &b)
{
    a.check_compatible(b);
    const int N = a.band_;
    // Full convolution on the doubled band, then fold back.
    FourierFunction wide(2 * N);
    for (int k1 = -N; k1 <= N; ++k1) {
        for (int k2 = -N; k2 <= N; ++k2) {
            const Complex ca = a.coeffs_[a.index(k1, k2)];
            if (ca == Complex(0.0)) {
                continue;
            }
            for (int l1 = -N; l1 <= N; ++l1) {
                for (int l2 = -N; l2 <= N; ++l2) {
                    const Complex cb = b.coeffs_[b.index(l1, l2)];
                    if (cb == Complex(0.0)) {
                        continue;
                    }
                    wide.coeffs_[wide.index(k1 + l1, k2 + l2)] += ca * cb;
                }
            }
        }
    }
    FourierFunction out = wide.with_band(N);
    out.leakage_ += a.leakage_ * b.max_abs() + b.leakage_ * a.max_abs();
    return out;
}

FourierFunction operator-(const FourierFunction &a)
{
    FourierFunction out(a);
    for (auto &v : out.coeffs_) {
        v = -v;
    }
    return out;
}

std::string FourierFunction::to_string() const
{
    std::ostringstream ss;
    bool first = true;
    for (int k1 = -band_; k1 <= band_; ++k1) {
        for (int k2 = -band_; k2 <= band_; ++k2) {
            const Complex c = coefficient(k1, k2);
            if (c == Complex(0.0)) {
                continue;
            }
            if (!first) {
                ss << " + ";
            }
            first = false;
            ss << "(" << c.real() << "," << c.imag() << ")e(" << k1 << "," << k2 << ")";
        }
    }
    return first ? "0" : ss.str();
}

} // namespace starkms
