#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace muskat {

struct PeriodicGrid {
    int n_x = 0;

    double spacing() const { return 2.0 * std::numbers::pi / n_x; }
    double node(int i) const { return 2.0 * std::numbers::pi * i / n_x; }
    Eigen::ArrayXd nodes() const;

    friend bool operator==(const PeriodicGrid&, const PeriodicGrid&) = default;
};

// n_x must be even and at least 8.
PeriodicGrid make_grid(int n_x);

// Samples of a 2pi-periodic function at the nodes of a PeriodicGrid.
class PeriodicFn {
public:
    PeriodicFn() = default;
    PeriodicFn(const PeriodicGrid& grid, Eigen::ArrayXd values);

    static PeriodicFn constant(const PeriodicGrid& grid, double c);
    static PeriodicFn sample(const PeriodicGrid& grid, const std::function<double(double)>& fn);

    const PeriodicGrid& grid() const { return grid_; }
    const Eigen::ArrayXd& values() const { return values_; }
    int size() const { return grid_.n_x; }
    double operator[](int i) const { return values_[i]; }

    double min() const { return values_.minCoeff(); }
    double max() const { return values_.maxCoeff(); }
    double sup_norm() const { return values_.abs().maxCoeff(); }

    // Circular shift: result[i] = this[i - shift].
    PeriodicFn shifted(int shift) const;

    PeriodicFn operator-() const;
    PeriodicFn& operator+=(const PeriodicFn& other);
    PeriodicFn& operator-=(const PeriodicFn& other);
    PeriodicFn& operator*=(double s);

    friend PeriodicFn operator+(PeriodicFn a, const PeriodicFn& b) { return a += b; }
    friend PeriodicFn operator-(PeriodicFn a, const PeriodicFn& b) { return a -= b; }
    friend PeriodicFn operator*(PeriodicFn a, double s) { return a *= s; }
    friend PeriodicFn operator*(double s, PeriodicFn a) { return a *= s; }
    friend PeriodicFn operator*(const PeriodicFn& a, const PeriodicFn& b);

private:
    PeriodicGrid grid_;
    Eigen::ArrayXd values_;
};

void require_same_grid(const PeriodicFn& a, const PeriodicFn& b);

// Derivative of the trigonometric interpolant; the Nyquist mode is dropped
// for odd orders. order must lie in 1..4.
PeriodicFn spectral_derivative(const PeriodicFn& u, int order);

// Complex coefficients c_k, k = 0..n_x/2, with u(x) = sum_k c_k e^{ikx}
// (negative k by conjugate symmetry).
std::vector<std::complex<double>> fourier_coefficients(const PeriodicFn& u);

// Amplitude of the cos/sin pair at wavenumber m: sqrt(a_m^2 + b_m^2).
double mode_amplitude(const PeriodicFn& u, int m);

// Coefficient b_m of sin(m x) in the real Fourier expansion.
double sine_coefficient(const PeriodicFn& u, int m);

// Evaluate the trigonometric interpolant at an arbitrary point.
double interpolate(const PeriodicFn& u, double x);

// Zero every mode with |k| > n_x/3.
PeriodicFn dealias(const PeriodicFn& u);

PeriodicFn curvature(const PeriodicFn& zeta);
PeriodicFn curvature_frechet(const PeriodicFn& zeta0, const PeriodicFn& h);

struct InterfacePair {
    PeriodicFn f;
    PeriodicFn h;
    double d = -1.0;
};

struct AdmissibilityReport {
    bool ok = false;
    double gap_fd = 0.0;
    double gap_hf = 0.0;
};

AdmissibilityReport check_admissible(const PeriodicFn& f, const PeriodicFn& h, double d);
inline AdmissibilityReport check_admissible(const InterfacePair& fh) {
    return check_admissible(fh.f, fh.h, fh.d);
}

}  // namespace muskat
