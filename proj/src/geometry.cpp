#include "muskat/geometry.hpp"

#include "muskat/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <string>

namespace muskat {

namespace {

using cplx = std::complex<double>;

std::vector<cplx> forward(const Eigen::ArrayXd& values) {
    Eigen::FFT<double> fft;
    std::vector<double> in(values.data(), values.data() + values.size());
    std::vector<cplx> out;
    fft.fwd(out, in);
    return out;
}

Eigen::ArrayXd inverse(const std::vector<cplx>& spectrum) {
    Eigen::FFT<double> fft;
    std::vector<double> out;
    fft.inv(out, spectrum);
    return Eigen::Map<const Eigen::ArrayXd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

int wavenumber(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

Eigen::ArrayXd PeriodicGrid::nodes() const {
    Eigen::ArrayXd x(n_x);
    for (int i = 0; i < n_x; ++i) x[i] = node(i);
    return x;
}

PeriodicGrid make_grid(int n_x) {
    if (n_x < 8 || n_x % 2 != 0)
        throw InvalidArgument("grid size must be even and >= 8, got " + std::to_string(n_x));
    return PeriodicGrid{n_x};
}

PeriodicFn::PeriodicFn(const PeriodicGrid& grid, Eigen::ArrayXd values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.n_x)
        throw InvalidArgument("PeriodicFn: value count does not match grid");
    if (!values_.allFinite()) throw InvalidArgument("PeriodicFn: non-finite value");
}

PeriodicFn PeriodicFn::constant(const PeriodicGrid& grid, double c) {
    return PeriodicFn(grid, Eigen::ArrayXd::Constant(grid.n_x, c));
}

PeriodicFn PeriodicFn::sample(const PeriodicGrid& grid, const std::function<double(double)>& fn) {
    Eigen::ArrayXd v(grid.n_x);
    for (int i = 0; i < grid.n_x; ++i) v[i] = fn(grid.node(i));
    return PeriodicFn(grid, std::move(v));
}

PeriodicFn PeriodicFn::shifted(int shift) const {
    const int n = grid_.n_x;
    Eigen::ArrayXd v(n);
    for (int i = 0; i < n; ++i) v[((i + shift) % n + n) % n] = values_[i];
    return PeriodicFn(grid_, std::move(v));
}

PeriodicFn PeriodicFn::operator-() const { return PeriodicFn(grid_, -values_); }

PeriodicFn& PeriodicFn::operator+=(const PeriodicFn& other) {
    require_same_grid(*this, other);
    values_ += other.values_;
    return *this;
}

PeriodicFn& PeriodicFn::operator-=(const PeriodicFn& other) {
    require_same_grid(*this, other);
    values_ -= other.values_;
    return *this;
}

PeriodicFn& PeriodicFn::operator*=(double s) {
    values_ *= s;
    return *this;
}

PeriodicFn operator*(const PeriodicFn& a, const PeriodicFn& b) {
    require_same_grid(a, b);
    return PeriodicFn(a.grid(), a.values() * b.values());
}

void require_same_grid(const PeriodicFn& a, const PeriodicFn& b) {
    if (!(a.grid() == b.grid())) throw InvalidArgument("periodic functions live on different grids");
}

PeriodicFn spectral_derivative(const PeriodicFn& u, int order) {
    if (order < 1 || order > 4) throw InvalidArgument("derivative order must be in 1..4");
    const int n = u.size();
    auto spec = forward(u.values());
    for (int k = 0; k < n; ++k) {
        if (k == n / 2 && order % 2 == 1) {
            spec[k] = 0.0;
            continue;
        }
        const cplx ik(0.0, static_cast<double>(wavenumber(k, n)));
        spec[k] *= std::pow(ik, order);
    }
    return PeriodicFn(u.grid(), inverse(spec));
}

std::vector<cplx> fourier_coefficients(const PeriodicFn& u) {
    const int n = u.size();
    auto spec = forward(u.values());
    std::vector<cplx> c(n / 2 + 1);
    for (int k = 0; k <= n / 2; ++k) c[k] = spec[k] / static_cast<double>(n);
    return c;
}

double mode_amplitude(const PeriodicFn& u, int m) {
    if (m < 0 || m > u.size() / 2) throw InvalidArgument("mode index out of range");
    const auto c = fourier_coefficients(u);
    if (m == 0 || m == u.size() / 2) return std::abs(c[m]);
    return 2.0 * std::abs(c[m]);
}

double sine_coefficient(const PeriodicFn& u, int m) {
    if (m <= 0 || m >= u.size() / 2) throw InvalidArgument("mode index out of range");
    return -2.0 * fourier_coefficients(u)[m].imag();
}

double interpolate(const PeriodicFn& u, double x) {
    const int n = u.size();
    const auto c = fourier_coefficients(u);
    double s = c[0].real();
    for (int k = 1; k < n / 2; ++k) s += 2.0 * (c[k] * std::polar(1.0, k * x)).real();
    s += c[n / 2].real() * std::cos(0.5 * n * x);
    return s;
}

PeriodicFn dealias(const PeriodicFn& u) {
    const int n = u.size();
    auto spec = forward(u.values());
    for (int k = 0; k < n; ++k)
        if (3 * std::abs(wavenumber(k, n)) > n) spec[k] = 0.0;
    return PeriodicFn(u.grid(), inverse(spec));
}

PeriodicFn curvature(const PeriodicFn& zeta) {
    const auto d1 = spectral_derivative(zeta, 1).values();
    const auto d2 = spectral_derivative(zeta, 2).values();
    return PeriodicFn(zeta.grid(), d2 / (1.0 + d1.square()).pow(1.5));
}

PeriodicFn curvature_frechet(const PeriodicFn& zeta0, const PeriodicFn& h) {
    require_same_grid(zeta0, h);
    const auto z1 = spectral_derivative(zeta0, 1).values();
    const auto z2 = spectral_derivative(zeta0, 2).values();
    const auto h1 = spectral_derivative(h, 1).values();
    const auto h2 = spectral_derivative(h, 2).values();
    const Eigen::ArrayXd q = 1.0 + z1.square();
    return PeriodicFn(zeta0.grid(), h2 / q.pow(1.5) - 3.0 * z1 * z2 * h1 / q.pow(2.5));
}

AdmissibilityReport check_admissible(const PeriodicFn& f, const PeriodicFn& h, double d) {
    require_same_grid(f, h);
    AdmissibilityReport r;
    r.gap_fd = (f.values() - d).minCoeff();
    r.gap_hf = (h.values() - f.values()).minCoeff();
    r.ok = r.gap_fd > 0.0 && r.gap_hf > 0.0;
    return r;
}

}  // namespace muskat
