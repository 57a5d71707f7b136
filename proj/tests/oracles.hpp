#pragma once

// Reference computations shared by the unit tests and the acceptance binary.
// None of them call into the library's formula code.

#include <array>
#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

// Height map Y(x, y) of a strip pullback with the partial derivatives needed
// for the chain rule.
struct HeightJet {
    double Y, Y_x, Y_y, Y_xx, Y_xy, Y_yy;
};

// Coefficients of the Laplacian in strip coordinates, c_xx dxx + c_xy dxy + c_yy dyy + c_y dy,
// from implicit differentiation of Y(x, eta(x, Y)) = Y.
struct PulledLaplacian {
    double c_xx, c_xy, c_yy, c_y;
};

inline PulledLaplacian pulled_laplacian(const HeightJet& j) {
    const double eta_x = -j.Y_x / j.Y_y;
    const double eta_Y = 1.0 / j.Y_y;
    const double eta_YY = -j.Y_yy / (j.Y_y * j.Y_y * j.Y_y);
    const double eta_xx = -(j.Y_xx + eta_x * j.Y_xy) / j.Y_y + j.Y_x * (j.Y_xy + eta_x * j.Y_yy) / (j.Y_y * j.Y_y);
    return {1.0, 2.0 * eta_x, eta_x * eta_x + eta_Y * eta_Y, eta_xx + eta_YY};
}

struct Profile {
    std::function<double(double)> v, d1, d2;
};

// Y = -d y + (1 + y) f(x) on y in [-1, 0].
inline HeightJet minus_jet(const Profile& f, double d, double x, double y) {
    return {-d * y + (1.0 + y) * f.v(x), (1.0 + y) * f.d1(x), f.v(x) - d, (1.0 + y) * f.d2(x), f.d1(x), 0.0};
}

// Y = y h(x) + (1 - y) f(x) on y in [0, 1].
inline HeightJet plus_jet(const Profile& f, const Profile& h, double x, double y) {
    return {y * h.v(x) + (1.0 - y) * f.v(x),
            y * h.d1(x) + (1.0 - y) * f.d1(x),
            h.v(x) - f.v(x),
            y * h.d2(x) + (1.0 - y) * f.d2(x),
            h.d1(x) - f.d1(x),
            0.0};
}

// Horizontal layers d < f0 < h0 with Darcy potentials linear in Y:
//   u_- = c at Y = d, u_+ = g rho_+ h0 at Y = h0,
//   u_+ - u_- = g (rho_+ - rho_-) f0 and (k/mu_+) u_+' = (k/mu_-) u_-' at Y = f0.
struct FlatLayers {
    double slope_minus, slope_plus;
    double u_minus_at_f, u_plus_at_f;

    double df_dt(double k, double mu_minus) const { return -k * slope_minus / mu_minus; }
    double dh_dt(double k, double mu_plus) const { return -k * slope_plus / mu_plus; }
};

inline FlatLayers flat_layers(double k, double mu_minus, double mu_plus, double rho_minus, double rho_plus, double g,
                              double d, double f0, double h0, double c) {
    (void)k;
    const double Lm = f0 - d, Lp = h0 - f0;
    const double jump = g * (rho_plus - rho_minus) * f0;
    // Flux continuity: s_+ = (mu_+/mu_-) s_-.
    // Values: g rho_+ h0 - s_+ Lp - (c + s_- Lm) = jump.
    const double ratio = mu_plus / mu_minus;
    const double s_minus = (g * rho_plus * h0 - c - jump) / (Lm + ratio * Lp);
    const double s_plus = ratio * s_minus;
    return {s_minus, s_plus, c + s_minus * Lm, g * rho_plus * h0 - s_plus * Lp};
}

// Rayleigh-Taylor margins of horizontal layers: p = u - g rho Y, normal = +Y.
inline std::array<double, 2> flat_rt_margins(const FlatLayers& L, double g, double rho_minus, double rho_plus) {
    const double dp_minus = L.slope_minus - g * rho_minus;
    const double dp_plus = L.slope_plus - g * rho_plus;
    return {-(dp_minus - dp_plus), -dp_plus};
}

// Lopatinskii determinant of the frozen transmission problem along the homotopy tau.
// Each operator is a11 dxx + 2 a12 dxy + a22 dyy with boundary beta1 dx + beta2 dy;
// the first operator lives on y > 0, the second on y < 0.
struct FrozenOperator {
    double a11, a12, a22, beta1, beta2;
};

inline std::complex<double> decaying_root(const FrozenOperator& o, double xi, double tau, bool upper) {
    const double a11 = (1.0 - tau) * o.a11 + tau;
    const double a12 = (1.0 - tau) * o.a12;
    const double a22 = (1.0 - tau) * o.a22 + tau;
    // a22 r^2 + 2 i a12 xi r - a11 xi^2 = 0 for modes e^{i xi x + r y}.
    const std::complex<double> A = a22, B = std::complex<double>(0.0, 2.0 * a12 * xi), C = -a11 * xi * xi;
    const std::complex<double> disc = std::sqrt(B * B - 4.0 * A * C);
    const std::complex<double> r1 = (-B + disc) / (2.0 * A), r2 = (-B - disc) / (2.0 * A);
    if (upper) return r1.real() < r2.real() ? r1 : r2;
    return r1.real() > r2.real() ? r1 : r2;
}

// Negative real part of the flux determinant; positive iff the condition holds.
inline double lopatinskii_margin(const FrozenOperator& upper, const FrozenOperator& lower, double xi, double tau) {
    const std::complex<double> I(0.0, 1.0);
    const auto rp = decaying_root(upper, xi, tau, true);
    const auto rm = decaying_root(lower, xi, tau, false);
    const double b2p = (1.0 - tau) * upper.beta2 + tau, b2m = (1.0 - tau) * lower.beta2 + tau;
    const double b1p = (1.0 - tau) * upper.beta1, b1m = (1.0 - tau) * lower.beta1;
    const std::complex<double> det = (I * xi * b1p + b2p * rp) - (I * xi * b1m + b2m * rm);
    return -det.real();
}

// Least-squares slope of log y against log x.
template <class Range>
double loglog_slope(const Range& x, const Range& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(std::size(x));
    for (std::size_t i = 0; i < std::size(x); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
