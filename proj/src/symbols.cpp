#include "muskat/symbols.hpp"

#include "muskat/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace muskat {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>, boost::multiprecision::et_off>;

constexpr double kAsymptotic = 30.0;

double sech(double x) {
    const double ax = std::abs(x);
    return ax > kAsymptotic ? 2.0 * std::exp(-ax) : 1.0 / std::cosh(x);
}

double csch(double x) {
    const double ax = std::abs(x);
    const double s = x < 0.0 ? -1.0 : 1.0;
    return ax > kAsymptotic ? s * 2.0 * std::exp(-ax) : 1.0 / std::sinh(x);
}

double tanh_ratio(double D, int m) { return std::tanh(D * m) / (D * m); }

// Combined inverse weight (tanh(D+ m)/(beta2+ D+ m) + tanh(D- m)/(beta2- D- m))^{-1}.
double interface_weight(const FrozenPoint& fp, int m) {
    return 1.0 / (tanh_ratio(fp.D_plus, m) / fp.beta2_plus + tanh_ratio(fp.D_minus, m) / fp.beta2_minus);
}

void require_mode(int m) {
    if (m == 0) throw InvalidArgument("symbols are defined for m != 0");
}

void require_tau(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidArgument("tau must lie in [0, 1]");
}

}  // namespace

FrozenPoint frozen_point(const FrozenPrimitives& p, const FluidParams& params) {
    params.validate();
    if (!(p.gap_fd > 0.0) || !(p.gap_hf > 0.0)) throw DomainError("frozen point: interface gaps must be positive");

    FrozenPoint fp;
    fp.prim = p;
    const double nf = 1.0 + p.f_slope * p.f_slope;
    const double nh = 1.0 + p.h_slope * p.h_slope;

    fp.a_minus = -p.f_slope * p.gap_fd / nf;
    fp.b_minus = p.gap_fd * p.gap_fd / nf;
    fp.D_minus = std::sqrt(fp.b_minus - fp.a_minus * fp.a_minus);
    fp.a_plus = -p.f_slope * p.gap_hf / nf;
    fp.b_plus = p.gap_hf * p.gap_hf / nf;
    fp.D_plus = std::sqrt(fp.b_plus - fp.a_plus * fp.a_plus);

    fp.beta1_minus = -params.k * p.f_slope / params.mu_minus;
    fp.beta2_minus = params.k * nf / (params.mu_minus * p.gap_fd);
    fp.beta1_plus = -params.k * p.f_slope / params.mu_plus;
    fp.beta2_plus = params.k * nf / (params.mu_plus * p.gap_hf);

    fp.A_plus = p.tr0_dy_vplus / p.gap_hf;
    fp.A_minus = p.tr0_dy_vminus / p.gap_fd;
    fp.B = params.k / params.mu_minus * (2.0 * p.f_slope * fp.A_minus - p.tr0_dx_vminus) -
           params.k / params.mu_plus * (2.0 * p.f_slope * fp.A_plus - p.tr0_dx_vplus);
    fp.Delta_rho = params.g * (params.rho_minus - params.rho_plus);
    fp.Delta_A = fp.A_plus - fp.A_minus;

    fp.a = -p.h_slope * p.gap_hf / nh;
    fp.b = p.gap_hf * p.gap_hf / nh;
    fp.D = std::sqrt(fp.b - fp.a * fp.a);
    fp.beta1 = -params.k * p.h_slope / params.mu_plus;
    fp.beta2 = params.k * nh / (params.mu_plus * p.gap_hf);
    fp.V = p.tr1_dy_vplus / p.gap_hf;

    fp.V_f = params.gamma_f * std::pow(nf, -1.5);
    fp.V_h = params.gamma_h * std::pow(nh, -1.5);
    return fp;
}

FrozenPoint frozen_constants(const InterfacePair& base, const DiffractionSolution& sol, const FluidParams& params,
                             double x) {
    if (!check_admissible(base).ok) throw DomainError("frozen_constants: base is not admissible");
    if (std::abs(base.d - params.d) > 0.0) throw InvalidArgument("frozen_constants: base.d differs from params.d");
    FrozenPrimitives p;
    const double f = interpolate(base.f, x);
    const double h = interpolate(base.h, x);
    p.f_slope = interpolate(spectral_derivative(base.f, 1), x);
    p.h_slope = interpolate(spectral_derivative(base.h, 1), x);
    p.gap_fd = f - base.d;
    p.gap_hf = h - f;
    p.tr0_dy_vminus = interpolate(sol.tr0_dy_vminus, x);
    p.tr0_dx_vminus = interpolate(sol.tr0_dx_vminus, x);
    p.tr0_dy_vplus = interpolate(sol.tr0_dy_vplus, x);
    p.tr0_dx_vplus = interpolate(sol.tr0_dx_vplus, x);
    p.tr1_dy_vplus = interpolate(sol.tr1_dy_vplus, x);
    p.tr1_dx_vplus = interpolate(sol.tr1_dx_vplus, x);
    return frozen_point(p, params);
}

std::complex<double> lambda_symbol(const FrozenPoint& fp, int m, double tau, const FluidParams& params) {
    require_mode(m);
    require_tau(tau);
    const double H = interface_weight(fp, m);
    const double Dm = fp.D_minus * m, Dp = fp.D_plus * m;
    const double re = -H * (fp.Delta_rho + fp.Delta_A + tau * fp.A_minus * std::cos(Dm) * sech(Dm) -
                            tau * fp.A_plus * std::cos(Dp) * sech(Dp));
    const double a2D2 = fp.a_minus * fp.a_minus + fp.D_minus * fp.D_minus;
    const double im =
        tau * params.k / params.mu_minus *
            (fp.a_minus * fp.prim.tr0_dy_vminus / a2D2 + fp.prim.tr0_dx_vminus) * m +
        tau * H * (fp.A_minus * std::sin(Dm) * sech(Dm) + fp.A_plus * std::sin(Dp) * sech(Dp)) -
        tau * H * std::tanh(Dp) / (fp.beta2_plus * fp.D_plus) *
            (fp.beta1_plus * fp.A_plus - fp.beta1_minus * fp.A_minus - fp.B);
    return {re, im};
}

std::complex<double> lambda_symbol_transposed(const FrozenPoint& fp, int m, double tau, const FluidParams& params) {
    require_mode(m);
    require_tau(tau);
    const double H = interface_weight(fp, m);
    const double Dm = fp.D_minus * m, Dp = fp.D_plus * m;
    const double am = fp.a_minus * m, ap = fp.a_plus * m;
    const double re = -H * (fp.Delta_rho + fp.Delta_A + tau * fp.A_minus * std::cos(am) * sech(Dm) -
                            tau * fp.A_plus * std::cos(ap) * sech(Dp));
    const double a2D2 = fp.a_minus * fp.a_minus + fp.D_minus * fp.D_minus;
    const double im =
        tau * params.k / params.mu_minus *
            (fp.a_minus * fp.prim.tr0_dy_vminus / a2D2 + fp.prim.tr0_dx_vminus) * m +
        tau * H * (fp.A_minus * std::sin(am) * sech(Dm) + fp.A_plus * std::sin(ap) * sech(Dp)) -
        tau * H * std::tanh(Dp) / (fp.beta2_plus * fp.D_plus) *
            (fp.beta1_plus * fp.A_plus - fp.beta1_minus * fp.A_minus - fp.B);
    return {re, im};
}

std::complex<double> phi_symbol(const FrozenPoint& fp, int m, double tau, const FluidParams& params) {
    require_mode(m);
    require_tau(tau);
    const double c = params.k / params.mu_plus;
    const double Dm = fp.D * m;
    const double mu_m = c * (params.g * params.rho_plus - fp.V) * m / std::tanh(Dm);
    const double nu_m = tau * c * fp.V * std::cos(fp.a * m) * m * csch(Dm);
    const double im = tau * c *
                      (fp.a * ((2.0 - tau) * fp.V - params.g * params.rho_plus) / fp.D * m +
                       fp.V * std::sin(fp.a * m) * m * csch(Dm));
    return {-mu_m - nu_m, im};
}

double lambda_st_symbol(const FrozenPoint& fp, int m) {
    require_mode(m);
    return -fp.V_f * interface_weight(fp, m) * m * m;
}

double phi_st_symbol(const FrozenPoint& fp, int m, const FluidParams& params) {
    require_mode(m);
    const double mm = m;
    return -(params.k * fp.V_h / params.mu_plus) * mm * mm * mm / std::tanh(fp.D * m);
}

// ---------------------------------------------------------------------------
// Extended-precision boundary-value oracles.

namespace {

template <class T>
struct Dual {
    T v, d;
};

template <class T> Dual<T> operator+(Dual<T> a, Dual<T> b) { return {a.v + b.v, a.d + b.d}; }
template <class T> Dual<T> operator-(Dual<T> a, Dual<T> b) { return {a.v - b.v, a.d - b.d}; }
template <class T> Dual<T> operator*(Dual<T> a, Dual<T> b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T> Dual<T> operator*(const T& s, Dual<T> a) { return {s * a.v, s * a.d}; }
template <class T> Dual<T> operator-(Dual<T> a) { return {-a.v, -a.d}; }

template <class T> Dual<T> dcos(Dual<T> x) {
    using std::cos, std::sin;
    return {cos(x.v), -sin(x.v) * x.d};
}
template <class T> Dual<T> dsin(Dual<T> x) {
    using std::cos, std::sin;
    return {sin(x.v), cos(x.v) * x.d};
}
template <class T> Dual<T> dcosh(Dual<T> x) {
    using std::cosh, std::sinh;
    return {cosh(x.v), sinh(x.v) * x.d};
}
template <class T> Dual<T> dsinh(Dual<T> x) {
    using std::cosh, std::sinh;
    return {sinh(x.v), cosh(x.v) * x.d};
}

// Real and imaginary parts u_k, v_k (k = 1..4) of the general solution of
// w'' + 2 i m a w' - b m^2 w = const, with their y-derivatives.
template <class T>
struct ModeBasis {
    std::array<Dual<T>, 4> u, v;
};

template <class T>
ModeBasis<T> mode_basis(const T& a, const T& D, int m, const T& y) {
    const T mm = T(m);
    const Dual<T> Y{y, T(1)};
    const Dual<T> c = dcos((a * mm) * Y), s = dsin((a * mm) * Y);
    const Dual<T> ch = dcosh((D * mm) * Y), sh = dsinh((D * mm) * Y);
    const T r = a / D, q = T(1) / (D * mm);
    ModeBasis<T> B;
    B.u[0] = c * ch + r * (s * sh);
    B.v[0] = -(s * ch) + r * (c * sh);
    B.u[1] = q * (c * sh);
    B.v[1] = -(q * (s * sh));
    B.u[2] = s * ch - r * (c * sh);
    B.v[2] = c * ch + r * (s * sh);
    B.u[3] = q * (s * sh);
    B.v[3] = q * (c * sh);
    return B;
}

// Affine form c . X + c0 in the unknown coefficients X.
template <int N>
struct Lin {
    std::array<Real, N> c{};
    Real c0 = 0;

    Lin operator+(const Lin& o) const {
        Lin r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] + o.c[i];
        r.c0 = c0 + o.c0;
        return r;
    }
    Lin operator-(const Lin& o) const { return *this + o * Real(-1); }
    Lin operator*(const Real& s) const {
        Lin r;
        for (int i = 0; i < N; ++i) r.c[i] = c[i] * s;
        r.c0 = c0 * s;
        return r;
    }
    Real eval(const Eigen::Matrix<Real, N, 1>& x) const {
        Real s = c0;
        for (int i = 0; i < N; ++i) s += c[i] * x[i];
        return s;
    }
    // Normwise scale sum_i |c_i| max_j |x_j| + |c0|.
    Real magnitude(const Eigen::Matrix<Real, N, 1>& x) const {
        using boost::multiprecision::abs;
        Real xmax = 0, csum = 0;
        for (int i = 0; i < N; ++i) {
            xmax = std::max(xmax, Real(abs(x[i])));
            csum += abs(c[i]);
        }
        return csum * xmax + abs(c0);
    }
};

// Value and derivative of a mode function, split into real and imaginary parts.
template <int N>
struct ModeValue {
    Lin<N> re, im, dre, dim;
};

template <int N>
ModeValue<N> mode_value(const Real& a, const Real& D, int m, const Real& y, int offset, const Real& particular,
                        const Real& scale) {
    const auto B = mode_basis<Real>(a, D, m, y);
    ModeValue<N> out;
    for (int k = 0; k < 4; ++k) {
        out.re.c[offset + k] = B.u[k].v / scale;
        out.im.c[offset + k] = B.v[k].v / scale;
        out.dre.c[offset + k] = B.u[k].d / scale;
        out.dim.c[offset + k] = B.v[k].d / scale;
    }
    out.re.c0 = particular / scale;
    return out;
}

template <int N>
struct Assembler {
    Eigen::Matrix<Real, N, N> M = Eigen::Matrix<Real, N, N>::Zero();
    Eigen::Matrix<Real, N, 1> rhs = Eigen::Matrix<Real, N, 1>::Zero();
    std::array<Lin<N>, N> rows;
    std::array<Real, N> targets;
    int next = 0;

    void add(const Lin<N>& eq, const Real& target) {
        for (int i = 0; i < N; ++i) M(next, i) = eq.c[i];
        rhs[next] = target - eq.c0;
        rows[next] = eq;
        targets[next] = target;
        ++next;
    }

    Eigen::Matrix<Real, N, 1> solve(double& residual) const {
        Eigen::FullPivLU<Eigen::Matrix<Real, N, N>> lu(M);
        if (!lu.isInvertible()) throw SolverFailure("symbol oracle: singular coefficient system", INFINITY);
        const Eigen::Matrix<Real, N, 1> x = lu.solve(rhs);
        Real worst = 0;
        for (int r = 0; r < N; ++r) {
            using boost::multiprecision::abs;
            const Real scale = rows[r].magnitude(x) + abs(targets[r]);
            const Real res = abs(rows[r].eval(x) - targets[r]);
            if (scale > 0) worst = std::max(worst, Real(res / scale));
        }
        residual = static_cast<double>(worst);
        return x;
    }
};

constexpr double kGuardDigits = 20.0;

void require_precision(double exponent) {
    if (std::abs(exponent) > oracle_exponent_limit())
        throw SolverFailure("symbol oracle: |D m| exceeds the extended-precision budget", INFINITY);
}

}  // namespace

double oracle_exponent_limit() {
    return (std::numeric_limits<Real>::digits10 - kGuardDigits) * std::log(10.0);
}

SymbolODESolution ode_oracle_lambda(const FrozenPoint& fp, int m, double tau, const FluidParams& params) {
    require_mode(m);
    require_tau(tau);
    require_precision(fp.D_plus * m);
    require_precision(fp.D_minus * m);
    using boost::multiprecision::cosh;

    const Real ap = fp.a_plus, am = fp.a_minus, Dp = fp.D_plus, Dm = fp.D_minus;
    const Real t = tau, mm = m;
    const Real tAp = t * Real(fp.A_plus), tAm = t * Real(fp.A_minus);
    const Real one = 1;

    // Unknowns: xi_1..4 of the plus strip (0..3), then of the minus strip (4..7).
    const auto P0 = mode_value<8>(ap, Dp, m, Real(0), 0, tAp, one);
    const auto M0 = mode_value<8>(am, Dm, m, Real(0), 4, tAm, one);
    const auto P1 = mode_value<8>(ap, Dp, m, Real(1), 0, tAp, cosh(Dp * mm));
    const auto M1 = mode_value<8>(am, Dm, m, Real(-1), 4, tAm, cosh(Dm * mm));

    const Real b1p = fp.beta1_plus, b1m = fp.beta1_minus, b2p = fp.beta2_plus, b2m = fp.beta2_minus;
    Assembler<8> sys;
    // i m (beta1+ A+(0) - beta1- A-(0)) + beta2+ A+'(0) - beta2- A-'(0) = i tau m B
    sys.add(P0.im * (-mm * b1p) + M0.im * (mm * b1m) + P0.dre * b2p - M0.dre * b2m, Real(0));
    sys.add(P0.re * (mm * b1p) - M0.re * (mm * b1m) + P0.dim * b2p - M0.dim * b2m, t * mm * Real(fp.B));
    // A+(0) - A-(0) = -(Delta_rho + (1 - tau) Delta_A)
    sys.add(P0.re - M0.re, -(Real(fp.Delta_rho) + (one - t) * Real(fp.Delta_A)));
    sys.add(P0.im - M0.im, Real(0));
    sys.add(P1.re, Real(0));
    sys.add(P1.im, Real(0));
    sys.add(M1.re, Real(0));
    sys.add(M1.im, Real(0));

    SymbolODESolution out;
    const auto x = sys.solve(out.boundary_residual);
    for (int i = 0; i < 8; ++i) out.coefficients.push_back(static_cast<double>(x[i]));

    // tr0 dy w- = A-'(0), tr0 dx w- = i m A-(0)
    const Real Are = M0.re.eval(x), Aim = M0.im.eval(x);
    const Real dAre = M0.dre.eval(x), dAim = M0.dim.eval(x);
    const Real E = Real(params.k / params.mu_minus) *
                   (Real(2) * Real(fp.prim.f_slope) * Real(fp.A_minus) - Real(fp.prim.tr0_dx_vminus));
    const Real re = -b2m * dAre + mm * b1m * Aim;
    const Real im = -t * mm * E - b2m * dAim - mm * b1m * Are;
    out.symbol_value = {static_cast<double>(re), static_cast<double>(im)};
    return out;
}

SymbolODESolution ode_oracle_phi(const FrozenPoint& fp, int m, double tau, const FluidParams& params) {
    require_mode(m);
    require_tau(tau);
    require_precision(fp.D * m);
    using boost::multiprecision::cosh;

    const Real a = fp.a, D = fp.D, t = tau, mm = m, one = 1;
    const Real tV = t * Real(fp.V);
    const Real top = Real(params.g * params.rho_plus) - (one - t) * Real(fp.V);

    const auto B0 = mode_value<4>(a, D, m, Real(0), 0, tV, one);
    const Real scale = cosh(D * mm);
    const auto B1s = mode_value<4>(a, D, m, Real(1), 0, tV, scale);
    Assembler<4> sys;
    sys.add(B0.re, Real(0));
    sys.add(B0.im, Real(0));
    sys.add(B1s.re, top / scale);
    sys.add(B1s.im, Real(0));

    SymbolODESolution out;
    const auto x = sys.solve(out.boundary_residual);
    for (int i = 0; i < 4; ++i) out.coefficients.push_back(static_cast<double>(x[i]));

    const auto B1 = mode_value<4>(a, D, m, Real(1), 0, tV, one);
    const Real Bre = B1.re.eval(x), Bim = B1.im.eval(x);
    const Real dBre = B1.dre.eval(x), dBim = B1.dim.eval(x);
    const Real b1 = fp.beta1, b2 = fp.beta2;
    const Real E = Real(params.k / params.mu_plus) *
                   (Real(2) * Real(fp.prim.h_slope) * Real(fp.V) - Real(fp.prim.tr1_dx_vplus));
    const Real re = -b2 * dBre + mm * b1 * Bim;
    const Real im = -t * mm * E - b2 * dBim - mm * b1 * Bre;
    out.symbol_value = {static_cast<double>(re), static_cast<double>(im)};
    return out;
}

std::vector<DiscrepancyRow> lambda_discrepancy_report(const FrozenPoint& fp, int m_max,
                                                      const std::vector<double>& taus, const FluidParams& params) {
    if (m_max < 1) throw InvalidArgument("discrepancy report: m_max must be positive");
    std::vector<DiscrepancyRow> rows;
    for (double tau : taus)
        for (int m = 1; m <= m_max; ++m)
            rows.push_back({m, tau, lambda_symbol(fp, m, tau, params), lambda_symbol_transposed(fp, m, tau, params),
                            ode_oracle_lambda(fp, m, tau, params).symbol_value});
    return rows;
}

std::vector<DiscrepancyRow> phi_discrepancy_report(const FrozenPoint& fp, int m_max, const std::vector<double>& taus,
                                                   const FluidParams& params) {
    if (m_max < 1) throw InvalidArgument("discrepancy report: m_max must be positive");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<DiscrepancyRow> rows;
    for (double tau : taus)
        for (int m = 1; m <= m_max; ++m)
            rows.push_back({m, tau, phi_symbol(fp, m, tau, params), {nan, nan},
                            ode_oracle_phi(fp, m, tau, params).symbol_value});
    return rows;
}

MarcinkiewiczReport marcinkiewicz_check(const std::function<std::complex<double>(int)>& symbol, int m_max,
                                        std::complex<double> lambda, int order_gain) {
    if (m_max < 1) throw InvalidArgument("marcinkiewicz_check: m_max must be positive");
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw InvalidArgument("marcinkiewicz_check: lambda must be finite");

    const int n = 2 * m_max + 1;
    std::vector<std::complex<double>> L(n);
    auto at = [&](int m) -> std::complex<double>& { return L[m + m_max]; };
    for (int m = -m_max; m <= m_max; ++m) {
        if (m == 0) continue;
        const auto lm = symbol(m);
        if (!std::isfinite(lm.real()) || !std::isfinite(lm.imag()))
            throw DomainError("marcinkiewicz_check: non-finite symbol value");
        if (!(lambda.real() > lm.real()))
            throw DomainError("marcinkiewicz_check: Re lambda does not exceed Re lambda_m (resolvent pole in range)");
        at(m) = 1.0 / (lambda - lm);
    }

    MarcinkiewiczReport r;
    const double lam = std::abs(lambda);
    for (int m = -m_max; m <= m_max; ++m) {
        if (m == 0) continue;
        const double am = std::abs(m);
        r.s1 = std::max(r.s1, std::pow(am, order_gain) * std::abs(at(m)));
        r.s1_lambda = std::max(r.s1_lambda, lam * std::abs(at(m)));
        if (m == -1 || m == m_max) continue;
        const double diff = std::abs(at(m + 1) - at(m));
        r.s2 = std::max(r.s2, std::pow(am, order_gain + 1) * diff);
        r.s2_lambda = std::max(r.s2_lambda, lam * am * diff);
    }
    return r;
}

namespace {

double norm2(const PeriodicFn& u) {
    return u.sup_norm() + spectral_derivative(u, 1).sup_norm() + spectral_derivative(u, 2).sup_norm();
}

// Slack of the common condition (1).
double geometric_slack(const InterfacePair& base, double sigma) {
    const double gaps = std::min((base.f - PeriodicFn::constant(base.f.grid(), base.d)).min(), (base.h - base.f).min());
    double slack = gaps - sigma;
    if (sigma > 0.0) slack = std::min(slack, 1.0 / sigma - (norm2(base.f) + norm2(base.h)));
    return slack;
}

void require_region_input(const InterfacePair& base, const FluidParams& params, double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw InvalidArgument("region check: sigma must be >= 0");
    params.validate();
    if (!check_admissible(base).ok) throw DomainError("region check: base is not admissible");
}

}  // namespace

RegionReport region_check_S(const InterfacePair& base, const DiffractionSolution& sol, const FluidParams& params,
                            double sigma, SigmaReading reading) {
    require_region_input(base, params, sigma);
    const Eigen::ArrayXd fd = base.f.values() - base.d;
    const Eigen::ArrayXd hf = base.h.values() - base.f.values();
    const Eigen::ArrayXd dym = sol.tr0_dy_vminus.values();
    const Eigen::ArrayXd dyp = sol.tr0_dy_vplus.values();
    const double drho = params.g * (params.rho_minus - params.rho_plus);

    RegionReport r;
    r.margin_condition2 = (drho - sigma - dym / hf + dyp / fd).minCoeff();
    r.margin_condition2_alternate = (drho + dyp / hf - dym / fd - sigma).minCoeff();
    const double c2 = reading == SigmaReading::printed ? r.margin_condition2 : r.margin_condition2_alternate;
    double c3 = INFINITY;
    if (sigma > 0.0) c3 = 1.0 / sigma - (sol.tr0_dy_vplus.sup_norm() + sol.tr0_dy_vminus.sup_norm());
    r.worst_margin = std::min({geometric_slack(base, sigma), c2, c3});
    r.ok = r.worst_margin > 0.0;
    return r;
}

RegionReport region_check_R(const InterfacePair& base, const DiffractionSolution& sol, const FluidParams& params,
                            double sigma) {
    require_region_input(base, params, sigma);
    const Eigen::ArrayXd hf = base.h.values() - base.f.values();
    RegionReport r;
    r.margin_condition2 = (params.g * params.rho_plus - sigma - sol.tr1_dy_vplus.values() / hf).minCoeff();
    r.margin_condition2_alternate = r.margin_condition2;
    double c3 = INFINITY;
    if (sigma > 0.0) c3 = 1.0 / sigma - sol.tr1_dy_vplus.sup_norm();
    r.worst_margin = std::min({geometric_slack(base, sigma), r.margin_condition2, c3});
    r.ok = r.worst_margin > 0.0;
    return r;
}

}  // namespace muskat
