#pragma once

#include "muskat/diffraction.hpp"

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace muskat {

// Pointwise data from which every frozen constant is built.
struct FrozenPrimitives {
    double f_slope = 0.0;  // f'(x)
    double h_slope = 0.0;  // h'(x)
    double gap_fd = 1.0;   // f(x) - d
    double gap_hf = 1.0;   // h(x) - f(x)
    double tr0_dy_vminus = 0.0, tr0_dx_vminus = 0.0;
    double tr0_dy_vplus = 0.0, tr0_dx_vplus = 0.0;
    double tr1_dy_vplus = 0.0, tr1_dx_vplus = 0.0;
};

struct FrozenPoint {
    FrozenPrimitives prim;

    // Two-strip constants at y = 0.
    double a_plus = 0.0, a_minus = 0.0;
    double b_plus = 1.0, b_minus = 1.0;
    double D_plus = 1.0, D_minus = 1.0;
    double beta1_plus = 0.0, beta1_minus = 0.0;
    double beta2_plus = 1.0, beta2_minus = 1.0;
    double A_plus = 0.0, A_minus = 0.0;
    double B = 0.0;
    double Delta_rho = 0.0;
    double Delta_A = 0.0;

    // Single-strip constants at y = 1.
    double a = 0.0, b = 1.0, D = 1.0;
    double beta1 = 0.0, beta2 = 1.0;
    double V = 0.0;

    double V_f = 0.0, V_h = 0.0;
};

// Throws DomainError if a gap is not positive.
FrozenPoint frozen_point(const FrozenPrimitives& prim, const FluidParams& params);

// Interfaces and traces are interpolated trigonometrically at x.
FrozenPoint frozen_constants(const InterfacePair& base, const DiffractionSolution& base_solution,
                             const FluidParams& params, double x);

std::complex<double> lambda_symbol(const FrozenPoint& fp, int m, double tau, const FluidParams& params);
std::complex<double> phi_symbol(const FrozenPoint& fp, int m, double tau, const FluidParams& params);
double lambda_st_symbol(const FrozenPoint& fp, int m);
double phi_st_symbol(const FrozenPoint& fp, int m, const FluidParams& params);

// Variant of lambda_symbol with cos(a m), sin(a m) in place of cos(D m), sin(D m).
std::complex<double> lambda_symbol_transposed(const FrozenPoint& fp, int m, double tau, const FluidParams& params);

struct SymbolODESolution {
    std::vector<double> coefficients;  // xi_1..4 (+) then xi_1..4 (-), or zeta_1..4
    std::complex<double> symbol_value;
    double boundary_residual = 0.0;    // largest relative residual of the imposed conditions
};

// Solve the boundary-value problems for the frozen mode functions in extended
// precision. Throws SolverFailure when |D m| exceeds the precision budget.
SymbolODESolution ode_oracle_lambda(const FrozenPoint& fp, int m, double tau, const FluidParams& params);
SymbolODESolution ode_oracle_phi(const FrozenPoint& fp, int m, double tau, const FluidParams& params);

// Largest |D m| accepted by the oracles.
double oracle_exponent_limit();

struct DiscrepancyRow {
    int m;
    double tau;
    std::complex<double> printed;
    std::complex<double> transposed;
    std::complex<double> oracle;
};

std::vector<DiscrepancyRow> lambda_discrepancy_report(const FrozenPoint& fp, int m_max,
                                                      const std::vector<double>& taus, const FluidParams& params);
std::vector<DiscrepancyRow> phi_discrepancy_report(const FrozenPoint& fp, int m_max,
                                                   const std::vector<double>& taus, const FluidParams& params);

struct MarcinkiewiczReport {
    double s1 = 0.0;         // max |m|^g |L_m|
    double s2 = 0.0;         // max |m|^(g+1) |L_{m+1} - L_m|
    double s1_lambda = 0.0;  // max |lambda| |L_m|
    double s2_lambda = 0.0;  // max |lambda| |m| |L_{m+1} - L_m|
};

// L_m = (lambda - lambda_m)^{-1} over 0 < |m| <= m_max. Throws DomainError
// unless Re lambda exceeds every Re lambda_m in range.
MarcinkiewiczReport marcinkiewicz_check(const std::function<std::complex<double>(int)>& symbol, int m_max,
                                        std::complex<double> lambda, int order_gain);

struct RegionReport {
    bool ok = false;
    double worst_margin = 0.0;
    double margin_condition2 = 0.0;
    double margin_condition2_alternate = 0.0;
};

enum class SigmaReading { printed, alternate };

RegionReport region_check_S(const InterfacePair& base, const DiffractionSolution& base_solution,
                            const FluidParams& params, double sigma, SigmaReading reading = SigmaReading::printed);
RegionReport region_check_R(const InterfacePair& base, const DiffractionSolution& base_solution,
                            const FluidParams& params, double sigma);

}  // namespace muskat
