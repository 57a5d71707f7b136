#pragma once

#include "muskat/operators.hpp"

#include <array>

namespace muskat {

// Right-hand sides, boundary data and operators of the transmission problem
//   L+ v+ = F+ in the plus strip,  L- v- = F- in the minus strip,
//   B+ v+ - B- v- = phi1 and v+ - v- = phi2 on y = 0,
//   v+ = phi3 on y = 1,  v- = phi4 on y = -1.
// Only interior nodes of F_plus/F_minus are read.
struct DiffractionData {
    CoefficientField L_plus, L_minus;
    BoundaryOperator B_plus, B_minus;
    StripField F_plus, F_minus;
    PeriodicFn phi1, phi2, phi3, phi4;
};

struct DiffractionSolution {
    StripField v_plus, v_minus;
    PeriodicFn tr0_vminus, tr0_dy_vminus, tr0_dx_vminus;
    PeriodicFn tr0_vplus, tr0_dy_vplus, tr0_dx_vplus;
    PeriodicFn tr1_vplus, tr1_dy_vplus, tr1_dx_vplus;
    double condition_estimate = 0.0;
    double relative_residual = 0.0;
};

struct LinearizedSolution {
    StripField plus, minus;
};

// Solves on the strips carried by data.L_plus / data.L_minus. Throws
// SolverFailure when the row-equilibrated system has an estimated 1-norm
// condition number above max_condition or the residual check fails.
DiffractionSolution solve_general(const DiffractionData& data, double max_condition = 1e12);

// Attach the cached traces to a pair of fields.
DiffractionSolution make_solution(StripField v_plus, StripField v_minus);

DiffractionSolution solve_potentials(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params,
                                     int n_y);
DiffractionSolution solve_potentials_st(const InterfacePair& fh, const PeriodicFn& b,
                                        const FluidParams& params, int n_y);

LinearizedSolution solve_linearized_f(const InterfacePair& base, const DiffractionSolution& base_solution,
                                      const PeriodicFn& direction, const FluidParams& params,
                                      bool with_surface_tension);
LinearizedSolution solve_linearized_h(const InterfacePair& base, const DiffractionSolution& base_solution,
                                      const PeriodicFn& direction, const FluidParams& params,
                                      bool with_surface_tension);

// Frozen principal coefficients a11 dxx + 2 a12 dxy + a22 dyy and boundary
// coefficients beta1 dx + beta2 dy of one of the two coupled operators.
struct ComplementingInput {
    double a11, a12, a22, beta1, beta2;
};

struct ComplementingReport {
    std::array<double, 2> delta2;
    double quantity;
    bool satisfied;
};

ComplementingReport check_complementing(const std::array<ComplementingInput, 2>& ops, double xi, double tau);

}  // namespace muskat
