#pragma once

#include "muskat/diffraction.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace muskat {

using BoundaryFn = std::function<PeriodicFn(double)>;

struct PhiValue {
    PeriodicFn df_dt;
    PeriodicFn dh_dt;
};

// Right-hand side of the interface evolution for bottom data b.
PhiValue phi(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params, bool surface_tension,
             int n_y);
PhiValue phi_from_solution(const InterfacePair& fh, const DiffractionSolution& sol, const FluidParams& params);

struct Pressures {
    StripField p_plus;
    StripField p_minus;
};

Pressures pressures(const DiffractionSolution& solution, const InterfacePair& fh, const FluidParams& params);

struct RTReport {
    double margin_f = 0.0;
    double margin_h = 0.0;
    bool satisfied = false;
};

RTReport rayleigh_taylor(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params, int n_y);
RTReport rayleigh_taylor_from_solution(const InterfacePair& fh, const DiffractionSolution& sol,
                                       const FluidParams& params);

struct SimState {
    double t = 0.0;
    InterfacePair fh;
    std::optional<DiffractionSolution> last_solution;
};

struct StepResult {
    SimState state;
    double error_estimate = 0.0;  // sup-norm difference of the embedded 4th/5th order updates
    double scaled_error = 0.0;    // error measured against atol + rtol |y|
};

struct StepOptions {
    bool surface_tension = false;
    int n_y = 32;
    double rtol = 1e-6;
    double atol = 1e-9;
};

// One Runge-Kutta-Fehlberg 4(5) step. Throws StepRejected if a stage leaves
// the admissible set.
StepResult step(const SimState& state, double dt, const BoundaryFn& b_at, const FluidParams& params,
                const StepOptions& opts);

enum class Termination { t_end, admissibility_lost, rt_violated, step_failure };
const char* to_string(Termination t);

struct TrajectoryPoint {
    double t;
    PeriodicFn f;
    PeriodicFn h;
    RTReport rt;
    double dt_used;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    Termination reason = Termination::t_end;
    std::string message;
    int rejected_steps = 0;
};

struct SimOptions {
    double t_end = 1.0;
    double rtol = 1e-6;
    double atol = 1e-9;
    double dt_max = 0.1;
    double dt_initial = 0.0;  // 0 selects min(dt_max, cap, 1e-2)
    double cfl_st = 0.5;
    bool surface_tension = false;
    bool stop_on_rt = false;
    int n_y = 32;
    int max_steps = 200000;
};

// Largest step allowed by the surface-tension cap cfl_st / (gamma_max m_max^3 rate_scale).
double surface_tension_dt_cap(const PeriodicGrid& grid, const FluidParams& params, double cfl_st);

Trajectory simulate(const InterfacePair& initial, const BoundaryFn& b_at, const FluidParams& params,
                    const SimOptions& opts);

struct ModeTerm {
    int m = 1;
    double cos_amp = 0.0;
    double sin_amp = 0.0;
};

struct FunctionSpec {
    double constant = 0.0;
    std::vector<ModeTerm> modes;

    PeriodicFn sample(const PeriodicGrid& grid) const;
};

struct SimConfig {
    int n_x = 64;
    int n_y = 32;
    FluidParams params;
    FunctionSpec f{0.0, {}};
    FunctionSpec h{1.0, {}};
    FunctionSpec b{1.0, {}};
    double t_end = 1.0;
    double rtol = 1e-6;
    double atol = 1e-9;
    double dt_max = 0.1;
    double cfl_st = 0.5;
    bool surface_tension = false;
    bool stop_on_rt = false;
    std::string output_dir = "out";
    int snapshot_stride = 1;

    // Throws InvalidArgument on any invalid field.
    void validate() const;
    InterfacePair initial_interfaces() const;
    PeriodicFn bottom() const;
    SimOptions sim_options() const;
};

Trajectory simulate(const SimConfig& config);

// Per-mode Jacobian of phi at an x-independent state from forward differences
// along (sin mx, 0) and (0, sin mx).
Eigen::Matrix2d linearized_matrix(const InterfacePair& fh_equilibrium, const PeriodicFn& b,
                                  const FluidParams& params, int m, bool surface_tension, double eps, int n_y);

struct ModeFit {
    double rate = 0.0;
    double r_squared = 0.0;
    bool accepted = false;
};

// Least-squares line through (t, ln a); accepted iff R^2 >= 0.999.
ModeFit fit_mode_rate(const std::vector<double>& t, const std::vector<double>& amplitude);

}  // namespace muskat
