#include "muskat/evolution.hpp"

#include "muskat/errors.hpp"

#include <algorithm>
#include <cmath>

namespace muskat {

PhiValue phi_from_solution(const InterfacePair& fh, const DiffractionSolution& sol, const FluidParams& params) {
    return {-boundary_B_minus(fh.f, params, sol.v_minus), -boundary_B1(fh.f, fh.h, params, sol.v_plus)};
}

PhiValue phi(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params, bool surface_tension,
             int n_y) {
    const auto sol = surface_tension ? solve_potentials_st(fh, b, params, n_y) : solve_potentials(fh, b, params, n_y);
    return phi_from_solution(fh, sol, params);
}

Pressures pressures(const DiffractionSolution& solution, const InterfacePair& fh, const FluidParams& params) {
    Pressures p{solution.v_plus, solution.v_minus};
    p.p_plus.values -= params.g * params.rho_plus * physical_heights_plus(fh.f, fh.h, p.p_plus.strip);
    p.p_minus.values -= params.g * params.rho_minus * physical_heights_minus(fh.f, fh.d, p.p_minus.strip);
    return p;
}

RTReport rayleigh_taylor_from_solution(const InterfacePair& fh, const DiffractionSolution& sol,
                                       const FluidParams& p) {
    const Eigen::ArrayXd f1 = spectral_derivative(fh.f, 1).values();
    const Eigen::ArrayXd h1 = spectral_derivative(fh.h, 1).values();
    const Eigen::ArrayXd fd = fh.f.values() - fh.d;
    const Eigen::ArrayXd gap = fh.h.values() - fh.f.values();
    const Eigen::ArrayXd nf = (1.0 + f1.square()).sqrt();
    const Eigen::ArrayXd nh = (1.0 + h1.square()).sqrt();

    // Physical normal derivatives of p = v - g rho Y through the pulled-back gradient.
    const Eigen::ArrayXd dnp_minus =
        ((1.0 + f1.square()) * sol.tr0_dy_vminus.values() / fd - f1 * sol.tr0_dx_vminus.values()) / nf -
        p.g * p.rho_minus / nf;
    const Eigen::ArrayXd dnp_plus_f =
        ((1.0 + f1.square()) * sol.tr0_dy_vplus.values() / gap - f1 * sol.tr0_dx_vplus.values()) / nf -
        p.g * p.rho_plus / nf;
    const Eigen::ArrayXd dnp_plus_h =
        ((1.0 + h1.square()) * sol.tr1_dy_vplus.values() / gap - h1 * sol.tr1_dx_vplus.values()) / nh -
        p.g * p.rho_plus / nh;

    RTReport r;
    r.margin_f = (-(dnp_minus - dnp_plus_f)).minCoeff();
    r.margin_h = (-dnp_plus_h).minCoeff();
    r.satisfied = r.margin_f > 0.0 && r.margin_h > 0.0;
    return r;
}

RTReport rayleigh_taylor(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params, int n_y) {
    return rayleigh_taylor_from_solution(fh, solve_potentials(fh, b, params, n_y), params);
}

namespace {

// Fehlberg tableau.
constexpr double c2 = 1.0 / 4, c3 = 3.0 / 8, c4 = 12.0 / 13, c5 = 1.0, c6 = 1.0 / 2;
constexpr double a21 = 1.0 / 4;
constexpr double a31 = 3.0 / 32, a32 = 9.0 / 32;
constexpr double a41 = 1932.0 / 2197, a42 = -7200.0 / 2197, a43 = 7296.0 / 2197;
constexpr double a51 = 439.0 / 216, a52 = -8.0, a53 = 3680.0 / 513, a54 = -845.0 / 4104;
constexpr double a61 = -8.0 / 27, a62 = 2.0, a63 = -3544.0 / 2565, a64 = 1859.0 / 4104, a65 = -11.0 / 40;
constexpr double b4[6] = {25.0 / 216, 0.0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0.0};
constexpr double b5[6] = {16.0 / 135, 0.0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50, 2.0 / 55};

struct Vec {
    Eigen::ArrayXd f, h;
};

Vec eval(double t, const Vec& y, const InterfacePair& shape, const BoundaryFn& b_at, const FluidParams& params,
         const StepOptions& opts) {
    const PeriodicGrid& grid = shape.f.grid();
    InterfacePair fh{PeriodicFn(grid, y.f), PeriodicFn(grid, y.h), shape.d};
    if (!check_admissible(fh).ok) throw StepRejected("Runge-Kutta stage left the admissible set");
    try {
        const auto r = phi(fh, b_at(t), params, opts.surface_tension, opts.n_y);
        return {r.df_dt.values(), r.dh_dt.values()};
    } catch (const DomainError& e) {
        throw StepRejected(e.what());
    }
}

Vec combine(const Vec& y, double dt, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = y;
    for (const auto& [w, k] : terms) {
        if (w == 0.0) continue;
        out.f += dt * w * k->f;
        out.h += dt * w * k->h;
    }
    return out;
}

}  // namespace

StepResult step(const SimState& state, double dt, const BoundaryFn& b_at, const FluidParams& params,
                const StepOptions& opts) {
    if (!(dt >= 0.0)) throw InvalidArgument("step: dt must be non-negative");
    if (!check_admissible(state.fh).ok) throw DomainError("step: state is not admissible");
    if (dt == 0.0) return {state, 0.0, 0.0};

    const double t = state.t;
    const Vec y{state.fh.f.values(), state.fh.h.values()};
    const auto& s = state.fh;
    const Vec k1 = eval(t, y, s, b_at, params, opts);
    const Vec k2 = eval(t + c2 * dt, combine(y, dt, {{a21, &k1}}), s, b_at, params, opts);
    const Vec k3 = eval(t + c3 * dt, combine(y, dt, {{a31, &k1}, {a32, &k2}}), s, b_at, params, opts);
    const Vec k4 = eval(t + c4 * dt, combine(y, dt, {{a41, &k1}, {a42, &k2}, {a43, &k3}}), s, b_at, params, opts);
    const Vec k5 =
        eval(t + c5 * dt, combine(y, dt, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}), s, b_at, params, opts);
    const Vec k6 = eval(t + c6 * dt, combine(y, dt, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}), s,
                        b_at, params, opts);

    const Vec y4 = combine(y, dt, {{b4[0], &k1}, {b4[2], &k3}, {b4[3], &k4}, {b4[4], &k5}});
    const Vec y5 = combine(y, dt, {{b5[0], &k1}, {b5[2], &k3}, {b5[3], &k4}, {b5[4], &k5}, {b5[5], &k6}});

    const Eigen::ArrayXd ef = (y5.f - y4.f).abs();
    const Eigen::ArrayXd eh = (y5.h - y4.h).abs();
    const Eigen::ArrayXd sf = opts.atol + opts.rtol * y.f.abs().max(y4.f.abs());
    const Eigen::ArrayXd sh = opts.atol + opts.rtol * y.h.abs().max(y4.h.abs());

    StepResult r;
    r.error_estimate = std::max(ef.maxCoeff(), eh.maxCoeff());
    r.scaled_error = std::max((ef / sf).maxCoeff(), (eh / sh).maxCoeff());
    const PeriodicGrid& grid = s.f.grid();
    r.state.t = t + dt;
    r.state.fh = InterfacePair{PeriodicFn(grid, y4.f), PeriodicFn(grid, y4.h), s.d};
    return r;
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::t_end: return "t_end";
        case Termination::admissibility_lost: return "admissibility_lost";
        case Termination::rt_violated: return "rt_violated";
        case Termination::step_failure: return "step_failure";
    }
    return "unknown";
}

double surface_tension_dt_cap(const PeriodicGrid& grid, const FluidParams& params, double cfl_st) {
    const double gamma_max = std::max(params.gamma_f, params.gamma_h);
    if (gamma_max <= 0.0) return INFINITY;
    const double m_max = grid.n_x / 3;
    const double rate_scale = params.k / std::min(params.mu_minus, params.mu_plus);
    return cfl_st / (gamma_max * m_max * m_max * m_max * rate_scale);
}

Trajectory simulate(const InterfacePair& initial, const BoundaryFn& b_at, const FluidParams& params,
                    const SimOptions& opts) {
    Trajectory traj;
    StepOptions so{opts.surface_tension, opts.n_y, opts.rtol, opts.atol};
    SimState state{0.0, initial, std::nullopt};

    auto record = [&](const SimState& s, double dt_used) -> bool {
        RTReport rt;
        try {
            rt = rayleigh_taylor(s.fh, b_at(s.t), params, opts.n_y);
        } catch (const SolverFailure& e) {
            traj.reason = Termination::step_failure;
            traj.message = e.what();
            return false;
        }
        traj.points.push_back({s.t, s.fh.f, s.fh.h, rt, dt_used});
        if (opts.stop_on_rt && !opts.surface_tension && !rt.satisfied) {
            traj.reason = Termination::rt_violated;
            traj.message = "Rayleigh-Taylor condition violated";
            return false;
        }
        return true;
    };

    try {
        params.validate();
    } catch (const InvalidArgument& e) {
        traj.reason = Termination::step_failure;
        traj.message = e.what();
        return traj;
    }
    if (!check_admissible(initial).ok) {
        traj.reason = Termination::admissibility_lost;
        traj.message = "initial interfaces are not admissible";
        return traj;
    }
    if (!record(state, 0.0)) return traj;

    const double cap = opts.surface_tension ? surface_tension_dt_cap(initial.f.grid(), params, opts.cfl_st) : INFINITY;
    const double dt_limit = std::min(opts.dt_max, cap);
    double dt = opts.dt_initial > 0.0 ? std::min(opts.dt_initial, dt_limit) : std::min({dt_limit, 1e-2});
    const double dt_min = 1e-12 * std::max(1.0, opts.t_end);

    int steps = 0;
    while (state.t < opts.t_end * (1.0 - 1e-14)) {
        if (++steps > opts.max_steps) {
            traj.reason = Termination::step_failure;
            traj.message = "maximum number of steps exceeded";
            return traj;
        }
        const double h = std::min(dt, opts.t_end - state.t);
        StepResult r;
        try {
            r = step(state, h, b_at, params, so);
        } catch (const StepRejected&) {
            ++traj.rejected_steps;
            dt = 0.5 * h;
            if (dt < dt_min) {
                traj.reason = Termination::admissibility_lost;
                traj.message = "step size underflow while staying admissible";
                return traj;
            }
            continue;
        } catch (const SolverFailure& e) {
            traj.reason = Termination::step_failure;
            traj.message = e.what();
            return traj;
        }
        const double err = r.scaled_error;
        const double factor = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
        if (err > 1.0) {
            ++traj.rejected_steps;
            dt = h * factor;
            if (dt < dt_min) {
                traj.reason = Termination::step_failure;
                traj.message = "step size underflow in error control";
                return traj;
            }
            continue;
        }
        state.t = r.state.t;
        state.fh.f = dealias(r.state.fh.f);
        state.fh.h = dealias(r.state.fh.h);
        if (!check_admissible(state.fh).ok) {
            traj.reason = Termination::admissibility_lost;
            traj.message = "interfaces touched after an accepted step";
            return traj;
        }
        if (!record(state, h)) return traj;
        dt = std::min(h * factor, dt_limit);
    }
    traj.reason = Termination::t_end;
    return traj;
}

PeriodicFn FunctionSpec::sample(const PeriodicGrid& grid) const {
    return PeriodicFn::sample(grid, [this](double x) {
        double v = constant;
        for (const auto& t : modes) v += t.cos_amp * std::cos(t.m * x) + t.sin_amp * std::sin(t.m * x);
        return v;
    });
}

void SimConfig::validate() const {
    make_grid(n_x);
    if (n_y < 8) throw InvalidArgument("n_y must be >= 8");
    params.validate();
    for (const FunctionSpec* s : {&f, &h, &b}) {
        if (!std::isfinite(s->constant)) throw InvalidArgument("non-finite constant in function spec");
        for (const auto& t : s->modes) {
            if (t.m < 0) throw InvalidArgument("mode numbers must be non-negative");
            if (2 * t.m >= n_x) throw InvalidArgument("mode number beyond the resolved range");
            if (!std::isfinite(t.cos_amp) || !std::isfinite(t.sin_amp)) throw InvalidArgument("non-finite amplitude");
        }
    }
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be positive");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw InvalidArgument("tolerances must be positive");
    if (!(dt_max > 0.0) || !std::isfinite(dt_max)) throw InvalidArgument("dt_max must be positive");
    if (!(cfl_st > 0.0) || !std::isfinite(cfl_st)) throw InvalidArgument("cfl_st must be positive");
    if (snapshot_stride < 1) throw InvalidArgument("snapshot_stride must be >= 1");
}

InterfacePair SimConfig::initial_interfaces() const {
    const auto grid = make_grid(n_x);
    return {f.sample(grid), h.sample(grid), params.d};
}

PeriodicFn SimConfig::bottom() const { return b.sample(make_grid(n_x)); }

SimOptions SimConfig::sim_options() const {
    SimOptions o;
    o.t_end = t_end;
    o.rtol = rtol;
    o.atol = atol;
    o.dt_max = dt_max;
    o.cfl_st = cfl_st;
    o.surface_tension = surface_tension;
    o.stop_on_rt = stop_on_rt;
    o.n_y = n_y;
    return o;
}

Trajectory simulate(const SimConfig& config) {
    config.validate();
    const PeriodicFn b = config.bottom();
    return simulate(config.initial_interfaces(), [b](double) { return b; }, config.params, config.sim_options());
}

Eigen::Matrix2d linearized_matrix(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params, int m,
                                  bool surface_tension, double eps, int n_y) {
    auto flat = [](const PeriodicFn& u) { return u.max() - u.min() <= 1e-12 * std::max(1.0, u.sup_norm()); };
    if (!flat(fh.f) || !flat(fh.h) || !flat(b))
        throw InvalidArgument("linearized_matrix requires an x-independent base state");
    if (m < 1 || 2 * m >= fh.f.size()) throw InvalidArgument("linearized_matrix: mode out of range");
    if (!(eps > 0.0)) throw InvalidArgument("linearized_matrix: eps must be positive");

    const auto grid = fh.f.grid();
    const auto mode = PeriodicFn::sample(grid, [m](double x) { return std::sin(m * x); });
    const auto base = phi(fh, b, params, surface_tension, n_y);

    Eigen::Matrix2d J;
    for (int c = 0; c < 2; ++c) {
        InterfacePair p = fh;
        if (c == 0) p.f += eps * mode;
        else p.h += eps * mode;
        const auto r = phi(p, b, params, surface_tension, n_y);
        J(0, c) = sine_coefficient(r.df_dt - base.df_dt, m) / eps;
        J(1, c) = sine_coefficient(r.dh_dt - base.dh_dt, m) / eps;
    }
    return J;
}

ModeFit fit_mode_rate(const std::vector<double>& t, const std::vector<double>& amplitude) {
    if (t.size() != amplitude.size() || t.size() < 3) throw InvalidArgument("fit_mode_rate: need >= 3 samples");
    const int n = static_cast<int>(t.size());
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::vector<double> y(n);
    for (int i = 0; i < n; ++i) {
        if (!(amplitude[i] > 0.0)) throw InvalidArgument("fit_mode_rate: amplitudes must be positive");
        y[i] = std::log(amplitude[i]);
        st += t[i];
        sy += y[i];
        stt += t[i] * t[i];
        sty += t[i] * y[i];
    }
    const double den = n * stt - st * st;
    if (!(den > 0.0)) throw InvalidArgument("fit_mode_rate: degenerate time samples");
    ModeFit fit;
    fit.rate = (n * sty - st * sy) / den;
    const double icpt = (sy - fit.rate * st) / n;
    const double ybar = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (int i = 0; i < n; ++i) {
        const double e = y[i] - (icpt + fit.rate * t[i]);
        ss_res += e * e;
        ss_tot += (y[i] - ybar) * (y[i] - ybar);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.accepted = fit.r_squared >= 0.999;
    return fit;
}

}  // namespace muskat
