#include "muskat/config.hpp"
#include "muskat/errors.hpp"
#include "muskat/evolution.hpp"
#include "muskat/symbols.hpp"
#include "muskat/verify.hpp"

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>

using namespace muskat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

// Base state of a config: interfaces at t = 0 and the matching bottom datum.
struct Base {
    SimConfig config;
    InterfacePair fh;
    PeriodicFn b;
};

Base load_base(const std::string& path) {
    auto config = load_config(path);
    auto fh = config.initial_interfaces();
    if (!check_admissible(fh).ok) throw InvalidArgument("initial interfaces are not admissible");
    auto b = config.bottom();
    return {std::move(config), std::move(fh), std::move(b)};
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    const auto config = load_config(config_path);
    const auto traj = simulate(config);
    const std::filesystem::path out = std::filesystem::path(out_dir.empty() ? config.output_dir : out_dir);
    write_trajectory(traj, config, out);
    std::cout << "termination: " << to_string(traj.reason);
    if (!traj.message.empty()) std::cout << " (" << traj.message << ")";
    std::cout << "\nsnapshots written to " << out.string() << '\n';
    return traj.reason == Termination::step_failure ? kExitSolver : kExitOk;
}

int cmd_rtcheck(const std::string& config_path) {
    const auto base = load_base(config_path);
    const auto rt = rayleigh_taylor(base.fh, base.b, base.config.params, base.config.n_y);
    auto report = rt_to_json(rt);
    report["params"] = params_to_json(base.config.params);
    std::cout << report.dump(2) << '\n';
    return kExitOk;
}

void print_row(const char* family, int m, std::complex<double> formula, std::optional<std::complex<double>> oracle) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto o = oracle.value_or(std::complex<double>(nan, nan));
    std::printf("%s,%d,%.17g,%.17g,%.17g,%.17g\n", family, m, formula.real(), formula.imag(), o.real(), o.imag());
}

int cmd_symbols(const std::string& config_path, int m_max, double tau, double x, bool oracle) {
    if (m_max < 1) throw InvalidArgument("--m-max must be at least 1");
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidArgument("--tau must lie in [0, 1]");
    const auto base = load_base(config_path);
    const auto& params = base.config.params;
    const auto sol = base.config.surface_tension ? solve_potentials_st(base.fh, base.b, params, base.config.n_y)
                                                 : solve_potentials(base.fh, base.b, params, base.config.n_y);
    const auto fp = frozen_constants(base.fh, sol, params, x);

    std::printf("family,m,re_formula,im_formula,re_oracle,im_oracle\n");
    for (int m = 1; m <= m_max; ++m) {
        std::optional<std::complex<double>> o;
        if (oracle) o = ode_oracle_lambda(fp, m, tau, params).symbol_value;
        print_row("lambda", m, lambda_symbol(fp, m, tau, params), o);
    }
    for (int m = 1; m <= m_max; ++m) {
        std::optional<std::complex<double>> o;
        if (oracle) o = ode_oracle_phi(fp, m, tau, params).symbol_value;
        print_row("phi", m, phi_symbol(fp, m, tau, params), o);
    }
    if (base.config.surface_tension) {
        for (int m = 1; m <= m_max; ++m) print_row("lambda_st", m, lambda_st_symbol(fp, m), std::nullopt);
        for (int m = 1; m <= m_max; ++m) print_row("phi_st", m, phi_st_symbol(fp, m, params), std::nullopt);
    }
    return kExitOk;
}

std::pair<int, int> parse_modes(const std::string& text) {
    static const std::regex pattern(R"(\s*(\d+)\s*\.\.\s*(\d+)\s*)");
    std::smatch match;
    if (!std::regex_match(text, match, pattern)) throw InvalidArgument("--modes expects a range a..b");
    const int a = std::stoi(match[1]), b = std::stoi(match[2]);
    if (a < 1 || b < a) throw InvalidArgument("--modes requires 1 <= a <= b");
    return {a, b};
}

int cmd_spectrum(const std::string& config_path, const std::string& modes, double eps) {
    const auto [a, b] = parse_modes(modes);
    const auto base = load_base(config_path);
    std::string rows;
    char line[512];
    for (int m = a; m <= b; ++m) {
        const Eigen::Matrix2d J = linearized_matrix(base.fh, base.b, base.config.params, m,
                                                    base.config.surface_tension, eps, base.config.n_y);
        const Eigen::Vector2cd ev = Eigen::EigenSolver<Eigen::Matrix2d>(J, false).eigenvalues();
        std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", m, J(0, 0), J(0, 1),
                      J(1, 0), J(1, 1), ev(0).real(), ev(0).imag(), ev(1).real(), ev(1).imag());
        rows += line;
    }
    std::printf("m,j11,j12,j21,j22,eig1_re,eig1_im,eig2_re,eig2_im\n%s", rows.c_str());
    return kExitOk;
}

int cmd_verify(bool quick) {
    VerifyOptions opt;
    opt.quick = quick;
    const auto checks = run_verify(opt);
    std::size_t width = 5;
    for (const auto& c : checks) width = std::max(width, c.name.size());
    bool all = true;
    for (const auto& c : checks) {
        all = all && c.passed;
        std::printf("%-*s  %s  value=%-12.4g threshold=%-10.4g %s\n", static_cast<int>(width), c.name.c_str(),
                    c.passed ? "PASS" : "FAIL", c.value, c.threshold, c.detail.c_str());
    }
    std::printf("%s\n", all ? "all checks passed" : "some checks FAILED");
    return all ? kExitOk : kExitSolver;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for the two-interface periodic Muskat problem"};
    app.require_subcommand(1);

    std::string config_path, out_dir, modes = "1..8";
    int m_max = 16;
    double tau = 0.0, x = 0.0, eps = 1e-6;
    bool oracle = false, quick = false;

    auto* sim = app.add_subcommand("simulate", "Integrate the interface evolution and write snapshots");
    sim->add_option("--config", config_path, "JSON configuration")->required();
    sim->add_option("--out", out_dir, "Output directory (overrides output_dir in the config)");

    auto* rt = app.add_subcommand("rtcheck", "Report Rayleigh-Taylor margins of the initial state as JSON");
    rt->add_option("--config", config_path, "JSON configuration")->required();

    auto* sym = app.add_subcommand("symbols", "Frozen-coefficient symbols as CSV");
    sym->add_option("--config", config_path, "JSON configuration")->required();
    sym->add_option("--m-max", m_max, "Largest mode number");
    sym->add_option("--tau", tau, "Homotopy parameter in [0, 1]");
    sym->add_option("--x", x, "Freezing point on the circle");
    sym->add_flag("--oracle", oracle, "Also solve the boundary-value ODE for each mode");

    auto* spec = app.add_subcommand("spectrum", "Per-mode 2x2 linearized matrices and eigenvalues as CSV");
    spec->add_option("--config", config_path, "JSON configuration")->required();
    spec->add_option("--modes", modes, "Mode range a..b");
    spec->add_option("--eps", eps, "Finite-difference step");

    auto* ver = app.add_subcommand("verify", "Run the oracle suite and print a pass/fail table");
    ver->add_flag("--quick", quick, "Reduced sample sizes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return cmd_simulate(config_path, out_dir);
        if (*rt) return cmd_rtcheck(config_path);
        if (*sym) return cmd_symbols(config_path, m_max, tau, x, oracle);
        if (*spec) return cmd_spectrum(config_path, modes, eps);
        if (*ver) return cmd_verify(quick);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSolver;
    }
    return kExitOk;
}
