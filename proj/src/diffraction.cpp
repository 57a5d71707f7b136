#include "muskat/diffraction.hpp"

#include "muskat/errors.hpp"

#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>
#include <vector>

namespace muskat {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;
using RowMajor = Eigen::SparseMatrix<double, Eigen::RowMajor>;

void check_data(const DiffractionData& d) {
    const StripGrid& sp = d.L_plus.strip;
    const StripGrid& sm = d.L_minus.strip;
    if (sp.side != Side::plus || sm.side != Side::minus)
        throw InvalidArgument("diffraction data: coefficient fields on the wrong strips");
    if (!(sp.grid == sm.grid)) throw InvalidArgument("diffraction data: strips use different x-grids");
    if (!(d.F_plus.strip == sp) || !(d.F_minus.strip == sm))
        throw InvalidArgument("diffraction data: right-hand side shape mismatch");
    const int n = sp.grid.n_x;
    for (const PeriodicFn* p : {&d.phi1, &d.phi2, &d.phi3, &d.phi4})
        if (!(p->grid() == sp.grid)) throw InvalidArgument("diffraction data: boundary datum grid mismatch");
    for (const BoundaryOperator* b : {&d.B_plus, &d.B_minus})
        if (b->beta1.size() != n || b->beta2.size() != n || b->gamma.size() != n)
            throw InvalidArgument("diffraction data: boundary operator size mismatch");
    if (!d.L_plus.is_elliptic() || !d.L_minus.is_elliptic())
        throw DomainError("diffraction data: coefficient field is not elliptic");
    if (!(d.B_plus.beta2 > 0.0).all() || !(d.B_minus.beta2 > 0.0).all())
        throw DomainError("diffraction data: normal coefficient of an interface operator is not positive");
}

// Hager's estimate of ||A^{-1}||_1 with Higham's alternating-sign safeguard.
double inverse_norm1_estimate(Eigen::SparseLU<Eigen::SparseMatrix<double>>& lu, int n) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
    double est = 0.0;
    int last_j = -1;
    for (int it = 0; it < 5; ++it) {
        const Eigen::VectorXd y = lu.solve(x);
        est = std::max(est, y.lpNorm<1>());
        const Eigen::VectorXd xi = y.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
        const Eigen::VectorXd z = lu.transpose().solve(xi);
        Eigen::Index j = 0;
        const double zmax = z.cwiseAbs().maxCoeff(&j);
        if (zmax <= z.dot(x) || j == last_j) break;
        x.setZero();
        x[j] = 1.0;
        last_j = static_cast<int>(j);
    }
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b[i] = (i % 2 == 0 ? 1.0 : -1.0) * (1.0 + static_cast<double>(i) / std::max(1, n - 1));
    est = std::max(est, 2.0 * lu.solve(b).lpNorm<1>() / (3.0 * n));
    return est;
}

void append_rows(Triplets& t, Eigen::VectorXd& rhs, const RowMajor& op, const StripField& F, int offset) {
    const StripGrid& s = F.strip;
    for (int j = 1; j < s.n_y; ++j) {
        for (int i = 0; i < s.grid.n_x; ++i) {
            const int r = s.index(i, j);
            for (RowMajor::InnerIterator it(op, r); it; ++it) t.emplace_back(offset + r, offset + it.col(), it.value());
            rhs[offset + r] = F.values(i, j);
        }
    }
}

// Entries of sign * (beta1 tr dx + beta2 tr dy + gamma tr) at node i of an edge.
void append_boundary(Triplets& t, int row, int i, double sign, const BoundaryOperator& op, const StripGrid& s,
                     Edge edge, int offset, const Eigen::MatrixXd& Dx) {
    const int level = edge == Edge::lower ? 0 : s.n_y;
    const int n = s.grid.n_x;
    if (op.beta1[i] != 0.0)
        for (int k = 0; k < n; ++k)
            if (Dx(i, k) != 0.0) t.emplace_back(row, offset + s.index(k, level), sign * op.beta1[i] * Dx(i, k));
    for (const auto& [j, w] : edge_dy_stencil(s, edge))
        t.emplace_back(row, offset + s.index(i, j), sign * op.beta2[i] * w);
    if (op.gamma[i] != 0.0) t.emplace_back(row, offset + s.index(i, level), sign * op.gamma[i]);
}

}  // namespace

DiffractionSolution make_solution(StripField v_plus, StripField v_minus) {
    DiffractionSolution s;
    s.tr0_vminus = trace(v_minus, Edge::upper);
    s.tr0_dy_vminus = trace_dy(v_minus, Edge::upper);
    s.tr0_dx_vminus = trace_dx(v_minus, Edge::upper);
    s.tr0_vplus = trace(v_plus, Edge::lower);
    s.tr0_dy_vplus = trace_dy(v_plus, Edge::lower);
    s.tr0_dx_vplus = trace_dx(v_plus, Edge::lower);
    s.tr1_vplus = trace(v_plus, Edge::upper);
    s.tr1_dy_vplus = trace_dy(v_plus, Edge::upper);
    s.tr1_dx_vplus = trace_dx(v_plus, Edge::upper);
    s.v_plus = std::move(v_plus);
    s.v_minus = std::move(v_minus);
    return s;
}

DiffractionSolution solve_general(const DiffractionData& data, double max_condition) {
    check_data(data);
    const StripGrid& sm = data.L_minus.strip;
    const StripGrid& sp = data.L_plus.strip;
    const int nx = sm.grid.n_x;
    const int off_m = 0;
    const int off_p = sm.size();
    const int N = sm.size() + sp.size();

    const Eigen::MatrixXd Dx = spectral_dx_matrix(sm.grid);
    const RowMajor Lm = strip_operator_matrix(data.L_minus);
    const RowMajor Lp = strip_operator_matrix(data.L_plus);

    Triplets t;
    t.reserve(static_cast<size_t>(N) * 22 + static_cast<size_t>(2 * nx * nx));
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);

    append_rows(t, rhs, Lm, data.F_minus, off_m);
    append_rows(t, rhs, Lp, data.F_plus, off_p);
    for (int i = 0; i < nx; ++i) {
        // Dirichlet on y = -1.
        int r = off_m + sm.index(i, 0);
        t.emplace_back(r, r, 1.0);
        rhs[r] = data.phi4[i];
        // Flux transmission on y = 0, placed in the minus-strip top row.
        r = off_m + sm.index(i, sm.n_y);
        append_boundary(t, r, i, 1.0, data.B_plus, sp, Edge::lower, off_p, Dx);
        append_boundary(t, r, i, -1.0, data.B_minus, sm, Edge::upper, off_m, Dx);
        rhs[r] = data.phi1[i];
        // Value jump on y = 0, placed in the plus-strip bottom row.
        r = off_p + sp.index(i, 0);
        t.emplace_back(r, r, 1.0);
        t.emplace_back(r, off_m + sm.index(i, sm.n_y), -1.0);
        rhs[r] = data.phi2[i];
        // Dirichlet on y = 1.
        r = off_p + sp.index(i, sp.n_y);
        t.emplace_back(r, r, 1.0);
        rhs[r] = data.phi3[i];
    }

    Eigen::SparseMatrix<double> A(N, N);
    A.setFromTriplets(t.begin(), t.end());

    // Row equilibration.
    Eigen::VectorXd row_max = Eigen::VectorXd::Zero(N);
    for (int c = 0; c < A.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it)
            row_max[it.row()] = std::max(row_max[it.row()], std::abs(it.value()));
    for (int r = 0; r < N; ++r) {
        if (row_max[r] == 0.0) throw SolverFailure("diffraction system has an empty row", INFINITY);
        row_max[r] = 1.0 / row_max[r];
    }
    A = row_max.asDiagonal() * A;
    rhs = row_max.asDiagonal() * rhs;
    A.makeCompressed();

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw SolverFailure("sparse LU factorization failed: " + lu.lastErrorMessage(), INFINITY);

    double norm1 = 0.0;
    for (int c = 0; c < A.outerSize(); ++c) {
        double s = 0.0;
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) s += std::abs(it.value());
        norm1 = std::max(norm1, s);
    }
    const double cond = norm1 * inverse_norm1_estimate(lu, N);
    if (!(cond <= max_condition)) {
        std::ostringstream msg;
        msg << "diffraction system is ill-conditioned (estimated condition " << cond << ")";
        throw SolverFailure(msg.str(), cond);
    }

    Eigen::VectorXd x = lu.solve(rhs);
    Eigen::VectorXd res = rhs - A * x;
    x += lu.solve(res);
    res = rhs - A * x;

    double norm_inf = 0.0;
    {
        Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(N);
        for (int c = 0; c < A.outerSize(); ++c)
            for (Eigen::SparseMatrix<double>::InnerIterator it(A, c); it; ++it) row_sum[it.row()] += std::abs(it.value());
        norm_inf = row_sum.maxCoeff();
    }
    const double denom = norm_inf * x.lpNorm<Eigen::Infinity>() + rhs.lpNorm<Eigen::Infinity>();
    const double rel = denom > 0.0 ? res.lpNorm<Eigen::Infinity>() / denom : 0.0;
    if (!(rel < 1e-10) || !x.allFinite()) throw SolverFailure("diffraction solve residual check failed", cond);

    auto sol = make_solution(StripField::from_flat(sp, x.segment(off_p, sp.size())),
                             StripField::from_flat(sm, x.segment(off_m, sm.size())));
    sol.condition_estimate = cond;
    sol.relative_residual = rel;
    return sol;
}

namespace {

DiffractionData potential_data(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params, int n_y) {
    params.validate();
    if (fh.d != params.d) throw InvalidArgument("interface pair and fluid parameters disagree on d");
    require_same_grid(fh.f, b);
    const auto adm = check_admissible(fh);
    if (!adm.ok) throw DomainError("interfaces are not admissible (need d < f < h)");
    const auto sp = make_strip(fh.f.grid(), n_y, Side::plus);
    const auto sm = make_strip(fh.f.grid(), n_y, Side::minus);
    DiffractionData d{coeffs_A_plus(fh.f, fh.h, params, sp),
                      coeffs_A_minus(fh.f, params, sm),
                      make_B_plus(fh.f, fh.h, params),
                      make_B_minus(fh.f, params),
                      StripField::zeros(sp),
                      StripField::zeros(sm),
                      PeriodicFn::constant(fh.f.grid(), 0.0),
                      params.g * (params.rho_plus - params.rho_minus) * fh.f,
                      params.g * params.rho_plus * fh.h,
                      b};
    return d;
}

}  // namespace

DiffractionSolution solve_potentials(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params,
                                     int n_y) {
    return solve_general(potential_data(fh, b, params, n_y));
}

DiffractionSolution solve_potentials_st(const InterfacePair& fh, const PeriodicFn& b, const FluidParams& params,
                                        int n_y) {
    auto data = potential_data(fh, b, params, n_y);
    data.phi2 += params.gamma_f * curvature(fh.f);
    data.phi3 -= params.gamma_h * curvature(fh.h);
    return solve_general(data);
}

LinearizedSolution solve_linearized_f(const InterfacePair& base, const DiffractionSolution& base_solution,
                                      const PeriodicFn& direction, const FluidParams& params,
                                      bool with_surface_tension) {
    const int n_y = base_solution.v_plus.strip.n_y;
    auto data = potential_data(base, PeriodicFn::constant(base.f.grid(), 0.0), params, n_y);
    const auto& vp = base_solution.v_plus;
    const auto& vm = base_solution.v_minus;
    data.F_plus = apply_operator(frechet_A(FrechetA::plus_f, base, direction, params, vp.strip), vp);
    data.F_plus.values *= -1.0;
    data.F_minus = apply_operator(frechet_A(FrechetA::minus_f, base, direction, params, vm.strip), vm);
    data.F_minus.values *= -1.0;
    data.phi1 = frechet_B(FrechetB::B_minus_f, base, direction, params, vm) -
                frechet_B(FrechetB::B_plus_f, base, direction, params, vp);
    data.phi2 = params.g * (params.rho_plus - params.rho_minus) * direction;
    if (with_surface_tension) data.phi2 += params.gamma_f * curvature_frechet(base.f, direction);
    data.phi3 = PeriodicFn::constant(base.f.grid(), 0.0);
    data.phi4 = data.phi3;
    auto sol = solve_general(data);
    return {std::move(sol.v_plus), std::move(sol.v_minus)};
}

LinearizedSolution solve_linearized_h(const InterfacePair& base, const DiffractionSolution& base_solution,
                                      const PeriodicFn& direction, const FluidParams& params,
                                      bool with_surface_tension) {
    const int n_y = base_solution.v_plus.strip.n_y;
    auto data = potential_data(base, PeriodicFn::constant(base.f.grid(), 0.0), params, n_y);
    const auto& vp = base_solution.v_plus;
    data.F_plus = apply_operator(frechet_A(FrechetA::plus_h, base, direction, params, vp.strip), vp);
    data.F_plus.values *= -1.0;
    data.phi1 = -frechet_B(FrechetB::B_plus_h, base, direction, params, vp);
    data.phi2 = PeriodicFn::constant(base.f.grid(), 0.0);
    data.phi3 = params.g * params.rho_plus * direction;
    if (with_surface_tension) data.phi3 -= params.gamma_h * curvature_frechet(base.h, direction);
    data.phi4 = data.phi2;
    auto sol = solve_general(data);
    return {std::move(sol.v_plus), std::move(sol.v_minus)};
}

ComplementingReport check_complementing(const std::array<ComplementingInput, 2>& ops, double xi, double tau) {
    if (xi == 0.0 || !std::isfinite(xi)) throw InvalidArgument("check_complementing: xi must be nonzero");
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidArgument("check_complementing: tau must lie in [0, 1]");
    ComplementingReport r{};
    r.quantity = 0.0;
    for (int k = 0; k < 2; ++k) {
        const auto& o = ops[k];
        if (!(o.a11 > 0.0 && o.a22 > 0.0 && o.a11 * o.a22 > o.a12 * o.a12))
            throw DomainError("check_complementing: principal part is not elliptic");
        if (!(o.beta2 > 0.0)) throw DomainError("check_complementing: beta2 must be positive");
        const double den = (1.0 - tau) * o.a22 + tau;
        const double A1 = -2.0 * (1.0 - tau) * o.a12 * xi / den;
        const double A2 = ((1.0 - tau) * o.a11 + tau) * xi * xi / den;
        r.delta2[k] = std::sqrt(A2 - 0.25 * A1 * A1);
        r.quantity += r.delta2[k] * ((1.0 - tau) * o.beta2 + tau);
    }
    r.satisfied = r.quantity > 0.0;
    return r;
}

}  // namespace muskat
