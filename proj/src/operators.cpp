#include "muskat/operators.hpp"

#include "muskat/errors.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace muskat {

namespace {

struct InterfaceDerivs {
    Eigen::ArrayXd v, d1, d2;
};

InterfaceDerivs derivs(const PeriodicFn& u) {
    return {u.values(), spectral_derivative(u, 1).values(), spectral_derivative(u, 2).values()};
}

void require_positive(const Eigen::ArrayXd& gap, const char* what) {
    if (!(gap.minCoeff() > 0.0)) throw DomainError(std::string("inadmissible interfaces: ") + what);
}

void require_side(const StripGrid& strip, Side side) {
    if (strip.side != side) throw InvalidArgument("strip is on the wrong side of the interface");
}

int edge_level(const StripGrid& strip, Edge edge) { return edge == Edge::lower ? 0 : strip.n_y; }

}  // namespace

void FluidParams::validate() const {
    const double all[] = {k, mu_minus, mu_plus, rho_minus, rho_plus, g, gamma_f, gamma_h, d};
    for (double v : all)
        if (!std::isfinite(v)) throw InvalidArgument("fluid parameters must be finite");
    if (!(k > 0.0)) throw InvalidArgument("permeability k must be positive");
    if (!(mu_minus > 0.0) || !(mu_plus > 0.0)) throw InvalidArgument("viscosities must be positive");
    if (rho_minus < 0.0 || rho_plus < 0.0) throw InvalidArgument("densities must be non-negative");
    if (g < 0.0) throw InvalidArgument("gravity must be non-negative");
    if (gamma_f < 0.0 || gamma_h < 0.0) throw InvalidArgument("surface tension must be non-negative");
    if (!(d < 0.0)) throw InvalidArgument("bottom height d must be negative");
}

StripGrid make_strip(const PeriodicGrid& grid, int n_y, Side side) {
    if (n_y < 8) throw InvalidArgument("strip resolution n_y must be >= 8");
    return StripGrid{grid, n_y, side};
}

StripField StripField::zeros(const StripGrid& strip) {
    return {strip, Eigen::ArrayXXd::Zero(strip.grid.n_x, strip.levels())};
}

StripField StripField::sample(const StripGrid& strip, const std::function<double(double, double)>& fn) {
    StripField out = zeros(strip);
    for (int j = 0; j < strip.levels(); ++j)
        for (int i = 0; i < strip.grid.n_x; ++i) out.values(i, j) = fn(strip.grid.node(i), strip.y(j));
    return out;
}

Eigen::VectorXd StripField::flat() const {
    return Eigen::Map<const Eigen::VectorXd>(values.data(), values.size());
}

StripField StripField::from_flat(const StripGrid& strip, const Eigen::VectorXd& v) {
    if (v.size() != strip.size()) throw InvalidArgument("flat vector does not match strip size");
    return {strip, Eigen::Map<const Eigen::ArrayXXd>(v.data(), strip.grid.n_x, strip.levels())};
}

CoefficientField CoefficientField::zeros(const StripGrid& strip) {
    const auto z = Eigen::ArrayXXd::Zero(strip.grid.n_x, strip.levels());
    return {strip, z, z, z, z, z, z};
}

CoefficientField CoefficientField::laplacian(const StripGrid& strip) {
    auto c = zeros(strip);
    c.c_xx.setOnes();
    c.c_yy.setOnes();
    return c;
}

bool CoefficientField::is_elliptic() const {
    return (c_xx > 0.0).all() && (c_yy > 0.0).all() && (4.0 * c_xx * c_yy - c_xy.square() > 0.0).all();
}

double CoefficientField::sup_distance(const CoefficientField& o) const {
    double s = 0.0;
    s = std::max(s, (c_xx - o.c_xx).abs().maxCoeff());
    s = std::max(s, (c_xy - o.c_xy).abs().maxCoeff());
    s = std::max(s, (c_yy - o.c_yy).abs().maxCoeff());
    s = std::max(s, (c_x - o.c_x).abs().maxCoeff());
    s = std::max(s, (c_y - o.c_y).abs().maxCoeff());
    s = std::max(s, (c_0 - o.c_0).abs().maxCoeff());
    return s;
}

PhysicalPoint map_phi_minus(const PeriodicFn& f, double d, double x, double y) {
    if (y < -1.0 || y > 0.0) throw InvalidArgument("map_phi_minus: y must lie in [-1, 0]");
    return {x, -d * y + (1.0 + y) * interpolate(f, x)};
}

PhysicalPoint map_phi_plus(const PeriodicFn& f, const PeriodicFn& h, double x, double y) {
    if (y < 0.0 || y > 1.0) throw InvalidArgument("map_phi_plus: y must lie in [0, 1]");
    return {x, y * interpolate(h, x) + (1.0 - y) * interpolate(f, x)};
}

Eigen::ArrayXXd physical_heights_minus(const PeriodicFn& f, double d, const StripGrid& strip) {
    require_side(strip, Side::minus);
    Eigen::ArrayXXd Y(strip.grid.n_x, strip.levels());
    for (int j = 0; j < strip.levels(); ++j) {
        const double y = strip.y(j);
        Y.col(j) = -d * y + (1.0 + y) * f.values();
    }
    return Y;
}

Eigen::ArrayXXd physical_heights_plus(const PeriodicFn& f, const PeriodicFn& h, const StripGrid& strip) {
    require_side(strip, Side::plus);
    Eigen::ArrayXXd Y(strip.grid.n_x, strip.levels());
    for (int j = 0; j < strip.levels(); ++j) {
        const double y = strip.y(j);
        Y.col(j) = y * h.values() + (1.0 - y) * f.values();
    }
    return Y;
}

CoefficientField coeffs_A_minus(const PeriodicFn& f, const FluidParams& params, const StripGrid& strip) {
    require_side(strip, Side::minus);
    const auto F = derivs(f);
    const Eigen::ArrayXd fd = F.v - params.d;
    require_positive(fd, "f - d must be positive");
    auto c = CoefficientField::zeros(strip);
    c.c_xx.setOnes();
    for (int j = 0; j < strip.levels(); ++j) {
        const double y1 = 1.0 + strip.y(j);
        c.c_xy.col(j) = -2.0 * y1 * F.d1 / fd;
        c.c_yy.col(j) = (y1 * y1 * F.d1.square() + 1.0) / fd.square();
        c.c_y.col(j) = -y1 * (fd * F.d2 - 2.0 * F.d1.square()) / fd.square();
    }
    return c;
}

CoefficientField coeffs_A_plus(const PeriodicFn& f, const PeriodicFn& h, const FluidParams&,
                               const StripGrid& strip) {
    require_side(strip, Side::plus);
    require_same_grid(f, h);
    const auto F = derivs(f);
    const auto H = derivs(h);
    const Eigen::ArrayXd gap = H.v - F.v;
    require_positive(gap, "h - f must be positive");
    auto c = CoefficientField::zeros(strip);
    c.c_xx.setOnes();
    for (int j = 0; j < strip.levels(); ++j) {
        const double y = strip.y(j);
        const Eigen::ArrayXd s = y * H.d1 + (1.0 - y) * F.d1;
        c.c_xy.col(j) = -2.0 * s / gap;
        c.c_yy.col(j) = (s.square() + 1.0) / gap.square();
        c.c_y.col(j) = -((y * H.d2 + (1.0 - y) * F.d2) / gap - 2.0 * (H.d1 - F.d1) * s / gap.square());
    }
    return c;
}

std::array<std::pair<int, double>, 3> edge_dy_stencil(const StripGrid& strip, Edge edge) {
    const double w = 0.5 / strip.dy();
    if (edge == Edge::lower) return {{{0, -3.0 * w}, {1, 4.0 * w}, {2, -1.0 * w}}};
    const int n = strip.n_y;
    return {{{n, 3.0 * w}, {n - 1, -4.0 * w}, {n - 2, 1.0 * w}}};
}

Eigen::SparseMatrix<double> strip_operator_matrix(const CoefficientField& c) {
    const StripGrid& s = c.strip;
    const int nx = s.grid.n_x;
    const int ny = s.n_y;
    const double hx = s.grid.spacing();
    const double hy = s.dy();
    std::vector<Eigen::Triplet<double>> t;
    t.reserve(static_cast<size_t>(s.size()) * 20);

    auto idx = [&](int i, int j) { return s.index(((i % nx) + nx) % nx, j); };

    for (int j = 0; j <= ny; ++j) {
        // dy and dyy stencils in j, one-sided at the edges.
        std::vector<std::pair<int, double>> dy, dyy;
        if (j == 0) {
            dy = {{0, -1.5 / hy}, {1, 2.0 / hy}, {2, -0.5 / hy}};
            dyy = {{0, 2.0}, {1, -5.0}, {2, 4.0}, {3, -1.0}};
        } else if (j == ny) {
            dy = {{ny, 1.5 / hy}, {ny - 1, -2.0 / hy}, {ny - 2, 0.5 / hy}};
            dyy = {{ny, 2.0}, {ny - 1, -5.0}, {ny - 2, 4.0}, {ny - 3, -1.0}};
        } else {
            dy = {{j + 1, 0.5 / hy}, {j - 1, -0.5 / hy}};
            dyy = {{j + 1, 1.0}, {j, -2.0}, {j - 1, 1.0}};
        }
        for (auto& e : dyy) e.second /= hy * hy;

        for (int i = 0; i < nx; ++i) {
            const int row = s.index(i, j);
            const double cxx = c.c_xx(i, j), cxy = c.c_xy(i, j), cyy = c.c_yy(i, j);
            const double cx = c.c_x(i, j), cy = c.c_y(i, j), c0 = c.c_0(i, j);
            t.emplace_back(row, idx(i - 1, j), cxx / (hx * hx) - cx / (2.0 * hx));
            t.emplace_back(row, idx(i, j), -2.0 * cxx / (hx * hx) + c0);
            t.emplace_back(row, idx(i + 1, j), cxx / (hx * hx) + cx / (2.0 * hx));
            for (const auto& [jj, w] : dyy) t.emplace_back(row, idx(i, jj), cyy * w);
            for (const auto& [jj, w] : dy) {
                t.emplace_back(row, idx(i, jj), cy * w);
                t.emplace_back(row, idx(i + 1, jj), cxy * w / (2.0 * hx));
                t.emplace_back(row, idx(i - 1, jj), -cxy * w / (2.0 * hx));
            }
        }
    }
    Eigen::SparseMatrix<double> m(s.size(), s.size());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

StripField apply_operator(const CoefficientField& coeffs, const StripField& field) {
    if (!(coeffs.strip == field.strip)) throw InvalidArgument("apply_operator: strip mismatch");
    const Eigen::VectorXd r = strip_operator_matrix(coeffs) * field.flat();
    return StripField::from_flat(field.strip, r);
}

Eigen::MatrixXd spectral_dx_matrix(const PeriodicGrid& grid) {
    const int n = grid.n_x;
    Eigen::MatrixXd D(n, n);
    for (int k = 0; k < n; ++k) {
        Eigen::ArrayXd e = Eigen::ArrayXd::Zero(n);
        e[k] = 1.0;
        D.col(k) = spectral_derivative(PeriodicFn(grid, e), 1).values().matrix();
    }
    return D;
}

PeriodicFn trace(const StripField& field, Edge edge) {
    return PeriodicFn(field.strip.grid, field.values.col(edge_level(field.strip, edge)));
}

PeriodicFn trace_dy(const StripField& field, Edge edge) {
    Eigen::ArrayXd out = Eigen::ArrayXd::Zero(field.strip.grid.n_x);
    for (const auto& [j, w] : edge_dy_stencil(field.strip, edge)) out += w * field.values.col(j);
    return PeriodicFn(field.strip.grid, out);
}

PeriodicFn trace_dx(const StripField& field, Edge edge) {
    return spectral_derivative(trace(field, edge), 1);
}

PeriodicFn apply_boundary(const BoundaryOperator& op, const StripField& field, Edge edge) {
    const Eigen::ArrayXd v = op.beta1 * trace_dx(field, edge).values() +
                             op.beta2 * trace_dy(field, edge).values() +
                             op.gamma * trace(field, edge).values();
    return PeriodicFn(field.strip.grid, v);
}

BoundaryOperator make_B_minus(const PeriodicFn& f, const FluidParams& p) {
    const auto F = derivs(f);
    const Eigen::ArrayXd fd = F.v - p.d;
    require_positive(fd, "f - d must be positive");
    const double km = p.k / p.mu_minus;
    return {-km * F.d1, km * (1.0 + F.d1.square()) / fd, Eigen::ArrayXd::Zero(f.size())};
}

BoundaryOperator make_B_plus(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& p) {
    require_same_grid(f, h);
    const auto F = derivs(f);
    const Eigen::ArrayXd gap = h.values() - F.v;
    require_positive(gap, "h - f must be positive");
    const double kp = p.k / p.mu_plus;
    return {-kp * F.d1, kp * (1.0 + F.d1.square()) / gap, Eigen::ArrayXd::Zero(f.size())};
}

BoundaryOperator make_B1(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& p) {
    require_same_grid(f, h);
    const auto H = derivs(h);
    const Eigen::ArrayXd gap = H.v - f.values();
    require_positive(gap, "h - f must be positive");
    const double kp = p.k / p.mu_plus;
    return {-kp * H.d1, kp * (1.0 + H.d1.square()) / gap, Eigen::ArrayXd::Zero(f.size())};
}

PeriodicFn boundary_B_minus(const PeriodicFn& f, const FluidParams& params, const StripField& field) {
    require_side(field.strip, Side::minus);
    return apply_boundary(make_B_minus(f, params), field, Edge::upper);
}

PeriodicFn boundary_B_plus(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& params,
                           const StripField& field) {
    require_side(field.strip, Side::plus);
    return apply_boundary(make_B_plus(f, h, params), field, Edge::lower);
}

PeriodicFn boundary_B1(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& params,
                       const StripField& field) {
    require_side(field.strip, Side::plus);
    return apply_boundary(make_B1(f, h, params), field, Edge::upper);
}

CoefficientField frechet_A(FrechetA which, const InterfacePair& base, const PeriodicFn& direction,
                           const FluidParams& params, const StripGrid& strip) {
    require_same_grid(base.f, direction);
    const auto F = derivs(base.f);
    const auto Q = derivs(direction);
    auto c = CoefficientField::zeros(strip);

    if (which == FrechetA::minus_f) {
        require_side(strip, Side::minus);
        const Eigen::ArrayXd fd = F.v - params.d;
        require_positive(fd, "f - d must be positive");
        const Eigen::ArrayXd fd2 = fd.square(), fd3 = fd2 * fd;
        for (int j = 0; j < strip.levels(); ++j) {
            const double y1 = 1.0 + strip.y(j);
            c.c_xy.col(j) = 2.0 * (y1 * F.d1 * Q.v / fd2 - y1 * Q.d1 / fd);
            c.c_yy.col(j) =
                2.0 * (y1 * y1 * F.d1 * Q.d1 / fd2 - (y1 * y1 * F.d1.square() + 1.0) / fd3 * Q.v);
            c.c_y.col(j) = -y1 * ((fd * Q.d2 + F.d2 * Q.v - 4.0 * F.d1 * Q.d1) / fd2 -
                                  2.0 * (fd * F.d2 - 2.0 * F.d1.square()) / fd3 * Q.v);
        }
        return c;
    }

    require_side(strip, Side::plus);
    require_same_grid(base.f, base.h);
    const auto H = derivs(base.h);
    const Eigen::ArrayXd gap = H.v - F.v;
    require_positive(gap, "h - f must be positive");
    const Eigen::ArrayXd g2 = gap.square(), g3 = g2 * gap;
    const Eigen::ArrayXd slope_gap = H.d1 - F.d1;
    for (int j = 0; j < strip.levels(); ++j) {
        const double y = strip.y(j);
        const Eigen::ArrayXd s = y * H.d1 + (1.0 - y) * F.d1;
        const Eigen::ArrayXd curv = y * H.d2 + (1.0 - y) * F.d2;
        if (which == FrechetA::plus_f) {
            c.c_xy.col(j) = -2.0 * ((1.0 - y) * Q.d1 / gap + s / g2 * Q.v);
            c.c_yy.col(j) = 2.0 * (s.square() + 1.0) / g3 * Q.v + 2.0 * (1.0 - y) * s * Q.d1 / g2;
            c.c_y.col(j) = -((1.0 - y) * Q.d2 / gap + curv / g2 * Q.v -
                             2.0 * ((1.0 - 2.0 * y) * slope_gap - F.d1) / g2 * Q.d1 -
                             4.0 * slope_gap * s / g3 * Q.v);
        } else {
            c.c_xy.col(j) = 2.0 * (s / g2 * Q.v - y * Q.d1 / gap);
            c.c_yy.col(j) = 2.0 * (y * s / g2 * Q.d1 - (s.square() + 1.0) / g3 * Q.v);
            c.c_y.col(j) = -(y * Q.d2 / gap - curv / g2 * Q.v -
                             2.0 * (2.0 * y * H.d1 + (1.0 - 2.0 * y) * F.d1) / g2 * Q.d1 +
                             4.0 * slope_gap * s / g3 * Q.v);
        }
    }
    return c;
}

BoundaryOperator frechet_B_operator(FrechetB which, const InterfacePair& base,
                                    const PeriodicFn& direction, const FluidParams& p) {
    require_same_grid(base.f, direction);
    const auto F = derivs(base.f);
    const auto Q = derivs(direction);
    const Eigen::ArrayXd zero = Eigen::ArrayXd::Zero(direction.size());
    if (which == FrechetB::B_minus_f) {
        const Eigen::ArrayXd fd = F.v - p.d;
        require_positive(fd, "f - d must be positive");
        const double km = p.k / p.mu_minus;
        return {-km * Q.d1, km * (2.0 * F.d1 * Q.d1 / fd - (1.0 + F.d1.square()) / fd.square() * Q.v), zero};
    }
    require_same_grid(base.f, base.h);
    const auto H = derivs(base.h);
    const Eigen::ArrayXd gap = H.v - F.v;
    require_positive(gap, "h - f must be positive");
    const double kp = p.k / p.mu_plus;
    switch (which) {
        case FrechetB::B_plus_f:
            return {-kp * Q.d1, kp * (2.0 * F.d1 * Q.d1 / gap + (1.0 + F.d1.square()) / gap.square() * Q.v),
                    zero};
        case FrechetB::B_plus_h:
            return {zero, -kp * (1.0 + F.d1.square()) / gap.square() * Q.v, zero};
        default:
            return {-kp * Q.d1, kp * (2.0 * H.d1 * Q.d1 / gap - (1.0 + H.d1.square()) / gap.square() * Q.v),
                    zero};
    }
}

PeriodicFn frechet_B(FrechetB which, const InterfacePair& base, const PeriodicFn& direction,
                     const FluidParams& params, const StripField& field) {
    const auto op = frechet_B_operator(which, base, direction, params);
    switch (which) {
        case FrechetB::B_minus_f:
            require_side(field.strip, Side::minus);
            return apply_boundary(op, field, Edge::upper);
        case FrechetB::B_plus_f:
        case FrechetB::B_plus_h:
            require_side(field.strip, Side::plus);
            return apply_boundary(op, field, Edge::lower);
        default:
            require_side(field.strip, Side::plus);
            return apply_boundary(op, field, Edge::upper);
    }
}

}  // namespace muskat
