#pragma once

#include "muskat/geometry.hpp"

#include <Eigen/Sparse>

#include <array>
#include <functional>
#include <utility>

namespace muskat {

struct FluidParams {
    double k = 1.0;
    double mu_minus = 1.0;
    double mu_plus = 1.0;
    double rho_minus = 2.0;
    double rho_plus = 1.0;
    double g = 1.0;
    double gamma_f = 0.0;
    double gamma_h = 0.0;
    double d = -1.0;

    // Throws InvalidArgument when a sign constraint is violated.
    void validate() const;
};

enum class Side { minus, plus };

// Which horizontal edge of a strip: lower is y = -1 (minus) or y = 0 (plus),
// upper is y = 0 (minus) or y = 1 (plus).
enum class Edge { lower, upper };

struct StripGrid {
    PeriodicGrid grid;
    int n_y = 0;
    Side side = Side::plus;

    int levels() const { return n_y + 1; }
    double dy() const { return 1.0 / n_y; }
    double y(int j) const { return side == Side::minus ? -1.0 + j * dy() : j * dy(); }
    int size() const { return grid.n_x * levels(); }
    int index(int i, int j) const { return i + grid.n_x * j; }

    friend bool operator==(const StripGrid&, const StripGrid&) = default;
};

StripGrid make_strip(const PeriodicGrid& grid, int n_y, Side side);

// Values on the closed strip, indexed (i, j) with x_i and y_j.
struct StripField {
    StripGrid strip;
    Eigen::ArrayXXd values;

    static StripField zeros(const StripGrid& strip);
    static StripField sample(const StripGrid& strip, const std::function<double(double, double)>& fn);

    double operator()(int i, int j) const { return values(i, j); }
    Eigen::VectorXd flat() const;
    static StripField from_flat(const StripGrid& strip, const Eigen::VectorXd& v);
};

// c_xx dxx + c_xy dxy + c_yy dyy + c_x dx + c_y dy + c_0 on one strip.
struct CoefficientField {
    StripGrid strip;
    Eigen::ArrayXXd c_xx, c_xy, c_yy, c_x, c_y, c_0;

    static CoefficientField zeros(const StripGrid& strip);
    static CoefficientField laplacian(const StripGrid& strip);
    bool is_elliptic() const;
    double sup_distance(const CoefficientField& other) const;
};

// beta1 tr dx + beta2 tr dy + gamma tr on one edge of a strip.
struct BoundaryOperator {
    Eigen::ArrayXd beta1, beta2, gamma;
};

struct PhysicalPoint {
    double x;
    double Y;
};

PhysicalPoint map_phi_minus(const PeriodicFn& f, double d, double x, double y);
PhysicalPoint map_phi_plus(const PeriodicFn& f, const PeriodicFn& h, double x, double y);

// Physical heights Y of every strip node.
Eigen::ArrayXXd physical_heights_minus(const PeriodicFn& f, double d, const StripGrid& strip);
Eigen::ArrayXXd physical_heights_plus(const PeriodicFn& f, const PeriodicFn& h, const StripGrid& strip);

CoefficientField coeffs_A_minus(const PeriodicFn& f, const FluidParams& params, const StripGrid& strip);
CoefficientField coeffs_A_plus(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& params,
                               const StripGrid& strip);

StripField apply_operator(const CoefficientField& coeffs, const StripField& field);

// Discretisation shared by apply_operator and the diffraction assembly.
Eigen::SparseMatrix<double> strip_operator_matrix(const CoefficientField& coeffs);
Eigen::MatrixXd spectral_dx_matrix(const PeriodicGrid& grid);

PeriodicFn trace(const StripField& field, Edge edge);
PeriodicFn trace_dy(const StripField& field, Edge edge);
PeriodicFn trace_dx(const StripField& field, Edge edge);

// One-sided three-point weights for dy at an edge: (offset in j, weight).
std::array<std::pair<int, double>, 3> edge_dy_stencil(const StripGrid& strip, Edge edge);

PeriodicFn apply_boundary(const BoundaryOperator& op, const StripField& field, Edge edge);

BoundaryOperator make_B_minus(const PeriodicFn& f, const FluidParams& params);
BoundaryOperator make_B_plus(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& params);
BoundaryOperator make_B1(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& params);

PeriodicFn boundary_B_minus(const PeriodicFn& f, const FluidParams& params, const StripField& field);
PeriodicFn boundary_B_plus(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& params,
                           const StripField& field);
PeriodicFn boundary_B1(const PeriodicFn& f, const PeriodicFn& h, const FluidParams& params,
                       const StripField& field);

enum class FrechetA { minus_f, plus_f, plus_h };
enum class FrechetB { B_minus_f, B_plus_f, B_plus_h, B1_h };

CoefficientField frechet_A(FrechetA which, const InterfacePair& base, const PeriodicFn& direction,
                           const FluidParams& params, const StripGrid& strip);
BoundaryOperator frechet_B_operator(FrechetB which, const InterfacePair& base,
                                    const PeriodicFn& direction, const FluidParams& params);
PeriodicFn frechet_B(FrechetB which, const InterfacePair& base, const PeriodicFn& direction,
                     const FluidParams& params, const StripField& field);

}  // namespace muskat
