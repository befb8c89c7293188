#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsforge/grid.hpp"

namespace gsforge {

/// Second-order derivative stencils: centered in the interior, one-sided
/// (-3f0 + 4f1 - f2)/2h and (2f0 - 5f1 + 4f2 - f3)/h^2 on the edges.
/// Exact on polynomials of degree <= 2.
GridField d_dx(const GridField& f);
GridField d_dy(const GridField& f);
GridField d2_dx2(const GridField& f);
GridField d2_dy2(const GridField& f);

/// Delta* psi = psi_rr - psi_r / r + psi_zz on a grid with x = r, y = z.
/// Rejects grids with r_min <= 0.
GridField gs_operator(const GridField& psi);

/// Selects the nodes (by coordinate) a report is taken over.
using NodeMask = std::function<bool(double x, double y)>;

struct ResidualReport {
    std::string equation;
    double h = 0.0;
    double max_res = 0.0;           ///< interior nodes accepted by the mask
    double l2_res = 0.0;            ///< root mean square over the same nodes
    double boundary_max_res = 0.0;  ///< edge nodes (one-sided stencils), for information
    std::optional<double> order;    ///< set by attach_orders when >= 3 levels exist
    bool pass = false;

    /// {"equation","h","max_res","l2_res","boundary_max_res","order","pass"}
    std::string to_json() const;
};

/// Builds a report from a pointwise residual field. Nodes outside `mask`
/// are skipped; pass = max_res <= tol.
ResidualReport make_report(const std::string& equation, const GridField& residual, double tol,
                           const NodeMask& mask = {});
/// Pointwise max of several residual fields (componentwise reporting).
ResidualReport make_report(const std::string& equation, std::span<const GridField> residuals, double tol,
                           const NodeMask& mask = {});

struct ConvergenceResult {
    double order = 0.0;     ///< least-squares slope of log(res) against log(h)
    bool monotone = true;   ///< false if some refinement did not reduce the residual
};

/// Requires >= 3 spacings, each half the previous one.
ConvergenceResult convergence_study(std::span<const double> h, std::span<const double> residuals);

/// Sets `order` on every report from their max_res sequence (coarse to fine).
ConvergenceResult attach_orders(std::vector<ResidualReport>& reports);

/// Axisymmetric fields on an (r, z) grid: cylindrical components and pressure.
struct AxisymmetricState {
    const GridField& u_r;
    const GridField& u_phi;
    const GridField& u_z;
    const GridField& p;
};

/// (1/r) d_r (r u_r) + d_z u_z.
GridField axisymmetric_divergence(const AxisymmetricState& s);
/// Components (r, phi, z) of omega x u + grad(|u|^2/2 + p), with omega taken
/// as the finite-difference curl of u.
std::vector<GridField> euler_steady_residual(const AxisymmetricState& s);
/// -Delta* psi - (F F')(psi) - r^2 P'(psi), from nodal values of F F' and P'.
GridField gs_equation_residual(const GridField& psi, const GridField& ff_prime, const GridField& p_prime);

/// Planar fields on an (x, y) grid.
struct PlanarState {
    const GridField& u1;
    const GridField& u2;
    const GridField& theta;
    const GridField& p;
};

/// Planar solution sampled on a grid.
struct PlanarFields {
    GridField psi, u1, u2, theta, p;
    PlanarState state() const { return {u1, u2, theta, p}; }
};

/// Boussinesq: momentum u.grad u + grad p - theta e2 (two components),
/// transport u.grad theta, divergence.
struct PlanarResiduals {
    std::vector<GridField> momentum;
    GridField transport;
    GridField divergence;
};
PlanarResiduals boussinesq_residual(const PlanarState& s);
/// IPM: u - theta e2 - grad p (two components), transport, divergence.
PlanarResiduals ipm_residual(const PlanarState& s);

}  // namespace gsforge
