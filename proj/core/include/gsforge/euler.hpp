#pragma once

#include <array>

#include "gsforge/grid.hpp"
#include "gsforge/hodograph.hpp"
#include "gsforge/verify.hpp"

namespace gsforge {

/// Length scale ell = sqrt(beta0) and time scale tau; m = 1/(2 ell tau).
struct DimensionalParams {
    double ell = 1.0;
    double tau = 0.5;

    double m() const { return 1.0 / (2.0 * ell * tau); }
    double beta0() const { return ell * ell; }
    void validate() const;
};

/// Axisymmetric Euler state on the (r, z) grid r = ell (1 + x), z = ell y.
struct CylField {
    Grid2D grid;
    DimensionalParams params;
    GridField psi;
    GridField u_r, u_phi, u_z;
    GridField p;
    GridField ff_prime;  ///< (F F')(psi) = 3 m ell^2 (a + phi a')
    GridField f_prime;   ///< F'(psi); 0 where F = 0 (there u = 0 as well)
    GridField omega_r, omega_phi, omega_z;
    bool swirl = true;       ///< F = +sqrt(F^2); false only for diagnostics
    bool localized = false;  ///< set by the cutoff; zero field outside the grid

    AxisymmetricState state() const { return {u_r, u_phi, u_z, p}; }
};

struct AssemblyOptions {
    bool swirl = true;
};

/// Velocity, stream function and pressure from the rescaled phi:
///   u_r = m ell^3 V / r,  u_z = -m ell^3 U / r,  u_phi = F / r,
///   F = m ell^3 sqrt(6 phi a(phi)),  psi = m ell^4 phi,  p = 2 m psi.
/// Vorticity comes from assemble_vorticity.
CylField assemble_velocity(const GridField& phi, const Hodograph& hodo, const DimensionalParams& params,
                           const AssemblyOptions& options = {});

/// p = 2 m psi on the (r, z) grid.
GridField assemble_pressure(const GridField& phi, const DimensionalParams& params);

/// omega_r = -F' u_r, omega_z = -F' u_z, omega_phi = Delta* psi / r (stencil).
void assemble_vorticity(CylField& field);

/// Finite-difference curl of the stored velocity (used after localization).
void vorticity_from_velocity(CylField& field);

/// -Delta* psi - F F' - r^2 P' with P' = -5m.
GridField gs_residual_field(const CylField& field);

struct BernoulliResidual {
    double max_abs = 0.0;  ///< max | |u|^2/2 - 3 m psi |
    double scale = 1.0;    ///< (m ell^2)^2
    double scaled() const { return max_abs / scale; }
};

BernoulliResidual bernoulli_residual(const CylField& field);

/// Bilinear interpolation in (r, z) plus rotation of (u_r, u_phi) to
/// Cartesian components. Returns (u1, u2, u3, p).
class CartesianSampler {
public:
    explicit CartesianSampler(CylField field);

    /// Outside the grid: zeros if the field is localized, DomainError otherwise.
    std::array<double, 4> operator()(double x, double y, double z) const;
    const CylField& field() const { return field_; }

private:
    CylField field_;
};

}  // namespace gsforge
