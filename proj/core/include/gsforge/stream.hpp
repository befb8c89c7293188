#pragma once

#include <utility>

#include "gsforge/grid.hpp"
#include "gsforge/hodograph.hpp"

namespace gsforge {

inline constexpr int kDefaultRowSubsteps = 4;

/// Axis-first construction of phi(x, y) on a grid with nodes on x = 0 and
/// y = 0: the column x = 0 is filled from the axis profile, each row is then
/// integrated in x from that column with d phi / dx = P3(x, phi) (RK4,
/// `substeps` per cell) and mirrored to -y. Rows are filled in parallel.
GridField build_phi(const Grid2D& grid, const Hodograph& hodo, int substeps = kDefaultRowSubsteps);

/// Boundary-first construction: every column starts at phi = delta(x) on
/// y = 0 and is filled from its own primitive Y_x. Used to check that both
/// integration orders agree.
GridField build_phi_boundary_first(const Grid2D& grid, const Hodograph& hodo);

struct HodographVelocity {
    GridField U;  ///< P3(x, phi)
    GridField V;  ///< sgn(y) sqrt(P6(x, phi))
};

/// Negative P6 below -1e-10 raises DomainError; smaller negatives are clamped.
HodographVelocity compute_UV(const GridField& phi, const Hodograph& hodo);

struct GradientResidual {
    double res_x = 0.0;  ///< max |D_x phi - U| over interior nodes
    double res_y = 0.0;  ///< max |D_y phi - V| over interior nodes
    double hx = 0.0;
    double hy = 0.0;
};

/// Centered differences of phi against U and V at interior nodes.
GradientResidual gradient_consistency(const GridField& phi, const GridField& U, const GridField& V);

}  // namespace gsforge
