#include "gsforge/stream.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsforge/error.hpp"
#include "gsforge/parallel.hpp"
#include "rk4.hpp"

namespace gsforge {

namespace {

void require_axis_grid(const Grid2D& grid) {
    if (!grid.is_symmetric_y()) throw InvalidArgument("phi grid must be symmetric in y with a row at y = 0");
    grid.zero_column();
}

}  // namespace

GridField build_phi(const Grid2D& grid, const Hodograph& hodo, int substeps) {
    require_axis_grid(grid);
    if (substeps < 1) throw InvalidArgument("row integration needs at least one substep per cell");
    const int i0 = grid.zero_column();
    const int j0 = grid.zero_row();
    const ColumnProfile axis(hodo, 0.0);
    const PolyField& p3 = hodo.field(PolyLabel::P3);
    const double eps = hodo.epsilon();

    GridField phi(grid, "phi");
    const auto rows = static_cast<std::size_t>(grid.ny - j0);
    parallel_for(rows, [&](std::size_t r) {
        const int j = j0 + static_cast<int>(r);
        const double y = grid.y(j);
        const auto rhs = [&](double x, double v) {
            if (!(std::abs(v) <= eps)) {
                throw DomainError("phi left [-eps, eps] while integrating row y=" + std::to_string(y) +
                                  " near x=" + std::to_string(x));
            }
            return p3.eval(x, v);
        };
        phi.at(i0, j) = axis.phi_at(y);
        const double h = grid.hx / substeps;
        for (int dir : {1, -1}) {
            double v = phi.at(i0, j);
            for (int i = i0 + dir; i >= 0 && i < grid.nx; i += dir) {
                const double xs = grid.x(i - dir);
                for (int s = 0; s < substeps; ++s) v = detail::rk4_step(rhs, xs + dir * s * h, v, dir * h);
                rhs(grid.x(i), v);
                phi.at(i, j) = v;
            }
        }
        const int mirror = 2 * j0 - j;
        if (mirror != j) {
            for (int i = 0; i < grid.nx; ++i) phi.at(i, mirror) = phi.at(i, j);
        }
    });
    phi.require_finite();
    return phi;
}

GridField build_phi_boundary_first(const Grid2D& grid, const Hodograph& hodo) {
    require_axis_grid(grid);
    const int j0 = grid.zero_row();
    GridField phi(grid, "phi");
    parallel_for(static_cast<std::size_t>(grid.nx), [&](std::size_t c) {
        const int i = static_cast<int>(c);
        const double x = grid.x(i);
        const ColumnProfile column(hodo, x, x * x);
        for (int j = j0; j < grid.ny; ++j) {
            const double v = column.phi_at(grid.y(j));
            phi.at(i, j) = v;
            phi.at(i, 2 * j0 - j) = v;
        }
    });
    phi.require_finite();
    return phi;
}

HodographVelocity compute_UV(const GridField& phi, const Hodograph& hodo) {
    const Grid2D& g = phi.grid;
    HodographVelocity out{GridField(g, "U", FieldKind::VectorComponent),
                          GridField(g, "V", FieldKind::VectorComponent)};
    for (int j = 0; j < g.ny; ++j) {
        const double y = g.y(j);
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            const double v = phi.at(i, j);
            out.U.at(i, j) = hodo.P3(x, v);
            const double p6 = hodo.P6(x, v);
            if (p6 < -1e-10) {
                throw DomainError("P6=" + std::to_string(p6) + " < 0 at (x,y)=(" + std::to_string(x) + "," +
                                  std::to_string(y) + "): node outside the domain");
            }
            const double root = std::sqrt(std::max(p6, 0.0));
            out.V.at(i, j) = y > 0.0 ? root : (y < 0.0 ? -root : 0.0);
        }
    }
    return out;
}

GradientResidual gradient_consistency(const GridField& phi, const GridField& U, const GridField& V) {
    const Grid2D& g = phi.grid;
    GradientResidual r{0.0, 0.0, g.hx, g.hy};
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const double dx = (phi.at(i + 1, j) - phi.at(i - 1, j)) / (2.0 * g.hx);
            const double dy = (phi.at(i, j + 1) - phi.at(i, j - 1)) / (2.0 * g.hy);
            r.res_x = std::max(r.res_x, std::abs(dx - U.at(i, j)));
            r.res_y = std::max(r.res_y, std::abs(dy - V.at(i, j)));
        }
    }
    return r;
}

}  // namespace gsforge
