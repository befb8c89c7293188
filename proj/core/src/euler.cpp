#include "gsforge/euler.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsforge/error.hpp"
#include "gsforge/stream.hpp"

namespace gsforge {

void DimensionalParams::validate() const {
    if (!(ell > 0.0) || !std::isfinite(ell)) throw InvalidArgument("length scale ell must be positive");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("time scale tau must be positive");
}

namespace {

Grid2D cylindrical_grid(const Grid2D& g, double ell) {
    return Grid2D(ell * (1.0 + g.x_min), ell * (1.0 + g.x_max), ell * g.y_min, ell * g.y_max, g.nx, g.ny);
}

}  // namespace

CylField assemble_velocity(const GridField& phi, const Hodograph& hodo, const DimensionalParams& params,
                           const AssemblyOptions& options) {
    params.validate();
    const HodographVelocity uv = compute_UV(phi, hodo);
    const double ell = params.ell, m = params.m();
    const double c3 = m * ell * ell * ell;

    CylField f;
    f.params = params;
    f.swirl = options.swirl;
    f.grid = cylindrical_grid(phi.grid, ell);
    for (GridField* g : {&f.psi, &f.u_r, &f.u_phi, &f.u_z, &f.p, &f.ff_prime, &f.f_prime, &f.omega_r,
                         &f.omega_phi, &f.omega_z}) {
        *g = GridField(f.grid, "");
    }
    f.psi.name = "psi";
    f.u_r.name = "u_r";
    f.u_phi.name = "u_phi";
    f.u_z.name = "u_z";
    f.p.name = "p";
    f.ff_prime.name = "ff_prime";
    f.f_prime.name = "f_prime";
    f.omega_r.name = "omega_r";
    f.omega_phi.name = "omega_phi";
    f.omega_z.name = "omega_z";

    const TruncatedSeries& a = hodo.a();
    for (int j = 0; j < f.grid.ny; ++j) {
        for (int i = 0; i < f.grid.nx; ++i) {
            const double v = phi.at(i, j);
            const double r = ell * (1.0 + phi.grid.x(i));
            const double av = a.eval(v);
            double phia = v * av;
            if (phia < -1e-12) {
                throw DomainError("phi a(phi) = " + std::to_string(phia) + " < 0: swirl would be imaginary");
            }
            phia = std::max(phia, 0.0);
            const double F = options.swirl ? c3 * std::sqrt(6.0 * phia) : 0.0;
            const double ffp = options.swirl ? 3.0 * m * ell * ell * (av + v * a.eval_deriv(v)) : 0.0;

            f.psi.at(i, j) = m * ell * ell * ell * ell * v;
            f.p.at(i, j) = 2.0 * m * f.psi.at(i, j);
            f.u_r.at(i, j) = c3 * uv.V.at(i, j) / r;
            f.u_z.at(i, j) = -c3 * uv.U.at(i, j) / r;
            f.u_phi.at(i, j) = F / r;
            f.ff_prime.at(i, j) = ffp;
            f.f_prime.at(i, j) = F > 0.0 ? ffp / F : 0.0;
        }
    }
    assemble_vorticity(f);
    return f;
}

GridField assemble_pressure(const GridField& phi, const DimensionalParams& params) {
    params.validate();
    const double m = params.m(), ell = params.ell;
    GridField p(cylindrical_grid(phi.grid, ell), "p");
    for (std::size_t k = 0; k < p.values.size(); ++k) p.values[k] = 2.0 * m * m * std::pow(ell, 4) * phi.values[k];
    return p;
}

void assemble_vorticity(CylField& f) {
    const GridField lap = gs_operator(f.psi);
    for (int j = 0; j < f.grid.ny; ++j) {
        for (int i = 0; i < f.grid.nx; ++i) {
            const double fp = f.f_prime.at(i, j);
            // at psi = 0 the velocity vanishes and the product F' u is taken as 0
            f.omega_r.at(i, j) = -fp * f.u_r.at(i, j);
            f.omega_z.at(i, j) = -fp * f.u_z.at(i, j);
            f.omega_phi.at(i, j) = lap.at(i, j) / f.grid.x(i);
        }
    }
}

void vorticity_from_velocity(CylField& f) {
    const GridField dz_uphi = d_dy(f.u_phi), dr_uphi = d_dx(f.u_phi);
    const GridField dz_ur = d_dy(f.u_r), dr_uz = d_dx(f.u_z);
    for (int j = 0; j < f.grid.ny; ++j) {
        for (int i = 0; i < f.grid.nx; ++i) {
            f.omega_r.at(i, j) = -dz_uphi.at(i, j);
            f.omega_phi.at(i, j) = dz_ur.at(i, j) - dr_uz.at(i, j);
            f.omega_z.at(i, j) = dr_uphi.at(i, j) + f.u_phi.at(i, j) / f.grid.x(i);
        }
    }
}

GridField gs_residual_field(const CylField& f) {
    GridField pp(f.grid, "p_prime");
    std::fill(pp.values.begin(), pp.values.end(), -5.0 * f.params.m());
    return gs_equation_residual(f.psi, f.ff_prime, pp);
}

BernoulliResidual bernoulli_residual(const CylField& f) {
    const double m = f.params.m(), ell = f.params.ell;
    BernoulliResidual out;
    out.scale = (m * ell * ell) * (m * ell * ell);
    for (std::size_t k = 0; k < f.psi.values.size(); ++k) {
        const double ur = f.u_r.values[k], uf = f.u_phi.values[k], uz = f.u_z.values[k];
        const double r = 0.5 * (ur * ur + uf * uf + uz * uz) - 3.0 * m * f.psi.values[k];
        out.max_abs = std::max(out.max_abs, std::abs(r));
    }
    return out;
}

CartesianSampler::CartesianSampler(CylField field) : field_(std::move(field)) {}

std::array<double, 4> CartesianSampler::operator()(double x, double y, double z) const {
    const Grid2D& g = field_.grid;
    const double r = std::hypot(x, y);
    const double tol = 1e-12 * (g.x_max - g.x_min);
    if (r < g.x_min - tol || r > g.x_max + tol || z < g.y_min - tol || z > g.y_max + tol) {
        if (field_.localized) return {0.0, 0.0, 0.0, 0.0};
        throw DomainError("sample point outside the field grid and no cutoff applied");
    }
    const double sx = std::clamp((r - g.x_min) / g.hx, 0.0, static_cast<double>(g.nx - 1));
    const double sy = std::clamp((z - g.y_min) / g.hy, 0.0, static_cast<double>(g.ny - 1));
    const int i = std::min(static_cast<int>(sx), g.nx - 2);
    const int j = std::min(static_cast<int>(sy), g.ny - 2);
    const double tx = sx - i, ty = sy - j;
    const auto lerp = [&](const GridField& f) {
        return (1 - tx) * (1 - ty) * f.at(i, j) + tx * (1 - ty) * f.at(i + 1, j) + (1 - tx) * ty * f.at(i, j + 1) +
               tx * ty * f.at(i + 1, j + 1);
    };
    const double ur = lerp(field_.u_r), uf = lerp(field_.u_phi), uz = lerp(field_.u_z), p = lerp(field_.p);
    const double c = r > 0.0 ? x / r : 1.0, s = r > 0.0 ? y / r : 0.0;
    return {ur * c - uf * s, ur * s + uf * c, uz, p};
}

}  // namespace gsforge
