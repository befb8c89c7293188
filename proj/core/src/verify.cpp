#include "gsforge/verify.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "gsforge/error.hpp"

namespace gsforge {

namespace {

// derivative along one axis; `along_x` picks the stride
GridField first_derivative(const GridField& f, bool along_x) {
    const Grid2D& g = f.grid;
    const int n = along_x ? g.nx : g.ny;
    const double h = along_x ? g.hx : g.hy;
    if (n < 3) throw InvalidArgument("first-derivative stencil needs at least 3 nodes");
    GridField out(g, "d(" + f.name + ")", f.kind);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int k = along_x ? i : j;
            auto v = [&](int off) { return along_x ? f.at(i + off, j) : f.at(i, j + off); };
            double d;
            if (k == 0) d = (-3.0 * v(0) + 4.0 * v(1) - v(2)) / (2.0 * h);
            else if (k == n - 1) d = (3.0 * v(0) - 4.0 * v(-1) + v(-2)) / (2.0 * h);
            else d = (v(1) - v(-1)) / (2.0 * h);
            out.at(i, j) = d;
        }
    }
    return out;
}

GridField second_derivative(const GridField& f, bool along_x) {
    const Grid2D& g = f.grid;
    const int n = along_x ? g.nx : g.ny;
    const double h = along_x ? g.hx : g.hy;
    if (n < 4) throw InvalidArgument("second-derivative stencil needs at least 4 nodes");
    GridField out(g, "dd(" + f.name + ")", f.kind);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const int k = along_x ? i : j;
            auto v = [&](int off) { return along_x ? f.at(i + off, j) : f.at(i, j + off); };
            double d;
            if (k == 0) d = (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / (h * h);
            else if (k == n - 1) d = (2.0 * v(0) - 5.0 * v(-1) + 4.0 * v(-2) - v(-3)) / (h * h);
            else d = (v(1) - 2.0 * v(0) + v(-1)) / (h * h);
            out.at(i, j) = d;
        }
    }
    return out;
}

void require_same_grid(const GridField& a, const GridField& b) {
    const Grid2D& g = a.grid;
    const Grid2D& q = b.grid;
    if (g.nx != q.nx || g.ny != q.ny || g.x_min != q.x_min || g.y_min != q.y_min || g.hx != q.hx ||
        g.hy != q.hy) {
        throw InvalidArgument("fields '" + a.name + "' and '" + b.name + "' are not co-located");
    }
}

void require_positive_r(const Grid2D& g) {
    if (!(g.x_min > 0.0)) throw InvalidArgument("cylindrical stencil needs r > 0 on the whole grid");
}

}  // namespace

GridField d_dx(const GridField& f) { return first_derivative(f, true); }
GridField d_dy(const GridField& f) { return first_derivative(f, false); }
GridField d2_dx2(const GridField& f) { return second_derivative(f, true); }
GridField d2_dy2(const GridField& f) { return second_derivative(f, false); }

GridField gs_operator(const GridField& psi) {
    require_positive_r(psi.grid);
    const GridField prr = d2_dx2(psi), pr = d_dx(psi), pzz = d2_dy2(psi);
    GridField out(psi.grid, "gs(" + psi.name + ")");
    for (int j = 0; j < psi.grid.ny; ++j) {
        for (int i = 0; i < psi.grid.nx; ++i) {
            out.at(i, j) = prr.at(i, j) - pr.at(i, j) / psi.grid.x(i) + pzz.at(i, j);
        }
    }
    return out;
}

std::string ResidualReport::to_json() const {
    nlohmann::ordered_json j;
    j["equation"] = equation;
    j["h"] = h;
    j["max_res"] = max_res;
    j["l2_res"] = l2_res;
    j["boundary_max_res"] = boundary_max_res;
    j["order"] = order ? nlohmann::ordered_json(*order) : nlohmann::ordered_json(nullptr);
    j["pass"] = pass;
    return j.dump();
}

ResidualReport make_report(const std::string& equation, const GridField& residual, double tol,
                           const NodeMask& mask) {
    return make_report(equation, std::span<const GridField>(&residual, 1), tol, mask);
}

ResidualReport make_report(const std::string& equation, std::span<const GridField> residuals, double tol,
                           const NodeMask& mask) {
    if (residuals.empty()) throw InvalidArgument("make_report needs at least one residual field");
    const Grid2D& g = residuals.front().grid;
    for (const auto& r : residuals) require_same_grid(residuals.front(), r);
    ResidualReport rep;
    rep.equation = equation;
    rep.h = std::max(g.hx, g.hy);
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (mask && !mask(g.x(i), g.y(j))) continue;
            double v = 0.0;
            for (const auto& r : residuals) v = std::max(v, std::abs(r.at(i, j)));
            if (!std::isfinite(v)) throw NumericalError("non-finite residual in " + equation);
            const bool edge = i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1;
            if (edge) {
                rep.boundary_max_res = std::max(rep.boundary_max_res, v);
            } else {
                rep.max_res = std::max(rep.max_res, v);
                sum_sq += v * v;
                ++count;
            }
        }
    }
    rep.l2_res = count ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;
    rep.pass = rep.max_res <= tol;
    return rep;
}

ConvergenceResult convergence_study(std::span<const double> h, std::span<const double> residuals) {
    if (h.size() != residuals.size()) throw InvalidArgument("convergence_study: size mismatch");
    if (h.size() < 3) throw InvalidArgument("convergence_study needs at least 3 refinement levels");
    for (std::size_t i = 1; i < h.size(); ++i) {
        if (std::abs(h[i - 1] / h[i] - 2.0) > 1e-6) {
            throw InvalidArgument("convergence_study expects refinement by a factor of 2");
        }
    }
    ConvergenceResult out;
    const auto n = static_cast<double>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double lx = std::log(h[i]);
        const double ly = std::log(std::max(residuals[i], 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        if (i > 0 && !(residuals[i] < residuals[i - 1])) out.monotone = false;
    }
    out.order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

ConvergenceResult attach_orders(std::vector<ResidualReport>& reports) {
    std::vector<double> h, r;
    for (const auto& rep : reports) {
        h.push_back(rep.h);
        r.push_back(rep.max_res);
    }
    const ConvergenceResult c = convergence_study(h, r);
    for (auto& rep : reports) rep.order = c.order;
    return c;
}

GridField axisymmetric_divergence(const AxisymmetricState& s) {
    require_positive_r(s.u_r.grid);
    require_same_grid(s.u_r, s.u_z);
    const Grid2D& g = s.u_r.grid;
    GridField r_ur(g, "r*u_r");
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) r_ur.at(i, j) = g.x(i) * s.u_r.at(i, j);
    }
    const GridField a = d_dx(r_ur), b = d_dy(s.u_z);
    GridField out(g, "div u");
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) out.at(i, j) = a.at(i, j) / g.x(i) + b.at(i, j);
    }
    return out;
}

std::vector<GridField> euler_steady_residual(const AxisymmetricState& s) {
    require_positive_r(s.u_r.grid);
    require_same_grid(s.u_r, s.u_phi);
    require_same_grid(s.u_r, s.u_z);
    require_same_grid(s.u_r, s.p);
    const Grid2D& g = s.u_r.grid;
    GridField head(g, "H");
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double ur = s.u_r.values[k], uf = s.u_phi.values[k], uz = s.u_z.values[k];
        head.values[k] = 0.5 * (ur * ur + uf * uf + uz * uz) + s.p.values[k];
    }
    const GridField dr_uphi = d_dx(s.u_phi), dz_uphi = d_dy(s.u_phi);
    const GridField dz_ur = d_dy(s.u_r), dr_uz = d_dx(s.u_z);
    const GridField dr_h = d_dx(head), dz_h = d_dy(head);

    std::vector<GridField> out{GridField(g, "euler_r"), GridField(g, "euler_phi"), GridField(g, "euler_z")};
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double r = g.x(i);
            const double ur = s.u_r.at(i, j), uf = s.u_phi.at(i, j), uz = s.u_z.at(i, j);
            const double w_r = -dz_uphi.at(i, j);
            const double w_f = dz_ur.at(i, j) - dr_uz.at(i, j);
            const double w_z = dr_uphi.at(i, j) + uf / r;
            out[0].at(i, j) = w_f * uz - w_z * uf + dr_h.at(i, j);
            out[1].at(i, j) = w_z * ur - w_r * uz;
            out[2].at(i, j) = w_r * uf - w_f * ur + dz_h.at(i, j);
        }
    }
    return out;
}

GridField gs_equation_residual(const GridField& psi, const GridField& ff_prime, const GridField& p_prime) {
    require_same_grid(psi, ff_prime);
    require_same_grid(psi, p_prime);
    const GridField lap = gs_operator(psi);
    GridField out(psi.grid, "gs_residual");
    for (int j = 0; j < psi.grid.ny; ++j) {
        for (int i = 0; i < psi.grid.nx; ++i) {
            const double r = psi.grid.x(i);
            out.at(i, j) = -lap.at(i, j) - ff_prime.at(i, j) - r * r * p_prime.at(i, j);
        }
    }
    return out;
}

namespace {

void require_planar(const PlanarState& s) {
    require_same_grid(s.u1, s.u2);
    require_same_grid(s.u1, s.theta);
    require_same_grid(s.u1, s.p);
}

PlanarResiduals transport_and_divergence(const PlanarState& s) {
    const Grid2D& g = s.u1.grid;
    const GridField tx = d_dx(s.theta), ty = d_dy(s.theta);
    const GridField u1x = d_dx(s.u1), u2y = d_dy(s.u2);
    PlanarResiduals r{{}, GridField(g, "transport"), GridField(g, "divergence")};
    for (std::size_t k = 0; k < g.size(); ++k) {
        r.transport.values[k] = s.u1.values[k] * tx.values[k] + s.u2.values[k] * ty.values[k];
        r.divergence.values[k] = u1x.values[k] + u2y.values[k];
    }
    return r;
}

}  // namespace

PlanarResiduals boussinesq_residual(const PlanarState& s) {
    require_planar(s);
    const Grid2D& g = s.u1.grid;
    PlanarResiduals r = transport_and_divergence(s);
    const GridField u1x = d_dx(s.u1), u1y = d_dy(s.u1), u2x = d_dx(s.u2), u2y = d_dy(s.u2);
    const GridField px = d_dx(s.p), py = d_dy(s.p);
    r.momentum = {GridField(g, "momentum_1"), GridField(g, "momentum_2")};
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double a = s.u1.values[k], b = s.u2.values[k];
        r.momentum[0].values[k] = a * u1x.values[k] + b * u1y.values[k] + px.values[k];
        r.momentum[1].values[k] = a * u2x.values[k] + b * u2y.values[k] + py.values[k] - s.theta.values[k];
    }
    return r;
}

PlanarResiduals ipm_residual(const PlanarState& s) {
    require_planar(s);
    const Grid2D& g = s.u1.grid;
    PlanarResiduals r = transport_and_divergence(s);
    const GridField px = d_dx(s.p), py = d_dy(s.p);
    r.momentum = {GridField(g, "darcy_1"), GridField(g, "darcy_2")};
    for (std::size_t k = 0; k < g.size(); ++k) {
        r.momentum[0].values[k] = s.u1.values[k] - px.values[k];
        r.momentum[1].values[k] = s.u2.values[k] - s.theta.values[k] - py.values[k];
    }
    return r;
}

}  // namespace gsforge
