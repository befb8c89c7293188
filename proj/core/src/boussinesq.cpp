#include "gsforge/boussinesq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "gsforge/error.hpp"
#include "gsforge/parallel.hpp"
#include "rk4.hpp"

namespace gsforge {

BoussinesqParams BoussinesqParams::with_k(double k, double s) {
    BoussinesqParams p;
    p.k = k;
    p.s = s;
    p.beta0 = 1.0 / (2.0 * k);
    p.alpha0 = 0.5;
    return p;
}

void BoussinesqParams::validate() const {
    if (k == 0.0 || !std::isfinite(k)) throw InvalidArgument("Boussinesq coupling k must be a nonzero real");
    if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("exponent s must lie in (0, 1)");
    if (std::abs(alpha0 + k * beta0 - 1.0) > 1e-12) {
        throw InvalidArgument("initial data must satisfy alpha(0) + k beta(0) = 1");
    }
    if (!(tau_max > 0.0)) throw InvalidArgument("tau_max must be positive");
    if (table_points < 3 || table_points % 2 == 0) throw InvalidArgument("table_points must be odd and >= 3");
}

double solve_gamma(double tau, double k) {
    if (tau == 0.0) return 1.0;  // the initial condition, exactly
    const double h = 0.5 * k * k;
    const double c = 1.0 - h * std::log1p(h);
    const auto g = [&](double y) { return y - h * std::log(y + h) - tau - c; };
    double y = 1.0 + tau * (1.0 + h);
    bool ok = false;
    for (int it = 0; it < 60 && y > 0.0; ++it) {
        const double step = g(y) * (y + h) / y;
        y -= step;
        if (!(y > 0.0) || !std::isfinite(y)) break;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(y))) {
            ok = true;
            break;
        }
    }
    if (!ok || std::abs(g(y)) > 1e-12) {
        // g is increasing on gamma > 0; bracket and bisect
        double lo = 1e-300, hi = 2.0 + 2.0 * std::abs(tau) + h;
        if (g(lo) > 0.0) {
            throw NumericalError("gamma equation has no positive root at tau=" + std::to_string(tau) +
                                 " (Newton diverged, bracket empty)");
        }
        while (g(hi) < 0.0) hi *= 2.0;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < 0.0 ? lo : hi) = mid;
        }
        y = 0.5 * (lo + hi);
    }
    if (std::abs(g(y)) > 1e-12) {
        throw NumericalError("gamma residual above 1e-12 at tau=" + std::to_string(tau));
    }
    return y;
}

std::vector<double> solve_gamma(std::span<const double> tau, double k) {
    std::vector<double> out;
    out.reserve(tau.size());
    for (double t : tau) out.push_back(solve_gamma(t, k));
    return out;
}

BoussinesqProfiles::BoussinesqProfiles(const BoussinesqParams& params) : params_(params) {
    params.validate();
    const int n = params.table_points;
    const int c = n / 2;
    step_ = params.tau_max / c;
    tau_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) tau_[static_cast<std::size_t>(i)] = (i - c) * step_;
    tau_[static_cast<std::size_t>(c)] = 0.0;
    gamma_ = solve_gamma(tau_, params.k);
    const double min_gamma = *std::min_element(gamma_.begin(), gamma_.end());
    if (!(min_gamma > 0.1)) {
        throw DomainError("gamma comes within 0.1 of zero on the table; reduce tau_max");
    }
    const double k = params.k;
    const auto dalpha = [&](double t) { return 1.0 + k * k / solve_gamma(t, k); };
    const auto dbeta = [&](double t) { return -k / (2.0 * solve_gamma(t, k)); };
    using Gauss = boost::math::quadrature::gauss<double, 10>;
    alpha_.assign(static_cast<std::size_t>(n), 0.0);
    beta_.assign(static_cast<std::size_t>(n), 0.0);
    alpha_[static_cast<std::size_t>(c)] = params.alpha0;
    beta_[static_cast<std::size_t>(c)] = params.beta0;
    for (int dir : {1, -1}) {
        for (int i = c + dir; i >= 0 && i < n; i += dir) {
            const auto a = static_cast<std::size_t>(i - dir), b = static_cast<std::size_t>(i);
            alpha_[b] = alpha_[a] + Gauss::integrate(dalpha, tau_[a], tau_[b]);
            beta_[b] = beta_[a] + Gauss::integrate(dbeta, tau_[a], tau_[b]);
        }
    }
}

double BoussinesqProfiles::hermite(const std::vector<double>& values, int which, double tau) const {
    if (std::abs(tau) > params_.tau_max * (1.0 + 1e-12)) {
        throw DomainError("tau=" + std::to_string(tau) + " outside the profile table [-" +
                          std::to_string(params_.tau_max) + ", " + std::to_string(params_.tau_max) + "]");
    }
    const int n = static_cast<int>(tau_.size());
    const double sx = (tau - tau_.front()) / step_;
    const int i = std::clamp(static_cast<int>(sx), 0, n - 2);
    const double t = sx - i;
    const auto ia = static_cast<std::size_t>(i), ib = ia + 1;
    const double k = params_.k;
    const auto slope = [&](std::size_t j) {
        const double g = gamma_[j];
        switch (which) {
            case 0: return 1.0 + k * k / (2.0 * g);
            case 1: return 1.0 + k * k / g;
            default: return -k / (2.0 * g);
        }
    };
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values[ia] + (t3 - 2 * t2 + t) * step_ * slope(ia) +
           (-2 * t3 + 3 * t2) * values[ib] + (t3 - t2) * step_ * slope(ib);
}

double BoussinesqProfiles::gamma(double tau) const { return hermite(gamma_, 0, tau); }
double BoussinesqProfiles::alpha(double tau) const { return hermite(alpha_, 1, tau); }
double BoussinesqProfiles::beta(double tau) const { return hermite(beta_, 2, tau); }

double BoussinesqProfiles::identity_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < tau_.size(); ++i) {
        worst = std::max(worst, std::abs(alpha_[i] + params_.k * beta_[i] - gamma_[i]));
    }
    return worst;
}

double BoussinesqProfiles::discriminant(double x2, double tau) const {
    const double b = beta(tau);
    return -x2 * x2 + 2.0 * x2 * (params_.k + b) + 2.0 * alpha(tau) - b * b;
}

Grid2D boussinesq_grid(const BoussinesqParams& params, double half_x1, double half_x2, int nx, int ny) {
    if (nx % 2 == 0 || ny % 2 == 0) throw InvalidArgument("Boussinesq grid needs odd node counts");
    return Grid2D(params.x1_0 - half_x1, params.x1_0 + half_x1, params.beta0 - half_x2, params.beta0 + half_x2, nx,
                  ny);
}

namespace {

int node_at(double start, double h, int n, double value, const char* what) {
    const int i = static_cast<int>(std::lround((value - start) / h));
    if (i < 0 || i >= n || std::abs(start + i * h - value) > 1e-9 * h) {
        throw InvalidArgument(std::string("Boussinesq grid has no node on ") + what);
    }
    return i;
}

}  // namespace

BoussinesqStream build_psi(const Grid2D& grid, const BoussinesqProfiles& prof, int substeps) {
    const BoussinesqParams& par = prof.params();
    if (substeps < 1) throw InvalidArgument("need at least one substep per cell");
    const int i0 = node_at(grid.x_min, grid.hx, grid.nx, par.x1_0, "the axis line x1 = x1_0");
    const int j0 = node_at(grid.y_min, grid.hy, grid.ny, par.beta0, "the row x2 = beta(0)");
    if (2 * i0 != grid.nx - 1) throw InvalidArgument("Boussinesq grid must be symmetric about x1 = x1_0");

    BoussinesqStream out{GridField(grid, "tau"), GridField(grid, "psi"), i0};
    const auto x2_at = [&](int j) { return j == j0 ? par.beta0 : grid.y_min + j * grid.hy; };

    // axis line
    const auto axis_rhs = [&](double x2, double t) { return x2 - prof.beta(t); };
    out.tau.at(i0, j0) = 0.0;
    for (int dir : {1, -1}) {
        double t = 0.0;
        const double h = dir * grid.hy / substeps;
        for (int j = j0 + dir; j >= 0 && j < grid.ny; j += dir) {
            const double start = x2_at(j - dir);
            for (int s = 0; s < substeps; ++s) t = detail::rk4_step(axis_rhs, start + s * h, t, h);
            out.tau.at(i0, j) = t;
        }
    }

    parallel_for(static_cast<std::size_t>(grid.ny), [&](std::size_t row) {
        const int j = static_cast<int>(row);
        const double x2 = x2_at(j);
        const auto rhs = [&](double, double t) {
            const double d = prof.discriminant(x2, t);
            if (!(d > 0.0)) {
                throw NumericalError("negative discriminant " + std::to_string(d) + " at x2=" + std::to_string(x2) +
                                     ", tau=" + std::to_string(t));
            }
            return std::sqrt(d);
        };
        double t = out.tau.at(i0, j);
        const double h = grid.hx / substeps;
        for (int i = i0 + 1; i < grid.nx; ++i) {
            const double start = grid.x_min + (i - 1) * grid.hx;
            for (int s = 0; s < substeps; ++s) t = detail::rk4_step(rhs, start + s * h, t, h);
            out.tau.at(i, j) = t;
            out.tau.at(2 * i0 - i, j) = t;
        }
    });

    const double s = par.s;
    for (std::size_t k = 0; k < out.tau.values.size(); ++k) {
        const double t = out.tau.values[k];
        if (t < -1e-14) throw NumericalError("tau became negative away from the minimum point");
        out.psi.values[k] = std::pow((1.0 - s) * std::max(t, 0.0), 1.0 / (1.0 - s));
    }
    out.tau.require_finite();
    return out;
}

BoussinesqFields assemble_boussinesq(const BoussinesqStream& stream, const BoussinesqProfiles& prof) {
    const Grid2D& g = stream.psi.grid;
    const BoussinesqParams& par = prof.params();
    BoussinesqFields f{stream.psi, GridField(g, "u1", FieldKind::VectorComponent),
                       GridField(g, "u2", FieldKind::VectorComponent), GridField(g, "theta"), GridField(g, "p")};
    const double s = par.s;
    for (int j = 0; j < g.ny; ++j) {
        const double x2 = j == (g.ny - 1) / 2 ? par.beta0 : g.y_min + j * g.hy;
        for (int i = 0; i < g.nx; ++i) {
            const double t = stream.tau.at(i, j);
            const double psi = stream.psi.at(i, j);
            const double q = std::pow(psi, s);
            const double sigma = i < stream.axis_column ? -1.0 : 1.0;
            const double d = prof.discriminant(x2, t);
            if (d < 0.0) throw NumericalError("negative discriminant while assembling the Boussinesq velocity");
            f.u1.at(i, j) = -q * (x2 - prof.beta(t));
            f.u2.at(i, j) = sigma * q * std::sqrt(d);
            f.theta.at(i, j) = par.k * q * q;
            f.p.at(i, j) = psi * q / (1.0 + s);
        }
    }
    return f;
}

BoussinesqFields right_half(const BoussinesqFields& f, int axis_column) {
    const Grid2D& g = f.psi.grid;
    const auto cut = [&](const GridField& x) { return subfield(x, axis_column, g.nx - 1, 0, g.ny - 1); };
    return {cut(f.psi), cut(f.u1), cut(f.u2), cut(f.theta), cut(f.p)};
}

CutoffSpec boussinesq_cutoff(const BoussinesqFields& f, double margin, double lower_fraction) {
    const Grid2D& g = f.p.grid;
    double edge_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (i == 0 || j == 0 || i == g.nx - 1 || j == g.ny - 1) edge_min = std::min(edge_min, f.p.at(i, j));
        }
    }
    if (!(edge_min > 0.0)) throw NumericalError("pressure vanishes on the grid boundary; cannot localize");
    const double hi = edge_min * (1.0 - margin);
    return CutoffSpec::bump(lower_fraction * hi, hi);
}

BoussinesqFields localize_boussinesq(const BoussinesqFields& f, const CutoffSpec& cutoff) {
    BoussinesqFields out = f;
    for (std::size_t k = 0; k < f.p.values.size(); ++k) {
        const double p = f.p.values[k];
        const double c = cutoff(p);
        out.u1.values[k] *= c;
        out.u2.values[k] *= c;
        out.theta.values[k] *= c * c;
        out.p.values[k] = cutoff.primitive(p, 2);
    }
    return out;
}

}  // namespace gsforge
