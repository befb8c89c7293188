#include "gsforge/ipm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "gsforge/error.hpp"

namespace gsforge {

IpmSolution::IpmSolution(const IpmParams& params) : params_(params) {
    if (!(params.s > 0.0 && params.s < 1.0)) throw InvalidArgument("IPM exponent s must lie in (0, 1)");
    if (!std::isfinite(params.k)) throw InvalidArgument("IPM slope k must be finite");
}

double IpmSolution::f(double z) const {
    if (z <= 0.0) return 0.0;
    const double s = params_.s, k = params_.k;
    return std::pow((1.0 - s) * z / (1.0 + k * k), 1.0 / (1.0 - s));
}

double IpmSolution::f_prime(double z) const {
    return std::pow(f(z), params_.s) / (1.0 + params_.k * params_.k);
}

double IpmSolution::theta(double x, double y) const { return std::pow(psi(x, y), params_.s); }

std::array<double, 4> IpmSolution::operator()(double x, double y) const {
    const double zz = z(x, y);
    const double fv = f(zz);
    const double th = std::pow(fv, params_.s);
    const double fp = th / (1.0 + params_.k * params_.k);
    return {params_.k * fp, fp, th, params_.k * fv};
}

namespace {

template <class Sampler>
PlanarFields sample_on(const Grid2D& grid, const Sampler& sampler, const std::function<double(double, double)>& psi) {
    PlanarFields out{GridField(grid, "psi"), GridField(grid, "u1", FieldKind::VectorComponent),
                     GridField(grid, "u2", FieldKind::VectorComponent), GridField(grid, "theta"), GridField(grid, "p")};
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i), y = grid.y(j);
            const auto v = sampler(x, y);
            out.psi.at(i, j) = psi(x, y);
            out.u1.at(i, j) = v[0];
            out.u2.at(i, j) = v[1];
            out.theta.at(i, j) = v[2];
            out.p.at(i, j) = v[3];
        }
    }
    return out;
}

}  // namespace

PlanarFields IpmSolution::sample(const Grid2D& grid) const {
    return sample_on(grid, *this, [this](double x, double y) { return psi(x, y); });
}

LocalizedIpm::LocalizedIpm(const IpmSolution& solution, double z_center, double half_width)
    : sol_(solution), zc_(z_center), w_(half_width), cutoff_(CutoffSpec::identity()) {
    const double k = solution.params().k;
    if (k == 0.0) {
        throw InvalidArgument("strip with k = 0 is parallel to gravity (vertical); it cannot be localized");
    }
    if (!(half_width > 0.0)) throw InvalidArgument("strip half-width must be positive");
    if (!(z_center - half_width > 0.0)) {
        throw InvalidArgument("strip must lie in z > 0 where the solution is nonzero");
    }
    const double p_low_side = k * solution.f(z_center - half_width);
    const double p_high_side = k * solution.f(z_center + half_width);
    cutoff_ = CutoffSpec::bump(std::min(p_low_side, p_high_side), std::max(p_low_side, p_high_side));
    offset_ = -cutoff_.primitive(p_low_side, 1);
}

std::array<double, 4> LocalizedIpm::operator()(double x, double y) const {
    const auto v = sol_(x, y);
    const double c = cutoff_(v[3]);
    return {c * v[0], c * v[1], c * v[2], cutoff_.primitive(v[3], 1) + offset_};
}

PlanarFields LocalizedIpm::sample(const Grid2D& grid) const {
    return sample_on(grid, *this, [this](double x, double y) { return sol_.psi(x, y); });
}

}  // namespace gsforge
