#pragma once

#include <array>
#include <string>

#include "gsforge/cutoff.hpp"
#include "gsforge/grid.hpp"
#include "gsforge/verify.hpp"

namespace gsforge {

struct IpmParams {
    double k = 1.0;  ///< p = k psi
    double s = 0.5;  ///< theta = psi^s
    double x0 = 0.0;
    double y0 = 0.0;
};

/// Closed-form steady porous-medium solution depending on
/// z = x - x0 - k (y - y0):
///   psi = ((1-s) z / (1+k^2))^(1/(1-s)) for z >= 0, 0 otherwise,
///   p = k psi, theta = psi^s, u = grad^perp psi = (k f'(z), f'(z)).
class IpmSolution {
public:
    explicit IpmSolution(const IpmParams& params);

    const IpmParams& params() const { return params_; }
    double z(double x, double y) const { return x - params_.x0 - params_.k * (y - params_.y0); }
    double f(double z) const;
    double f_prime(double z) const;

    double psi(double x, double y) const { return f(z(x, y)); }
    double p(double x, double y) const { return params_.k * psi(x, y); }
    double theta(double x, double y) const;
    /// (u1, u2, theta, p)
    std::array<double, 4> operator()(double x, double y) const;

    PlanarFields sample(const Grid2D& grid) const;

private:
    IpmParams params_;
};

/// Strip localization |z - z_c| < w: u -> phi_c(p) u, theta -> phi_c(p) theta,
/// p -> Phi(p) with Phi' = phi_c (first power). The p window is the image of
/// [z_c - w, z_c + w]; Phi is normalised to vanish on the side z < z_c - w.
class LocalizedIpm {
public:
    LocalizedIpm(const IpmSolution& solution, double z_center, double half_width);

    double z_center() const { return zc_; }
    double half_width() const { return w_; }
    const CutoffSpec& cutoff() const { return cutoff_; }

    std::array<double, 4> operator()(double x, double y) const;
    PlanarFields sample(const Grid2D& grid) const;

private:
    IpmSolution sol_;
    double zc_, w_;
    CutoffSpec cutoff_;
    double offset_ = 0.0;
};

}  // namespace gsforge
