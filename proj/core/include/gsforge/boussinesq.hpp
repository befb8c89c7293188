#pragma once

#include <span>
#include <vector>

#include "gsforge/cutoff.hpp"
#include "gsforge/grid.hpp"
#include "gsforge/verify.hpp"

namespace gsforge {

struct BoussinesqParams {
    double k = 1.0;
    double s = 0.5;       ///< q = psi^s
    double alpha0 = 0.5;  ///< alpha(0); alpha0 + k beta0 = 1
    double beta0 = 0.5;   ///< beta(0), also the height x2 of the minimum point
    double x1_0 = 0.0;    ///< abscissa of the minimum point
    double tau_max = 0.4;
    int table_points = 401;  ///< odd, symmetric about tau = 0

    /// beta0 = 1/(2k), alpha0 = 1/2.
    static BoussinesqParams with_k(double k, double s = 0.5);
    void validate() const;
};

/// Root of gamma - (k^2/2) log(gamma + k^2/2) = tau + C with gamma(0) = 1,
/// by Newton with a bisection fallback. Residual <= 1e-12.
double solve_gamma(double tau, double k);
std::vector<double> solve_gamma(std::span<const double> tau, double k);

/// gamma, alpha, beta tabulated on [-tau_max, tau_max] with
///   alpha' = 1 + k^2/gamma,  beta' = -k/(2 gamma),
/// integrated panel by panel with Gauss-Legendre; cubic Hermite between nodes.
class BoussinesqProfiles {
public:
    explicit BoussinesqProfiles(const BoussinesqParams& params);

    const BoussinesqParams& params() const { return params_; }
    const std::vector<double>& tau() const { return tau_; }
    const std::vector<double>& gamma_table() const { return gamma_; }
    const std::vector<double>& alpha_table() const { return alpha_; }
    const std::vector<double>& beta_table() const { return beta_; }

    double gamma(double tau) const;
    double alpha(double tau) const;
    double beta(double tau) const;
    double dgamma(double tau) const { return 1.0 + params_.k * params_.k / (2.0 * gamma(tau)); }

    /// max |alpha + k beta - gamma| over the table.
    double identity_residual() const;
    /// -x2^2 + 2 x2 (k + beta) + 2 alpha - beta^2 at (x2, tau).
    double discriminant(double x2, double tau) const;

private:
    double hermite(const std::vector<double>& values, int which, double tau) const;

    BoussinesqParams params_;
    std::vector<double> tau_, gamma_, alpha_, beta_;
    double step_ = 0.0;
};

/// tau = psi^(1-s)/(1-s) and psi on the grid.
struct BoussinesqStream {
    GridField tau;
    GridField psi;
    int axis_column = 0;  ///< node column on x1 = x1_0
};

/// Grid centred on (x1_0, beta0) with the given half-widths and odd node counts.
Grid2D boussinesq_grid(const BoussinesqParams& params, double half_x1, double half_x2, int nx, int ny);

/// d2 tau = x2 - beta(tau) is integrated along x1 = x1_0 from tau(x^0) = 0
/// (RK4); each row is then integrated in x1 with d1 tau = sqrt(disc) to the
/// right and mirrored to the left, so psi is even in x1 - x1_0 and has a
/// strict minimum at x^0. The mirror leaves a crease in d1 psi on the
/// line x1 = x1_0.
BoussinesqStream build_psi(const Grid2D& grid, const BoussinesqProfiles& profiles, int substeps = 4);

using BoussinesqFields = PlanarFields;

/// u = (-psi^s (x2 - beta), sigma psi^s sqrt(disc)) with sigma the side of
/// the axis line (+1 on it), theta = k psi^(2s), p = psi^(1+s)/(1+s).
BoussinesqFields assemble_boussinesq(const BoussinesqStream& stream, const BoussinesqProfiles& profiles);

/// Columns from the axis line to the right edge.
BoussinesqFields right_half(const BoussinesqFields& f, int axis_column);

/// p window whose sublevel set stays inside the grid: p_hi is the smallest
/// boundary pressure lowered by `margin`, p_lo = lower_fraction * p_hi.
CutoffSpec boussinesq_cutoff(const BoussinesqFields& f, double margin = 0.02, double lower_fraction = 0.25);

/// u -> phi_c(p) u, theta -> phi_c(p)^2 theta, p -> Phi(p) with Phi' = phi_c^2.
BoussinesqFields localize_boussinesq(const BoussinesqFields& f, const CutoffSpec& cutoff);

}  // namespace gsforge
