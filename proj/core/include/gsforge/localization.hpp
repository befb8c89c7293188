#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gsforge/cutoff.hpp"
#include "gsforge/euler.hpp"
#include "gsforge/hodograph.hpp"

namespace gsforge {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;  ///< row-major

/// Default radius (in units of ell) of the shell around the circle r = ell, z = 0.
inline constexpr double kDefaultShellRadius = 0.1;

/// Pressure window whose sublevel band lies inside the annulus
/// 1/2 eps^2 ell^2 < (r - ell)^2 + z^2 < eps^2 ell^2.
struct ShellThresholds {
    double p_lo = 0.0;
    double p_hi = 0.0;
};

/// p_lo is the largest nodal pressure in the inner disc, raised by `margin`
/// (relative); p_hi the smallest nodal pressure outside the outer circle,
/// lowered by `margin`. The grid must extend past the outer circle.
ShellThresholds annulus_thresholds(const CylField& field, double shell_radius, double margin = 0.02);

/// u -> phi_c(p) u and p -> Phi(p) with Phi' = phi_c^2; vorticity recomputed
/// by the curl stencil. Bump thresholds must lie inside the attained p range.
CylField apply_cutoff(const CylField& field, const CutoffSpec& cutoff);

/// Number of nodes outside the open annulus where the velocity is not exactly zero.
std::size_t support_violations(const CylField& field, double shell_radius);

struct TemplateOptions {
    int series_order = kDefaultSeriesOrder;
    int nodes = 201;             ///< per direction, odd
    double half_width = 0.12;    ///< grid half-width in x and y
    double shell_radius = kDefaultShellRadius;
    double margin = 0.02;
    double tau = 0.5;            ///< ell is fixed to 1
};

/// Smooth compactly supported template u_B with ell = 1, supported in the
/// shell 1/2 eps^2 < (r - 1)^2 + z^2 < eps^2 around the unit circle in the
/// plane x3 = 0, symmetric about the x3 axis.
///
/// phi and V are interpolated by bicubic Hermite patches whose nodal
/// derivatives come from the characteristic relations (phi_x = P3,
/// phi_y = V, V_x = d_phi P3 V, V_y = d_phi P6 / 2); the remaining fields
/// are evaluated from the interpolated pair.
class TemplateSampler {
public:
    TemplateSampler(const Hodograph& hodo, const GridField& phi, const DimensionalParams& params,
                    const CutoffSpec& cutoff, double shell_radius);

    /// (u1, u2, u3, p); u is exactly zero outside the shell.
    std::array<double, 4> operator()(const Vec3& x) const;

    double shell_radius() const { return shell_radius_; }
    /// Radius of a ball about the origin containing the support.
    double bounding_radius() const { return 1.0 + shell_radius_; }
    const CutoffSpec& cutoff() const { return cutoff_; }
    const DimensionalParams& params() const { return params_; }
    const Grid2D& grid() const { return grid_; }
    /// Pressure inside the hole of the shell (p is 0 outside it).
    double hole_pressure() const { return cutoff_.primitive(0.0, 2); }
    /// (x, y) = (r - 1, z) points at cell centres where |u| exceeds
    /// `fraction` of its max over the cell centres.
    std::vector<std::array<double, 2>> active_cell_centres(double fraction) const;

    /// Pressure window from the uncut pressure sampled on the two circles
    /// bounding the shell (and the nodes inside / outside them), widened
    /// inwards by the relative `margin`.
    ShellThresholds circle_thresholds(double margin) const;
    /// Same interpolation tables with another cutoff.
    TemplateSampler with_cutoff(const CutoffSpec& cutoff) const;

private:
    struct Hermite {
        std::vector<double> f, fx, fy, fxy;
    };
    double interpolate(const Hermite& h, double x, double y) const;
    // (u_r, u_phi, u_z, p) before the cutoff
    std::array<double, 4> uncut(double x, double y) const;
    std::array<double, 4> meridional(double x, double y) const;

    Hodograph hodo_;
    DimensionalParams params_;
    CutoffSpec cutoff_;
    double shell_radius_;
    Grid2D grid_;
    Hermite phi_, v_;
};

/// Builds profiles, phi, thresholds and the cutoff for a template.
std::shared_ptr<const TemplateSampler> make_template(const TemplateOptions& options = {});

struct ShellPlacement {
    Vec3 center{};
    Mat3 rotation{};  ///< columns are the images of e1, e2, e3
    double scale = 1.0;
    double amplitude = 1.0;
};

/// Helix H(s) = (-2a sin^2(w s/2), a sin(w s), b w s), w = 1/sqrt(a^2+b^2),
/// parametrised by arclength from H(0) = 0.
struct HelixSpec {
    double a = 1.0;
    double b = 0.5;
    double scale0 = 0.1;     ///< ell_n = scale0 * rho^n
    double rho = 1.0 / 12.0;
};

/// ell_n = scale0 rho^n, U_n = ell_n^alpha_target, n = 1..n_shells. Centres
/// sit at arclength s_n = 3 R sum_{k>=n} ell_k (R = bounding radius), so
/// consecutive centres are 3 R ell_n apart and accumulate at the origin.
/// The template axis is aligned with the helix tangent.
std::vector<ShellPlacement> helical_placements(int n_shells, double alpha_target, const HelixSpec& helix,
                                               double bounding_radius);

/// Sum over shells of U_n R_n u_B(R_n^T (x - x_n) / ell_n), pressure U_n^2 p_B.
/// Shells must have disjoint bounding balls.
class MultiscaleField {
public:
    MultiscaleField(std::shared_ptr<const TemplateSampler> tmpl, std::vector<ShellPlacement> placements);

    std::array<double, 4> operator()(const Vec3& x) const;
    /// Index of the shell whose bounding ball contains x, or -1.
    int shell_at(const Vec3& x) const;
    const std::vector<ShellPlacement>& placements() const { return placements_; }
    const TemplateSampler& shell_template() const { return *tmpl_; }
    /// x_n + ell_n R_n xi.
    Vec3 to_world(std::size_t shell, const Vec3& xi) const;

private:
    std::shared_ptr<const TemplateSampler> tmpl_;
    std::vector<ShellPlacement> placements_;
    std::vector<std::size_t> order_;   // shells sorted by the lower end of their radial interval
    std::vector<double> lower_;        // |x_n| - R ell_n in that order
    std::vector<double> upper_max_;    // prefix max of |x_n| + R ell_n
};

/// (sum_n U_n^p ell_n^(3 - p alpha))^(1/p) for finite p, sup_n U_n ell_n^-alpha
/// for p = infinity. The tail beyond the last shell is bounded by geometric
/// continuation of the last term ratio; it is infinite when that ratio is >= 1.
struct NormEstimate {
    double partial = 0.0;
    double tail_bound = 0.0;
    double total = 0.0;
    double last_ratio = 0.0;
    bool finite = true;
};

NormEstimate norm_estimate(std::span<const ShellPlacement> placements, double alpha, double p_exponent);

struct HolderOptions {
    int pairs_per_shell = 400;
    std::uint64_t seed = 20240611;
    double min_separation = 1e-3;  ///< in template units
    double max_separation = 0.1;
    bool cross_shell = true;
};

/// Max of |u(x) - u(y)| / |x - y|^alpha over sampled pairs. The same
/// template-coordinate pairs are mapped into every shell; cross-shell pairs
/// join shell n with shell n - 1 and count towards shell n.
struct HolderEstimate {
    double alpha = 0.0;
    std::vector<double> per_shell;
    double max_quotient = 0.0;
};

HolderEstimate empirical_holder(const MultiscaleField& field, double alpha, const HolderOptions& options = {});

/// Centred differences of H = |u|^2/2 + p with steps rel_step * ell_n at
/// active cell centres of one shell; max |u.grad H| scaled by ell_n / U_n^3
/// for each step, and the observed order.
struct DissipationStudy {
    std::vector<double> steps;
    std::vector<double> max_res;
    double order = 0.0;
};

DissipationStudy local_dissipation(const MultiscaleField& field, std::size_t shell,
                                   std::span<const double> rel_steps, int max_points = 64);

/// Placement list as JSON.
std::string placements_to_json(std::span<const ShellPlacement> placements);

}  // namespace gsforge
