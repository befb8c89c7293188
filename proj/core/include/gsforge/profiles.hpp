#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gsforge/series.hpp"

namespace gsforge {

/// Default truncation order of the profile series.
inline constexpr int kDefaultSeriesOrder = 12;
/// Upper cap on the half-width of the profile interval [-eps, eps].
inline constexpr double kMaxProfileInterval = 0.05;

/// z(t) and zeta(t) as truncated series.
struct ZZetaSeries {
    TruncatedSeries z;
    TruncatedSeries zeta;
};

/// Rescaled swirl/plasma profiles a(phi), b(phi) with a(0) = 1/3, b(0) = 1,
/// solving
///   a' = 2/(a-b) + (b-3a)/(3 phi),   b' = 1/(a-b)
/// on phi in [-eps, eps].
struct EulerProfiles {
    TruncatedSeries a;
    TruncatedSeries b;
    double epsilon = 0.0;
};

/// Solves the z/zeta recurrence with unit mass parameter and alpha_0 = 1/3
/// (so zeta_0 = 3/2), double precision.
ZZetaSeries solve_z_zeta(int order);

/// Same recurrence in exact rational arithmetic.
ZZetaCoefficients<Rational> solve_z_zeta_exact(int order);

/// a = (1/zeta - z)/2, b = a + 1/zeta. The interval half-width is
/// min(radius/2, kMaxProfileInterval) with the radius taken from the
/// ratio test on z and zeta. Checks the non-degeneracy b - a >= (b0-a0)/2.
EulerProfiles profiles_from_z_zeta(const ZZetaSeries& zz);

/// Convenience: solve_z_zeta followed by profiles_from_z_zeta.
EulerProfiles make_euler_profiles(int order = kDefaultSeriesOrder);

/// Max-abs residuals of the two profile ODEs over the samples.
struct OdeResidual {
    double a_equation = 0.0;
    double b_equation = 0.0;
};

/// The 1/(3 phi) term is evaluated through the shifted series of b - 3a,
/// so phi = 0 is handled by its series limit. Samples must lie in
/// [-eps, eps]; a == b at a sample raises NumericalError.
OdeResidual ode_residual(const EulerProfiles& profiles, std::span<const double> phi_samples);

}  // namespace gsforge
