#include "gsforge/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gsforge {

ZZetaSeries solve_z_zeta(int order) {
    const auto c = z_zeta_recurrence<double>(order, 1.5);
    const double radius = std::min(ratio_test_radius(c.z), ratio_test_radius(c.zeta));
    return {TruncatedSeries(c.z, radius), TruncatedSeries(c.zeta, radius)};
}

ZZetaCoefficients<Rational> solve_z_zeta_exact(int order) {
    return z_zeta_recurrence<Rational>(order, Rational(3, 2));
}

EulerProfiles profiles_from_z_zeta(const ZZetaSeries& zz) {
    const int order = std::max(zz.z.order(), zz.zeta.order());
    if (zz.zeta[0] == 0.0) throw InvalidArgument("zeta has zero constant term; 1/zeta undefined");
    const TruncatedSeries inv_zeta = zz.zeta.reciprocal(order);
    const TruncatedSeries a = 0.5 * (inv_zeta - zz.z.truncated(order));
    const TruncatedSeries b = a + inv_zeta;

    const double radius = std::min(zz.z.radius(), zz.zeta.radius());
    const double eps = std::min(0.5 * radius, kMaxProfileInterval);

    EulerProfiles p{a.with_radius(eps), b.with_radius(eps), eps};

    const double gap0 = p.b[0] - p.a[0];
    constexpr int kChecks = 64;
    for (int i = 0; i <= kChecks; ++i) {
        const double phi = -eps + 2.0 * eps * i / kChecks;
        if (p.b.eval(phi) - p.a.eval(phi) < 0.5 * gap0) {
            throw NumericalError("profiles degenerate (b - a too small) at phi=" + std::to_string(phi));
        }
    }
    return p;
}

EulerProfiles make_euler_profiles(int order) { return profiles_from_z_zeta(solve_z_zeta(order)); }

OdeResidual ode_residual(const EulerProfiles& profiles, std::span<const double> phi_samples) {
    const TruncatedSeries& a = profiles.a;
    const TruncatedSeries& b = profiles.b;
    const TruncatedSeries w = b - 3.0 * a;   // b - 3a
    const TruncatedSeries w_over_t = w.divided_by_t();

    OdeResidual res;
    for (double phi : phi_samples) {
        if (std::abs(phi) > profiles.epsilon * (1.0 + 1e-12)) {
            throw DomainError("ode_residual sample phi=" + std::to_string(phi) +
                              " outside the profile interval");
        }
        const double av = a.eval(phi);
        const double bv = b.eval(phi);
        const double gap = av - bv;
        if (std::abs(gap) < 1e-14) {
            throw NumericalError("degenerate profiles a == b at phi=" + std::to_string(phi));
        }
        double singular;
        if (phi == 0.0) {
            if (std::abs(w[0]) > 1e-14) {
                throw NumericalError("(b - 3a)/(3 phi) is singular at phi = 0 for these profiles");
            }
            singular = w_over_t.eval_unchecked(0.0) / 3.0;
        } else {
            singular = (w[0] / phi + w_over_t.eval_unchecked(phi)) / 3.0;
        }
        const double ra = std::abs(a.eval_deriv(phi) - 2.0 / gap - singular);
        const double rb = std::abs(b.eval_deriv(phi) - 1.0 / gap);
        res.a_equation = std::max(res.a_equation, ra);
        res.b_equation = std::max(res.b_equation, rb);
    }
    return res;
}

}  // namespace gsforge
