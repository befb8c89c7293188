#pragma once

#include <vector>

namespace gsforge {

enum class CutoffKind { Bump, Identity };

/// Smooth profile phi_c(p) applied to pressure values.
///
/// Bump: phi_c(p) = S((p - p_lo)/w) S((p_hi - p)/w) with the C-infinity step
/// S(t) = e(t) / (e(t) + e(1 - t)), e(t) = exp(-1/t) for t > 0 and 0 otherwise.
/// It vanishes outside (p_lo, p_hi). Identity: phi_c = 1.
///
/// primitive(p, k) is the antiderivative of phi_c^k normalised to vanish for
/// p >= p_hi (bump) or equal to p (identity).
class CutoffSpec {
public:
    /// width <= 0 selects the default (p_hi - p_lo)/2.
    static CutoffSpec bump(double p_lo, double p_hi, double width = 0.0);
    static CutoffSpec identity();

    CutoffKind kind() const { return kind_; }
    double p_lo() const { return p_lo_; }
    double p_hi() const { return p_hi_; }
    double width() const { return width_; }

    double operator()(double p) const;
    double derivative(double p) const;
    /// k in {1, 2}.
    double primitive(double p, int k) const;

private:
    CutoffSpec() = default;
    double panel_integral(double a, double b, int k) const;

    CutoffKind kind_ = CutoffKind::Identity;
    double p_lo_ = 0.0, p_hi_ = 0.0, width_ = 0.0;
    // cumulative integrals of phi_c^k from p_lo at the panel edges
    std::vector<double> cumulative_[2];
    double panel_ = 0.0;
};

/// The C-infinity step S(t).
double smooth_step(double t);

}  // namespace gsforge
