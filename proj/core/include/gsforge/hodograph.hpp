#pragma once

#include <span>
#include <string>
#include <vector>

#include "gsforge/profiles.hpp"
#include "gsforge/series.hpp"

namespace gsforge {

enum class PolyLabel { P2, P3, P6 };

std::string to_string(PolyLabel label);

/// Polynomial in x whose coefficients are polynomials (truncated series) in phi.
/// coeff_series()[k] multiplies x^k.
class PolyField {
public:
    PolyField(PolyLabel label, std::vector<TruncatedSeries> coeff_series);

    PolyLabel label() const { return label_; }
    int degree_x() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<TruncatedSeries>& coeff_series() const { return coeffs_; }

    double eval(double x, double phi) const { return derivative(x, phi, 0, 0); }
    /// d^{dx}/dx^{dx} d^{dphi}/dphi^{dphi} evaluated exactly on the polynomials.
    double derivative(double x, double phi, int dx, int dphi) const;
    /// The polynomial phi -> F(x, phi) at fixed x.
    TruncatedSeries at_x(double x) const;

private:
    PolyLabel label_;
    std::vector<TruncatedSeries> coeffs_;
};

/// Rescaled hodograph polynomials
///   P3(x, phi) = (1+x)[(1+x)^2 - b(phi)]
///   P2(x, phi) = 6 phi [(1+x)^2 - a(phi)]
///   P6 = P2 - P3^2
/// built from a pair of profile series, with evaluation restricted to
/// |phi| <= epsilon.
class Hodograph {
public:
    explicit Hodograph(const EulerProfiles& profiles);
    /// Arbitrary (e.g. perturbed) profile pair.
    Hodograph(TruncatedSeries a, TruncatedSeries b, double epsilon);

    double epsilon() const { return eps_; }
    const TruncatedSeries& a() const { return a_; }
    const TruncatedSeries& b() const { return b_; }
    const PolyField& field(PolyLabel label) const;

    /// Pointwise value; throws DomainError for |phi| > epsilon.
    double eval_P(PolyLabel label, double x, double phi) const;
    double derivative(PolyLabel label, double x, double phi, int dx, int dphi) const;

    double P3(double x, double phi) const { return eval_P(PolyLabel::P3, x, phi); }
    double P6(double x, double phi) const { return eval_P(PolyLabel::P6, x, phi); }

    /// pi(phi) = P6(0, phi) = 6 phi (1 - a) - (1 - b)^2.
    double axis_pi(double phi) const { return P6(0.0, phi); }

    /// (x, phi) lies in D iff P6(x, phi) > 0.
    bool in_domain(double x, double phi) const;

    /// max |dP6/dx + P3 dP6/dphi - 2 (dP3/dphi) P6| over the lattice xs x phis.
    double compatibility_residual(std::span<const double> xs, std::span<const double> phis) const;

private:
    void check_phi(double phi) const;

    TruncatedSeries a_;
    TruncatedSeries b_;
    double eps_;
    PolyField p2_, p3_, p6_;
};

/// Boundary curve phi = delta(x) of D, integrated from delta' = P3(x, delta),
/// delta(0) = 0, with classical RK4 in both directions.
struct BoundaryCurve {
    std::vector<double> x_nodes;
    std::vector<double> delta_values;
    std::vector<double> slopes;  ///< P3(x, delta(x)) at the nodes
    double step = 0.0;
    /// max |P6(x, delta(x))| over the nodes; zero for an exact characteristic.
    double max_p6_residual = 0.0;

    /// Cubic Hermite interpolation between nodes.
    double operator()(double x) const;
    /// (delta(h) - 2 delta(0) + delta(-h)) / h^2 with h the node step.
    double second_difference_at_zero() const;
    /// Same with a spacing that is a multiple of the node step.
    double second_difference_at_zero(double spacing) const;
    std::size_t zero_index() const;
};

/// Requires h <= half_width / 50; DomainError if the curve leaves |phi| <= eps.
BoundaryCurve boundary_delta(const Hodograph& hodo, double half_width, double h);

/// One vertical profile phi(x, y) for fixed x and y >= 0, taken as the
/// positive branch of d phi / dy = sqrt(P6(x, phi)), phi(x, 0) = delta(x).
///
/// With phi = delta + u^2 the primitive
///   Y(phi) = int_delta^phi dt / sqrt(P6(x, t)) = int_0^u 2 dv / sqrt(R(v^2)),
///   R(s) = P6(x, delta + s) / s,
/// has a smooth integrand; it is evaluated by Gauss-Legendre and inverted by
/// bisection followed by Newton polishing.
class ColumnProfile {
public:
    /// `delta_guess` seeds the Newton refinement of the root of P6(x, .).
    ColumnProfile(const Hodograph& hodo, double x, double delta_guess = 0.0);

    double x() const { return x_; }
    double base() const { return delta_; }
    /// Largest y reachable before phi leaves the profile interval.
    double max_height() const { return y_max_; }

    double primitive(double phi) const;
    /// phi(x, y) = Y^{-1}(|y|).
    double phi_at(double y) const;

private:
    double primitive_u(double u) const;
    double integrand(double v) const;

    double x_;
    double delta_;
    double u_max_;
    double y_max_;
    TruncatedSeries reduced_;
};

/// Monotone table (y_i, phi(0, y_i)) on [0, y_max].
struct AxisTable {
    std::vector<double> y;
    std::vector<double> phi;
};

AxisTable axis_profile(const Hodograph& hodo, double y_max, int n_points);

}  // namespace gsforge
