#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gsforge/error.hpp"

namespace gsforge {

using Rational = boost::multiprecision::cpp_rational;

/// Univariate power series sum_{j=0}^{N} c_j t^j, truncated at order N.
///
/// The radius is an estimate of where the truncation is trustworthy;
/// checked evaluation refuses |t| > radius. Arithmetic comes in two
/// flavours: truncated products (result kept to a requested order, used
/// by the recurrences) and exact polynomial products (used when the
/// truncated series are treated as polynomials, e.g. in P2/P3/P6).
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(std::vector<double> coeffs, double radius);

    static TruncatedSeries constant(double c, double radius);
    /// The monomial t, i.e. coefficients {0, 1}.
    static TruncatedSeries identity(double radius);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    double radius() const { return radius_; }
    const std::vector<double>& coeffs() const { return coeffs_; }
    double operator[](std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : 0.0; }

    /// Horner evaluation; throws DomainError when |t| > radius.
    double eval(double t) const;
    double eval_deriv(double t) const;
    /// k-th derivative at t (k = 0 is eval).
    double eval_derivative(double t, int k) const;
    /// Horner evaluation without the radius check.
    double eval_unchecked(double t) const;

    TruncatedSeries derivative() const;
    /// Coefficients of f(t0 + s) as a series in s (exact Taylor shift).
    TruncatedSeries shifted(double t0) const;
    /// (f(t) - f(0)) / t; the constant term is discarded.
    TruncatedSeries divided_by_t() const;
    TruncatedSeries truncated(int order) const;
    TruncatedSeries with_radius(double radius) const;
    /// Reciprocal series 1/f to the given order; requires c_0 != 0.
    TruncatedSeries reciprocal(int order) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(double s, const TruncatedSeries& a);
    /// Exact polynomial product (order = order(a) + order(b)).
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries multiply_truncated(const TruncatedSeries& a, const TruncatedSeries& b,
                                              int order);

    /// {"coeffs":[...], "order":N, "radius":r}
    std::string to_json() const;
    static TruncatedSeries from_json(const std::string& text);

private:
    std::vector<double> coeffs_{0.0};
    double radius_ = 1.0;
};

/// Ratio-test estimate of the convergence radius from the trailing (up to)
/// four coefficients, floored at `floor`.
double ratio_test_radius(const std::vector<double>& coeffs, double floor = 1e-3);

/// Coefficients of z(t) and zeta(t) solving
///   z' = -z/t + 5 zeta,   zeta' = z zeta^2 / (3t) - zeta^3
/// with z(0) = 0, zeta(0) = zeta0 (unit mass parameter).
template <class T>
struct ZZetaCoefficients {
    std::vector<T> z;
    std::vector<T> zeta;
};

/// Order-N coefficient recurrence, generic over double and Rational:
///   z_j      = 5 zeta_{j-1} / (j+1)
///   j zeta_j = (z zeta^2)_j / 3 - (zeta^3)_{j-1}
template <class T>
ZZetaCoefficients<T> z_zeta_recurrence(int order, const T& zeta0) {
    if (order < 2) {
        throw InvalidArgument("z/zeta recurrence needs order >= 2, got " + std::to_string(order));
    }
    const auto n = static_cast<std::size_t>(order) + 1;
    ZZetaCoefficients<T> c{std::vector<T>(n, T(0)), std::vector<T>(n, T(0))};
    c.zeta[0] = zeta0;
    // zeta^2 and zeta^3 coefficients, filled incrementally
    std::vector<T> zeta2(n, T(0)), zeta3(n, T(0));
    zeta2[0] = zeta0 * zeta0;
    zeta3[0] = zeta2[0] * zeta0;
    for (std::size_t j = 1; j < n; ++j) {
        c.z[j] = T(5) * c.zeta[j - 1] / T(static_cast<long>(j + 1));
        // (z zeta^2)_j only involves z_1..z_j and zeta_0..zeta_{j-1} since z_0 = 0
        T z_zeta2(0);
        for (std::size_t i = 1; i <= j; ++i) z_zeta2 += c.z[i] * zeta2[j - i];
        c.zeta[j] = (z_zeta2 / T(3) - zeta3[j - 1]) / T(static_cast<long>(j));
        T s2(0), s3(0);
        for (std::size_t i = 0; i <= j; ++i) s2 += c.zeta[i] * c.zeta[j - i];
        zeta2[j] = s2;
        for (std::size_t i = 0; i <= j; ++i) s3 += zeta2[i] * c.zeta[j - i];
        zeta3[j] = s3;
    }
    return c;
}

}  // namespace gsforge
