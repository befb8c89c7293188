#include <doctest.h>

#include <cmath>

#include "gsforge/error.hpp"
#include "gsforge/profiles.hpp"
#include "gsforge/series.hpp"

using namespace gsforge;

TEST_SUITE("series") {

TEST_CASE("first coefficients by hand") {
    // zeta0 = 3/2, z1 = 5 zeta0 / 2, zeta1 = z1 zeta0^2 / 3 - zeta0^3, z2 = 5 zeta1 / 3,
    // zeta2 = ((z zeta^2)_2 / 3 - (zeta^3)_1) / 2
    const auto c = solve_z_zeta_exact(6);
    CHECK(c.zeta[0] == Rational(3, 2));
    CHECK(c.z[0] == 0);
    CHECK(c.z[1] == Rational(15, 4));
    CHECK(c.zeta[1] == Rational(-9, 16));
    CHECK(c.z[2] == Rational(-15, 16));
    CHECK(c.zeta[2] == Rational(63, 128));
}

TEST_CASE("float recurrence matches the rational one") {
    const auto exact = solve_z_zeta_exact(16);
    const auto fl = solve_z_zeta(16);
    for (int j = 1; j <= 16; ++j) {
        const double r = static_cast<double>(exact.zeta[j]);
        CHECK(fl.zeta[j] == doctest::Approx(r).epsilon(1e-14));
        CHECK(fl.z[j] == doctest::Approx(static_cast<double>(exact.z[j])).epsilon(1e-14));
    }
}

TEST_CASE("truncated series solve the z, zeta system") {
    // z' = -z/t + 5 zeta, zeta' = z zeta^2 / (3t) - zeta^3 (m = 1); the
    // residual of the degree-N truncation is O(t^N)
    auto residual = [](int order, double t) {
        const auto zz = solve_z_zeta(order);
        const double z = zz.z.eval(t), zeta = zz.zeta.eval(t);
        const double r1 = zz.z.eval_deriv(t) + z / t - 5.0 * zeta;
        const double r2 = zz.zeta.eval_deriv(t) - z * zeta * zeta / (3.0 * t) + zeta * zeta * zeta;
        return std::max(std::abs(r1), std::abs(r2));
    };
    for (double t : {0.05, -0.03, 0.01}) {
        CHECK(residual(12, t) < 1e-12);
        CHECK(residual(4, t) > residual(12, t));
    }
    CHECK(residual(4, 0.05) > 1e-8);
}

TEST_CASE("series algebra") {
    const TruncatedSeries a({1.0, 2.0, -1.0, 0.5}, 1.0);
    const TruncatedSeries b({0.5, -1.0, 3.0}, 1.0);
    for (double t : {-0.3, 0.1, 0.7}) {
        CHECK((a * b).eval(t) == doctest::Approx(a.eval(t) * b.eval(t)).epsilon(1e-14));
        CHECK((a + b).eval(t) == doctest::Approx(a.eval(t) + b.eval(t)));
        CHECK(a.shifted(0.2).eval(t - 0.2) == doctest::Approx(a.eval(t)).epsilon(1e-13));
        CHECK(a.derivative().eval(t) == doctest::Approx(a.eval_deriv(t)));
        CHECK(a.eval_derivative(t, 2) == doctest::Approx(a.derivative().derivative().eval(t)));
    }
    const auto inv = a.reciprocal(8);
    const auto one = multiply_truncated(a, inv, 8);
    CHECK(one[0] == doctest::Approx(1.0));
    for (int j = 1; j <= 8; ++j) CHECK(std::abs(one[j]) < 1e-13);
    const auto t_over = TruncatedSeries({0.0, 2.0, 3.0}, 1.0).divided_by_t();
    CHECK(t_over.eval(0.5) == doctest::Approx(2.0 + 1.5));
}

TEST_CASE("radius is enforced") {
    const TruncatedSeries a({1.0, 1.0}, 0.1);
    CHECK_NOTHROW(a.eval(0.1));
    CHECK_THROWS_AS(a.eval(0.2), DomainError);
    CHECK(a.eval_unchecked(0.2) == doctest::Approx(1.2));
}

TEST_CASE("json round trip is exact") {
    const auto zz = solve_z_zeta(12);
    const auto back = TruncatedSeries::from_json(zz.zeta.to_json());
    CHECK(back.coeffs() == zz.zeta.coeffs());
    CHECK(back.radius() == zz.zeta.radius());
}

TEST_CASE("bad orders are rejected") {
    CHECK_THROWS_AS(solve_z_zeta(1), InvalidArgument);
    CHECK_THROWS_AS(solve_z_zeta_exact(0), InvalidArgument);
}

}
