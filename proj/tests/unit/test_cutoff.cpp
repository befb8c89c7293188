#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "gsforge/cutoff.hpp"
#include "gsforge/error.hpp"

using namespace gsforge;

TEST_SUITE("cutoff") {

TEST_CASE("smooth step") {
    CHECK(smooth_step(0.0) == 0.0);
    CHECK(smooth_step(-1.0) == 0.0);
    CHECK(smooth_step(1.0) == 1.0);
    CHECK(smooth_step(0.5) == doctest::Approx(0.5));
    CHECK(smooth_step(0.3) + smooth_step(0.7) == doctest::Approx(1.0));
}

TEST_CASE("bump is zero outside its window and one in the middle") {
    const CutoffSpec c = CutoffSpec::bump(1.0, 3.0);
    CHECK(c.kind() == CutoffKind::Bump);
    CHECK(c(1.0) == 0.0);
    CHECK(c(0.5) == 0.0);
    CHECK(c(3.0) == 0.0);
    CHECK(c(7.0) == 0.0);
    CHECK(c(2.0) == doctest::Approx(1.0));
    CHECK(c(1.5) > 0.0);
    CHECK(c(1.5) < 1.0);
    const double e = 1e-6;
    for (double p : {1.2, 1.7, 2.4, 2.9}) CHECK(c.derivative(p) == doctest::Approx((c(p + e) - c(p - e)) / (2 * e)).epsilon(1e-6));
}

TEST_CASE("primitive matches adaptive quadrature") {
    const CutoffSpec c = CutoffSpec::bump(0.01, 0.02, 0.003);
    using Q = boost::math::quadrature::gauss_kronrod<double, 31>;
    for (int k : {1, 2}) {
        for (double p : {0.005, 0.012, 0.015, 0.019, 0.03}) {
            const double hi = std::max(p, 0.02);
            const double ref = -Q::integrate([&](double s) { return std::pow(c(s), k); }, p, hi, 12, 1e-14);
            CHECK(c.primitive(p, k) == doctest::Approx(ref).epsilon(1e-10).scale(1e-3));
        }
        CHECK(c.primitive(0.05, k) == 0.0);
    }
    CHECK_THROWS_AS(c.primitive(0.01, 3), InvalidArgument);
}

TEST_CASE("identity cutoff") {
    const CutoffSpec c = CutoffSpec::identity();
    CHECK(c(0.123) == 1.0);
    CHECK(c.derivative(0.123) == 0.0);
    CHECK(c.primitive(0.123, 2) == 0.123);
}

TEST_CASE("invalid windows") {
    CHECK_THROWS_AS(CutoffSpec::bump(2.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(CutoffSpec::bump(1.0, 2.0, 0.8), InvalidArgument);
}

}
