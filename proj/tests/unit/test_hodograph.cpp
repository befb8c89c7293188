#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "gsforge/error.hpp"
#include "gsforge/hodograph.hpp"
#include "gsforge/profiles.hpp"

using namespace gsforge;

namespace {

const Hodograph& hodo() {
    static const Hodograph h(make_euler_profiles());
    return h;
}

}  // namespace

TEST_SUITE("hodograph") {

TEST_CASE("polynomials match their closed forms") {
    const auto& h = hodo();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-0.05, 0.05);
    for (int n = 0; n < 50; ++n) {
        const double x = 2 * d(rng), phi = d(rng);
        const double q = (1 + x) * (1 + x);
        const double p3 = (1 + x) * (q - h.b().eval(phi));
        const double p2 = 6 * phi * (q - h.a().eval(phi));
        CHECK(h.P3(x, phi) == doctest::Approx(p3).epsilon(1e-13));
        CHECK(h.eval_P(PolyLabel::P2, x, phi) == doctest::Approx(p2).epsilon(1e-13));
        CHECK(h.P6(x, phi) == doctest::Approx(p2 - p3 * p3).scale(1.0).epsilon(1e-13));
    }
}

TEST_CASE("derivatives agree with differences") {
    const auto& h = hodo();
    const double x = 0.03, phi = 0.01, e = 1e-5;
    for (auto label : {PolyLabel::P2, PolyLabel::P3, PolyLabel::P6}) {
        const double fx = (h.eval_P(label, x + e, phi) - h.eval_P(label, x - e, phi)) / (2 * e);
        const double fp = (h.eval_P(label, x, phi + e) - h.eval_P(label, x, phi - e)) / (2 * e);
        CHECK(h.derivative(label, x, phi, 1, 0) == doctest::Approx(fx).epsilon(1e-8));
        CHECK(h.derivative(label, x, phi, 0, 1) == doctest::Approx(fp).epsilon(1e-8));
    }
    CHECK(h.derivative(PolyLabel::P6, 0.0, 0.0, 0, 1) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(to_string(PolyLabel::P6) == "P6");
}

TEST_CASE("compatibility residual is small and falls with the order") {
    std::vector<double> xs, phis;
    for (int i = 0; i <= 20; ++i) {
        xs.push_back(-0.025 + 0.0025 * i);
        phis.push_back(-0.025 + 0.0025 * i);
    }
    double prev = 1.0;
    for (int n : {4, 8, 12}) {
        const double r = Hodograph(make_euler_profiles(n)).compatibility_residual(xs, phis);
        CHECK(r < prev);
        prev = r;
    }
    CHECK(prev <= 1e-9);
}

TEST_CASE("phi outside the profile interval is rejected") {
    CHECK_THROWS_AS(hodo().P3(0.0, 0.2), DomainError);
    CHECK_FALSE(hodo().in_domain(0.0, 0.2));
}

TEST_CASE("boundary curve lies on P6 = 0 with delta''(0) = 2") {
    const auto& h = hodo();
    const BoundaryCurve c = boundary_delta(h, 0.05, 0.05 / 200);
    CHECK(c.max_p6_residual < 1e-12);
    CHECK(c.delta_values[c.zero_index()] == doctest::Approx(0.0));
    for (std::size_t i = 0; i < c.x_nodes.size(); i += 37) {
        CHECK(std::abs(h.P6(c.x_nodes[i], c.delta_values[i])) < 1e-12);
        // the curve is a characteristic: delta' = P3(x, delta)
        CHECK(c.slopes[i] == doctest::Approx(h.P3(c.x_nodes[i], c.delta_values[i])));
    }
    for (double sp : {1e-2, 5e-3, 2.5e-3}) CHECK(std::abs(c.second_difference_at_zero(sp) - 2.0) <= 5 * sp * sp);
    CHECK(c(0.0123) == doctest::Approx(c.delta_values[c.zero_index()] + 0.0123 * 0.0123).epsilon(0.05));
    CHECK_THROWS_AS(boundary_delta(h, 0.05, 0.01), InvalidArgument);
}

TEST_CASE("column primitive matches an independent quadrature") {
    // y(phi) = integral from delta to phi of 1 / sqrt(P6(x, s)) ds
    const auto& h = hodo();
    boost::math::quadrature::tanh_sinh<double> ts;
    for (double x : {0.0, 0.04}) {
        const ColumnProfile col(h, x);
        CHECK(std::abs(h.P6(x, col.base())) < 1e-12);
        for (double up : {0.002, 0.01, 0.03}) {
            const double phi = col.base() + up;
            const double ref = ts.integrate([&](double s) { return 1.0 / std::sqrt(h.P6(x, s)); }, col.base(), phi);
            CHECK(col.primitive(phi) == doctest::Approx(ref).epsilon(1e-9));
            CHECK(col.phi_at(ref) == doctest::Approx(phi).epsilon(1e-9));
            CHECK(col.phi_at(-ref) == col.phi_at(ref));
        }
        CHECK_THROWS_AS(col.phi_at(2 * col.max_height()), DomainError);
    }
}

TEST_CASE("axis table is increasing from zero") {
    const AxisTable t = axis_profile(hodo(), 0.12, 25);
    CHECK(t.phi.front() == doctest::Approx(0.0));
    for (std::size_t i = 1; i < t.phi.size(); ++i) CHECK(t.phi[i] > t.phi[i - 1]);
    CHECK_THROWS_AS(axis_profile(hodo(), 10.0, 5), DomainError);
}

}
