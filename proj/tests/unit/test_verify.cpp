#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <vector>

#include "gsforge/error.hpp"
#include "gsforge/verify.hpp"
#include "helpers.hpp"

using namespace gsforge;
using testing::sample;

TEST_SUITE("verify") {

TEST_CASE("stencils are exact on quadratics, edges included") {
    const Grid2D g(0.5, 1.5, -0.5, 0.5, 11, 13);
    const GridField q = sample(g, [](double x, double y) { return 3 * x * x - 2 * x * y + y * y + x - 4; });
    const GridField dx = d_dx(q), dy = d_dy(q), dxx = d2_dx2(q), dyy = d2_dy2(q);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            CHECK(dx.at(i, j) == doctest::Approx(6 * x - 2 * y + 1));
            CHECK(dy.at(i, j) == doctest::Approx(-2 * x + 2 * y));
            CHECK(dxx.at(i, j) == doctest::Approx(6.0));
            CHECK(dyy.at(i, j) == doctest::Approx(2.0));
        }
}

TEST_CASE("Grad-Shafranov operator") {
    const Grid2D g(0.5, 1.5, -0.5, 0.5, 21, 21);
    CHECK(gs_operator(sample(g, [](double r, double) { return r * r / 2; })).max_abs() < 1e-11);
    CHECK(gs_operator(sample(g, [](double, double z) { return z; })).max_abs() < 1e-11);
    // Delta* r^4 = 12 r^2 - 4 r^2 = 8 r^2
    const GridField r4 = gs_operator(sample(g, [](double r, double) { return r * r * r * r; }));
    CHECK(r4.at(10, 10) == doctest::Approx(8.0).epsilon(1e-2));
    CHECK_THROWS_AS(gs_operator(sample(Grid2D(-1, 1, 0, 1, 11, 11), [](double, double) { return 0.0; })),
                    InvalidArgument);
}

TEST_CASE("reports separate edge nodes and honour the mask") {
    const Grid2D g(0, 1, 0, 1, 11, 11);
    GridField r(g, "r");
    r.at(0, 5) = 5.0;   // edge
    r.at(5, 5) = 0.25;  // interior
    const ResidualReport rep = make_report("eq", r, 0.3);
    CHECK(rep.max_res == 0.25);
    CHECK(rep.boundary_max_res == 5.0);
    CHECK(rep.pass);
    CHECK(rep.h == doctest::Approx(0.1));
    const ResidualReport masked = make_report("eq", r, 0.1, [](double x, double) { return x > 0.6; });
    CHECK(masked.max_res == 0.0);
    const auto j = nlohmann::json::parse(rep.to_json());
    for (const char* key : {"equation", "h", "max_res", "l2_res", "boundary_max_res", "order", "pass"})
        CHECK(j.contains(key));
    CHECK(j["order"].is_null());
}

TEST_CASE("convergence study") {
    const std::vector<double> h{0.1, 0.05, 0.025};
    const std::vector<double> r{3e-2, 7.5e-3, 1.875e-3};
    const auto c = convergence_study(h, r);
    CHECK(c.order == doctest::Approx(2.0));
    CHECK(c.monotone);
    const std::vector<double> bumpy{3e-2, 4e-2, 1e-3};
    CHECK_FALSE(convergence_study(h, bumpy).monotone);
    const std::vector<double> uneven{0.1, 0.07, 0.025};
    CHECK_THROWS_AS(convergence_study(uneven, r), InvalidArgument);
    CHECK_THROWS_AS(convergence_study(std::vector<double>{0.1, 0.05}, std::vector<double>{1, 2}), InvalidArgument);
}

TEST_CASE("centred differences of a smooth field converge at second order") {
    std::vector<double> h, res;
    for (int n : {21, 41, 81}) {
        const Grid2D g(0, 1, 0, 1, n, n);
        const GridField f = sample(g, [](double x, double y) { return std::sin(3 * x) * std::cos(2 * y); });
        GridField err = d_dx(f);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) err.at(i, j) -= 3 * std::cos(3 * g.x(i)) * std::cos(2 * g.y(j));
        h.push_back(g.hx);
        res.push_back(make_report("dx", err, 1.0).max_res);
    }
    CHECK(convergence_study(h, res).order == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("planar residuals of a rigid rotation") {
    // u = (-y, x) is steady Euler with p = (x^2 + y^2)/2 and theta = 0
    const Grid2D g(-1, 1, -1, 1, 21, 21);
    const GridField u1 = sample(g, [](double, double y) { return -y; });
    const GridField u2 = sample(g, [](double x, double) { return x; });
    const GridField th(g, "theta");
    const GridField p = sample(g, [](double x, double y) { return 0.5 * (x * x + y * y); });
    const auto r = boussinesq_residual(PlanarState{u1, u2, th, p});
    CHECK(make_report("m", r.momentum, 1e-12).pass);
    CHECK(make_report("d", r.divergence, 1e-12).pass);
    CHECK(make_report("t", r.transport, 1e-12).pass);
}

TEST_CASE("axisymmetric divergence of a source-free flow") {
    // u_r = 1/r, u_z = 0 is divergence free
    const Grid2D g(0.5, 1.5, -0.5, 0.5, 41, 41);
    const GridField ur = sample(g, [](double r, double) { return 1 / r; });
    const GridField zero(g, "zero");
    const GridField div = axisymmetric_divergence(AxisymmetricState{ur, zero, zero, zero});
    CHECK(testing::interior_max(div) < 1e-2);
}

}
