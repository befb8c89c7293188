#include <doctest.h>

#include <cmath>

#include "gsforge/error.hpp"
#include "gsforge/ipm.hpp"
#include "gsforge/verify.hpp"

using namespace gsforge;

TEST_SUITE("ipm") {

TEST_CASE("closed form at k = 1, s = 1/2") {
    const IpmSolution sol(IpmParams{1.0, 0.5, 0.0, 0.0});
    for (auto [x, y] : {std::pair{1.0, 0.2}, std::pair{3.0, -1.0}, std::pair{0.4, 0.1}}) {
        const double psi = (x - y) * (x - y) / 16;
        CHECK(std::abs(sol.psi(x, y) - psi) <= 1e-14);
        CHECK(std::abs(sol.p(x, y) - psi) <= 1e-14);
        CHECK(sol.theta(x, y) == doctest::Approx(std::sqrt(psi)));
        const auto v = sol(x, y);
        CHECK(v[0] == doctest::Approx((x - y) / 8));
        CHECK(v[1] == doctest::Approx((x - y) / 8));
    }
    CHECK(sol.psi(0.0, 1.0) == 0.0);
    CHECK(sol(0.0, 1.0)[0] == 0.0);
}

TEST_CASE("f' is the derivative of f") {
    for (double s : {0.3, 0.5, 0.8}) {
        const IpmSolution sol(IpmParams{-0.7, s, 0.3, -0.2});
        for (double z : {0.1, 0.5, 2.0}) {
            const double e = 1e-6;
            CHECK(sol.f_prime(z) == doctest::Approx((sol.f(z + e) - sol.f(z - e)) / (2 * e)).epsilon(1e-7));
        }
    }
}

TEST_CASE("residuals vanish to rounding away from z = 0") {
    const IpmSolution sol(IpmParams{1.0, 0.5, 0.0, 0.0});
    const Grid2D g(1.1, 1.3, 0.0, 0.2, 201, 201);
    const auto r = ipm_residual(sol.sample(g).state());
    CHECK(make_report("d", r.momentum, 1e-10).pass);
    CHECK(make_report("t", r.transport, 1e-10).pass);
    CHECK(make_report("v", r.divergence, 1e-10).pass);
}

TEST_CASE("strip localization") {
    const IpmSolution sol(IpmParams{2.0, 0.5, 0.0, 0.0});
    const LocalizedIpm loc(sol, 1.0, 0.25);
    const Grid2D g(1.0, 3.0, 0.0, 0.5, 81, 41);
    const PlanarFields f = loc.sample(g);
    std::optional<double> high;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double z = sol.z(g.x(i), g.y(j));
            if (std::abs(z - 1.0) < 0.25) continue;
            CHECK(f.u1.at(i, j) == 0.0);
            CHECK(f.u2.at(i, j) == 0.0);
            CHECK(f.theta.at(i, j) == 0.0);
            if (z < 1.0) {
                CHECK(f.p.at(i, j) == 0.0);
            } else {
                if (!high) high = f.p.at(i, j);
                CHECK(f.p.at(i, j) == *high);
            }
        }
    }
    // inside the strip the cutoff version still solves the system
    const auto r = ipm_residual(loc.sample(Grid2D(1.4, 1.6, 0.2, 0.4, 201, 201)).state());
    CHECK(make_report("d", r.momentum, 1e-3).pass);
    CHECK(make_report("v", r.divergence, 1e-3).pass);
}

TEST_CASE("invalid strips") {
    const IpmSolution sol(IpmParams{});
    CHECK_THROWS_AS(LocalizedIpm(IpmSolution(IpmParams{0.0, 0.5, 0, 0}), 1.0, 0.1), InvalidArgument);
    CHECK_THROWS_AS(LocalizedIpm(sol, 0.05, 0.1), InvalidArgument);
    CHECK_THROWS_AS(LocalizedIpm(sol, 1.0, 0.0), InvalidArgument);
    CHECK_THROWS_AS(IpmSolution(IpmParams{1.0, 1.5, 0, 0}), InvalidArgument);
}

}
