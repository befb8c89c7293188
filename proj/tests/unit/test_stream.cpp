#include <doctest.h>

#include <cmath>
#include <vector>

#include "gsforge/error.hpp"
#include "gsforge/hodograph.hpp"
#include "gsforge/profiles.hpp"
#include "gsforge/stream.hpp"
#include "gsforge/verify.hpp"

using namespace gsforge;

TEST_SUITE("stream") {

TEST_CASE("phi is even in y and follows the boundary curve on y = 0") {
    const Hodograph h(make_euler_profiles());
    const Grid2D g = Grid2D::symmetric(0.05, 0.1, 41, 41);
    const GridField phi = build_phi(g, h);
    const int j0 = g.zero_row();
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) CHECK(phi.at(i, j) == phi.at(i, g.ny - 1 - j));
    const BoundaryCurve c = boundary_delta(h, 0.05, 0.05 / 200);
    for (int i = 0; i < g.nx; i += 5) CHECK(phi.at(i, j0) == doctest::Approx(c(g.x(i))).epsilon(1e-9));
    // the bottom of each column is the minimum of phi
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) CHECK(phi.at(i, j) >= phi.at(i, j0) - 1e-15);
}

TEST_CASE("gradient consistency converges at second order") {
    const Hodograph h(make_euler_profiles());
    std::vector<double> hs, rx, ry;
    for (int n : {41, 81, 161}) {
        const Grid2D g = Grid2D::symmetric(0.1, 0.1, n, n);
        const GridField phi = build_phi(g, h);
        const auto uv = compute_UV(phi, h);
        const auto r = gradient_consistency(phi, uv.U, uv.V);
        hs.push_back(r.hx);
        rx.push_back(r.res_x);
        ry.push_back(r.res_y);
    }
    CHECK(convergence_study(hs, rx).order == doctest::Approx(2.0).epsilon(0.15));
    CHECK(convergence_study(hs, ry).order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("V is odd in y") {
    const Hodograph h(make_euler_profiles());
    const Grid2D g = Grid2D::symmetric(0.05, 0.05, 21, 21);
    const auto uv = compute_UV(build_phi(g, h), h);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            CHECK(uv.V.at(i, j) == -uv.V.at(i, g.ny - 1 - j));
            CHECK(uv.U.at(i, j) == uv.U.at(i, g.ny - 1 - j));
        }
}

TEST_CASE("both constructions agree") {
    const Hodograph h(make_euler_profiles());
    const Grid2D g = Grid2D::symmetric(0.12, 0.12, 61, 61);
    const GridField a = build_phi(g, h);
    const GridField b = build_phi_boundary_first(g, h);
    double d = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k) d = std::max(d, std::abs(a.values[k] - b.values[k]));
    CHECK(d <= 1e-7);
}

TEST_CASE("grids reaching past the profile interval fail loudly") {
    const Hodograph h(make_euler_profiles());
    CHECK_THROWS_AS(build_phi(Grid2D::symmetric(0.6, 0.1, 21, 21), h), DomainError);
}

}
