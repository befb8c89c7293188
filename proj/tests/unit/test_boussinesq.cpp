#include <doctest.h>

#include <cmath>
#include <vector>

#include "gsforge/error.hpp"
#include "gsforge/boussinesq.hpp"
#include "gsforge/verify.hpp"

using namespace gsforge;

TEST_SUITE("boussinesq") {

TEST_CASE("gamma solves its implicit equation") {
    for (double k : {0.5, 1.0, 2.0}) {
        const double c = 1.0 - 0.5 * k * k * std::log(1.0 + 0.5 * k * k);
        CHECK(solve_gamma(0.0, k) == 1.0);
        // k = 2 reaches gamma = 0 near tau = -0.09, so stay above that
        for (double tau : {-0.08, -0.05, 0.1, 0.4}) {
            const double g = solve_gamma(tau, k);
            CHECK(g - 0.5 * k * k * std::log(g + 0.5 * k * k) == doctest::Approx(tau + c).epsilon(1e-12));
        }
    }
}

TEST_CASE("profiles satisfy their ODEs and the linear identity") {
    const BoussinesqProfiles p(BoussinesqParams::with_k(1.0));
    CHECK(p.gamma(0.0) == 1.0);
    CHECK(p.alpha(0.0) == doctest::Approx(0.5));
    CHECK(p.beta(0.0) == doctest::Approx(0.5));
    CHECK(p.identity_residual() < 1e-10);
    const double e = 1e-5;
    for (double t : {-0.3, 0.0, 0.2}) {
        const double g = p.gamma(t);
        CHECK((p.alpha(t + e) - p.alpha(t - e)) / (2 * e) == doctest::Approx(1 + 1 / g).epsilon(1e-7));
        CHECK((p.beta(t + e) - p.beta(t - e)) / (2 * e) == doctest::Approx(-1 / (2 * g)).epsilon(1e-7));
        CHECK((p.gamma(t + e) - p.gamma(t - e)) / (2 * e) == doctest::Approx(p.dgamma(t)).epsilon(1e-7));
    }
    CHECK_THROWS_AS(p.gamma(1.0), DomainError);
}

TEST_CASE("stream function has its minimum at x0 and is even about the axis line") {
    const auto params = BoussinesqParams::with_k(1.0);
    const BoussinesqProfiles p(params);
    const Grid2D g = boussinesq_grid(params, 0.025, 0.2, 51, 201);
    const BoussinesqStream st = build_psi(g, p);
    const GridArgmin m = argmin(st.psi);
    CHECK(m.strict);
    CHECK(m.i == st.axis_column);
    CHECK(g.x(m.i) == doctest::Approx(params.x1_0));
    CHECK(g.y(m.j) == doctest::Approx(params.beta0));
    CHECK(m.value == 0.0);
    for (int j = 0; j < g.ny; j += 13)
        for (int i = 0; i < g.nx; ++i) CHECK(st.psi.at(i, j) == st.psi.at(g.nx - 1 - i, j));
}

TEST_CASE("system residuals converge on the right half") {
    const auto params = BoussinesqParams::with_k(1.0);
    const BoussinesqProfiles p(params);
    std::vector<double> h, mom, div;
    for (int m : {1, 2, 4}) {
        const Grid2D g = boussinesq_grid(params, 0.025, 0.2, 20 * m + 1, 80 * m + 1);
        const BoussinesqStream st = build_psi(g, p);
        const BoussinesqFields f = assemble_boussinesq(st, p);
        const auto r = boussinesq_residual(right_half(f, st.axis_column).state());
        h.push_back(std::max(g.hx, g.hy));
        mom.push_back(make_report("m", r.momentum, 1.0).max_res);
        div.push_back(make_report("d", r.divergence, 1.0).max_res);
        // theta = k psi^(2s), p = psi^(1+s)/(1+s)
        for (std::size_t k = 0; k < f.psi.values.size(); k += 101) {
            CHECK(f.theta.values[k] == doctest::Approx(std::pow(f.psi.values[k], 1.0)));
            CHECK(f.p.values[k] == doctest::Approx(std::pow(f.psi.values[k], 1.5) / 1.5));
        }
    }
    CHECK(convergence_study(h, mom).order == doctest::Approx(2.0).epsilon(0.15));
    CHECK(convergence_study(h, div).order == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("localization keeps the support inside the grid") {
    const auto params = BoussinesqParams::with_k(1.0);
    const BoussinesqProfiles p(params);
    const Grid2D g = boussinesq_grid(params, 0.025, 0.2, 51, 201);
    const BoussinesqStream st = build_psi(g, p);
    const BoussinesqFields f = assemble_boussinesq(st, p);
    const CutoffSpec c = boussinesq_cutoff(f);
    const BoussinesqFields loc = localize_boussinesq(f, c);
    for (int i = 0; i < g.nx; ++i) {
        for (int j : {0, g.ny - 1}) {
            CHECK(loc.u1.at(i, j) == 0.0);
            CHECK(loc.theta.at(i, j) == 0.0);
        }
    }
    // near x0 the cutoff is off as well (p below p_lo)
    CHECK(loc.u2.at(st.axis_column, (g.ny - 1) / 2) == 0.0);
}

TEST_CASE("invalid parameters") {
    CHECK_THROWS_AS(BoussinesqParams::with_k(0.0).validate(), InvalidArgument);
    CHECK_THROWS_AS(BoussinesqParams::with_k(1.0, 1.0).validate(), InvalidArgument);
    BoussinesqParams bad = BoussinesqParams::with_k(1.0);
    bad.alpha0 = 0.7;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    const auto params = BoussinesqParams::with_k(1.0);
    CHECK_THROWS_AS(boussinesq_grid(params, 0.025, 0.2, 50, 201), InvalidArgument);
}

}
