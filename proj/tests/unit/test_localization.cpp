#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gsforge/error.hpp"
#include "gsforge/euler.hpp"
#include "gsforge/hodograph.hpp"
#include "gsforge/localization.hpp"
#include "gsforge/profiles.hpp"
#include "gsforge/stream.hpp"
#include "gsforge/verify.hpp"

using namespace gsforge;

namespace {

std::shared_ptr<const TemplateSampler> small_template() {
    static auto t = [] {
        TemplateOptions o;
        o.nodes = 101;
        return make_template(o);
    }();
    return t;
}

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

}  // namespace

TEST_SUITE("localization") {

TEST_CASE("cutoff leaves exact zeros outside the annulus") {
    const Hodograph h(make_euler_profiles());
    const GridField phi = build_phi(Grid2D::symmetric(0.12, 0.12, 121, 121), h);
    const CylField f = assemble_velocity(phi, h, DimensionalParams{});
    const ShellThresholds th = annulus_thresholds(f, 0.1);
    CHECK(th.p_lo > 0.0);
    CHECK(th.p_lo < th.p_hi);
    const CylField loc = apply_cutoff(f, CutoffSpec::bump(th.p_lo, th.p_hi));
    CHECK(loc.localized);
    CHECK(support_violations(loc, 0.1) == 0);
    // the uncut field violates the same check
    CHECK(support_violations(f, 0.1) > 0);
    // pressure: Phi(p) is constant where the cutoff vanishes
    for (std::size_t k = 0; k < loc.p.values.size(); ++k) {
        if (f.p.values[k] >= th.p_hi) CHECK(loc.p.values[k] == 0.0);
    }
    CHECK_THROWS_AS(annulus_thresholds(f, 0.5), DomainError);
}

TEST_CASE("template vanishes off the shell and is axisymmetric") {
    const auto t = small_template();
    const double eps = t->shell_radius();
    CHECK(t->bounding_radius() == doctest::Approx(1 + eps));
    // inside the hole and outside the shell
    for (Vec3 x : {Vec3{1.0, 0.0, 0.0}, Vec3{1.0 + 0.5 * eps, 0.0, 0.0}, Vec3{1.0 + 1.01 * eps, 0.0, 0.0},
                   Vec3{0.0, 0.0, 0.0}, Vec3{3.0, 1.0, -2.0}}) {
        const auto u = (*t)(x);
        CHECK(u[0] == 0.0);
        CHECK(u[1] == 0.0);
        CHECK(u[2] == 0.0);
    }
    CHECK((*t)({1.0, 0.0, 0.0})[3] == doctest::Approx(t->hole_pressure()));
    CHECK((*t)({3.0, 0.0, 0.0})[3] == 0.0);
    // rotate a point in the shell about the x3 axis
    const Vec3 x{1.0 + 0.085, 0.0, 0.01};
    const auto u = (*t)(x);
    CHECK(std::hypot(u[0], u[1], u[2]) > 0.0);
    const double c = std::cos(0.7), s = std::sin(0.7);
    const auto v = (*t)({c * x[0], s * x[0], x[2]});
    CHECK(v[0] == doctest::Approx(c * u[0] - s * u[1]));
    CHECK(v[1] == doctest::Approx(s * u[0] + c * u[1]));
    CHECK(v[2] == doctest::Approx(u[2]));
    CHECK(v[3] == doctest::Approx(u[3]));
}

TEST_CASE("template velocity is divergence free") {
    const auto t = small_template();
    const double e = 1e-5;
    for (Vec3 x : {Vec3{1.08, 0.0, 0.02}, Vec3{0.0, 0.92, -0.03}, Vec3{0.7, 0.7, 0.0}}) {
        double div = 0.0;
        for (int d = 0; d < 3; ++d) {
            Vec3 a = x, b = x;
            a[d] += e;
            b[d] -= e;
            div += ((*t)(a)[d] - (*t)(b)[d]) / (2 * e);
        }
        CHECK(std::abs(div) < 1e-3 * norm({(*t)(x)[0], (*t)(x)[1], (*t)(x)[2]}) / 1e-2 + 1e-6);
    }
}

TEST_CASE("helical placements are disjoint and geometric") {
    const auto t = small_template();
    const double R = t->bounding_radius();
    const auto pl = helical_placements(12, 1.0 / 3.0, HelixSpec{}, R);
    REQUIRE(pl.size() == 12);
    for (std::size_t n = 0; n < pl.size(); ++n) {
        const double ell = 0.1 * std::pow(1.0 / 12.0, static_cast<double>(n + 1));
        CHECK(pl[n].scale == doctest::Approx(ell));
        CHECK(pl[n].amplitude == doctest::Approx(std::pow(ell, 1.0 / 3.0)));
        // orthonormal rotation
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double dot = 0.0;
                for (int k = 0; k < 3; ++k) dot += pl[n].rotation[k][a] * pl[n].rotation[k][b];
                CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).scale(1.0));
            }
        for (std::size_t m = 0; m < n; ++m) {
            Vec3 d{};
            for (int k = 0; k < 3; ++k) d[k] = pl[n].center[k] - pl[m].center[k];
            CHECK(norm(d) > R * (pl[n].scale + pl[m].scale));
        }
    }
    CHECK_THROWS_AS(helical_placements(3, 0.3, HelixSpec{1.0, 0.5, 0.1, 1.5}, R), InvalidArgument);
}

TEST_CASE("multiscale field is the scaled template in each shell") {
    const auto t = small_template();
    const auto pl = helical_placements(6, 1.0 / 3.0, HelixSpec{}, t->bounding_radius());
    const MultiscaleField field(t, pl);
    const Vec3 xi{1.07, 0.02, 0.03};
    const auto ut = (*t)(xi);
    for (std::size_t n = 0; n < pl.size(); ++n) {
        const Vec3 x = field.to_world(n, xi);
        CHECK(field.shell_at(x) == static_cast<int>(n));
        const auto u = field(x);
        for (int a = 0; a < 3; ++a) {
            double ref = 0.0;
            for (int k = 0; k < 3; ++k) ref += pl[n].rotation[a][k] * ut[k];
            CHECK(u[a] == doctest::Approx(pl[n].amplitude * ref).epsilon(1e-9));
        }
        CHECK(u[3] == doctest::Approx(pl[n].amplitude * pl[n].amplitude * ut[3]).epsilon(1e-9));
    }
    CHECK(field.shell_at({5.0, 5.0, 5.0}) == -1);
    CHECK(field({5.0, 5.0, 5.0})[0] == 0.0);
}

TEST_CASE("norm estimate against a direct sum") {
    const auto pl = helical_placements(20, 1.0 / 3.0, HelixSpec{}, 1.1);
    double sum = 0.0;
    for (const auto& p : pl) sum += p.amplitude * p.amplitude * std::pow(p.scale, 3.0 - 2.0 / 3.0);
    const NormEstimate l2 = norm_estimate(pl, 1.0 / 3.0, 2.0);
    CHECK(l2.partial == doctest::Approx(std::sqrt(sum)).epsilon(1e-12));
    CHECK(l2.finite);
    CHECK(l2.total >= l2.partial);
    const double inf = std::numeric_limits<double>::infinity();
    const NormEstimate sup = norm_estimate(pl, 1.0 / 3.0, inf);
    CHECK(sup.finite);
    CHECK(sup.total == doctest::Approx(1.0));
    const NormEstimate above = norm_estimate(pl, 0.4, inf);
    CHECK_FALSE(above.finite);
    CHECK(above.last_ratio == doctest::Approx(std::pow(12.0, 0.4 - 1.0 / 3.0)));
}

TEST_CASE("Holder sampling is seeded") {
    const auto t = small_template();
    const auto pl = helical_placements(5, 1.0 / 3.0, HelixSpec{}, t->bounding_radius());
    const MultiscaleField field(t, pl);
    HolderOptions o;
    o.pairs_per_shell = 50;
    const auto a = empirical_holder(field, 1.0 / 3.0, o);
    const auto b = empirical_holder(field, 1.0 / 3.0, o);
    CHECK(a.per_shell == b.per_shell);
    for (double q : a.per_shell) CHECK(q == doctest::Approx(a.per_shell.front()).epsilon(1e-6));
    o.seed += 1;
    CHECK(empirical_holder(field, 1.0 / 3.0, o).per_shell != a.per_shell);
}

TEST_CASE("local dissipation residual is second order") {
    const auto t = small_template();
    const auto pl = helical_placements(3, 1.0 / 3.0, HelixSpec{}, t->bounding_radius());
    const MultiscaleField field(t, pl);
    const std::array<double, 3> steps{4e-4, 2e-4, 1e-4};
    const auto d = local_dissipation(field, 2, steps);
    CHECK(d.order == doctest::Approx(2.0).epsilon(0.15));
    CHECK_THROWS_AS(local_dissipation(field, 7, steps), InvalidArgument);
}

}
