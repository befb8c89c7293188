#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gsforge/error.hpp"
#include "gsforge/euler.hpp"
#include "gsforge/hodograph.hpp"
#include "gsforge/profiles.hpp"
#include "gsforge/stream.hpp"
#include "gsforge/verify.hpp"
#include "helpers.hpp"

using namespace gsforge;

namespace {

struct Built {
    Hodograph hodo{make_euler_profiles()};
    GridField phi;
    CylField field;
};

Built build(const DimensionalParams& params, int n = 81) {
    Built b;
    b.phi = build_phi(Grid2D::symmetric(0.12, 0.12, n, n), b.hodo);
    b.field = assemble_velocity(b.phi, b.hodo, params);
    return b;
}

}  // namespace

TEST_SUITE("euler") {

TEST_CASE("closed-form nodal values") {
    const DimensionalParams params{1.5, 0.4};
    const Built b = build(params, 41);
    const double m = params.m(), ell = params.ell;
    CHECK(m == doctest::Approx(1.0 / (2 * 1.5 * 0.4)));
    const auto uv = compute_UV(b.phi, b.hodo);
    const CylField& f = b.field;
    for (int j = 0; j < 41; j += 7) {
        for (int i = 0; i < 41; i += 9) {
            const double x = b.phi.grid.x(i), phi = b.phi.at(i, j);
            const double r = ell * (1 + x);
            CHECK(f.grid.x(i) == doctest::Approx(r));
            CHECK(f.psi.at(i, j) == doctest::Approx(m * std::pow(ell, 4) * phi));
            CHECK(f.u_r.at(i, j) == doctest::Approx(m * std::pow(ell, 3) * uv.V.at(i, j) / r));
            CHECK(f.u_z.at(i, j) == doctest::Approx(-m * std::pow(ell, 3) * uv.U.at(i, j) / r));
            const double F = m * std::pow(ell, 3) * std::sqrt(std::max(0.0, 6 * phi * b.hodo.a().eval(phi)));
            CHECK(f.u_phi.at(i, j) == doctest::Approx(F / r));
            CHECK(f.p.at(i, j) == doctest::Approx(2 * m * f.psi.at(i, j)));
        }
    }
}

TEST_CASE("Bernoulli identity holds to rounding in scaled units") {
    for (double ell : {1.0, 3.0}) {
        const Built b = build(DimensionalParams{ell, 0.5});
        CHECK(bernoulli_residual(b.field).scaled() < 1e-13);
    }
}

TEST_CASE("dropping the swirl breaks Bernoulli") {
    Built b = build(DimensionalParams{});
    AssemblyOptions o;
    o.swirl = false;
    CHECK(bernoulli_residual(assemble_velocity(b.phi, b.hodo, DimensionalParams{}, o)).scaled() > 1e-4);
}

TEST_CASE("Grad-Shafranov and steady residuals are small") {
    const Built b = build(DimensionalParams{}, 161);
    CHECK(testing::interior_max(gs_residual_field(b.field)) < 1e-4);
    auto mask = [](double r, double z) { return (r - 1) * (r - 1) + z * z > 0.05 * 0.05; };
    CHECK(make_report("steady", euler_steady_residual(b.field.state()), 1e-3, mask).pass);
    CHECK(make_report("div", axisymmetric_divergence(b.field.state()), 1e-6, mask).pass);
}

TEST_CASE("analytic vorticity matches the curl of u") {
    Built b = build(DimensionalParams{}, 161);
    CylField fd = b.field;
    vorticity_from_velocity(fd);
    auto mask = [](double r, double z) { return (r - 1) * (r - 1) + z * z > 0.05 * 0.05; };
    for (auto [a, c] : {std::pair{&b.field.omega_r, &fd.omega_r}, std::pair{&b.field.omega_z, &fd.omega_z}}) {
        GridField d = *a;
        for (std::size_t k = 0; k < d.values.size(); ++k) d.values[k] -= c->values[k];
        CHECK(make_report("omega", d, 1e-2, mask).pass);
    }
}

TEST_CASE("Cartesian sampler rotates with the azimuth") {
    const Built b = build(DimensionalParams{}, 41);
    const CartesianSampler s(b.field);
    const int i = 25, j = 23;
    const double r = b.field.grid.x(i), z = b.field.grid.y(j);
    const auto a = s(r, 0.0, z);
    CHECK(a[0] == doctest::Approx(b.field.u_r.at(i, j)));
    CHECK(a[1] == doctest::Approx(b.field.u_phi.at(i, j)));
    CHECK(a[2] == doctest::Approx(b.field.u_z.at(i, j)));
    const auto q = s(0.0, r, z);  // quarter turn
    CHECK(q[0] == doctest::Approx(-b.field.u_phi.at(i, j)));
    CHECK(q[1] == doctest::Approx(b.field.u_r.at(i, j)));
    CHECK(q[3] == doctest::Approx(a[3]));
    CHECK_THROWS_AS(s(5.0, 0.0, 0.0), DomainError);
}

TEST_CASE("parameters are validated") {
    CHECK_THROWS_AS((DimensionalParams{-1.0, 0.5}.validate()), InvalidArgument);
    CHECK_THROWS_AS((DimensionalParams{1.0, 0.0}.validate()), InvalidArgument);
}

}
