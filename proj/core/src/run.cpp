#include "gsforge/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gsforge/boussinesq.hpp"
#include "gsforge/euler.hpp"
#include "gsforge/export.hpp"
#include "gsforge/hodograph.hpp"
#include "gsforge/ipm.hpp"
#include "gsforge/localization.hpp"
#include "gsforge/profiles.hpp"
#include "gsforge/stream.hpp"
#include "gsforge/verify.hpp"

namespace gsforge {

using json = nlohmann::ordered_json;

namespace {

// Residual tolerances are C * h^2 in units of the flow scale. The constants
// sit a factor 3 to 10 above what the default grids produce.
constexpr double kSteadyC = 50.0;
constexpr double kDivergenceC = 1.0;
constexpr double kGsC = 20.0;
constexpr double kBallBound = 1e-2;  // residual inside the excluded ball, no rate
constexpr double kBernoulliTol = 1e-6;
// The cutoff band is narrow in p, so the localized fields carry large
// derivatives and large (but still O(h^2)) error constants.
constexpr double kLocalizedSteadyC = 2e6;
constexpr double kLocalizedDivergenceC = 5e6;
constexpr double kBousMomentumC = 1.0;
constexpr double kBousTransportC = 0.1;
constexpr double kBousDivergenceC = 2.0;
constexpr double kIpmTol = 1e-10;
constexpr double kIpmLocalizedC = 1e4;
constexpr double kExcludedBall = 0.05;  // radius / ell around (ell, 0)

// ---------------------------------------------------------------- config

using Setter = std::function<void(RunConfig&, const json&)>;

template <class T>
Setter number(T RunConfig::*member) {
    return [member](RunConfig& c, const json& v) {
        if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) throw std::invalid_argument("integer expected");
            if constexpr (std::is_unsigned_v<T>) {
                if (v.is_number_unsigned() || v.get<long long>() >= 0) {
                    c.*member = v.get<T>();
                    return;
                }
                throw std::invalid_argument("non-negative integer expected");
            } else {
                c.*member = v.get<T>();
            }
        } else {
            if (!v.is_number()) throw std::invalid_argument("number expected");
            c.*member = v.get<T>();
        }
    };
}

Setter optional_number(std::optional<double> RunConfig::*member) {
    return [member](RunConfig& c, const json& v) {
        if (v.is_null()) {
            c.*member = std::nullopt;
            return;
        }
        if (!v.is_number()) throw std::invalid_argument("number expected");
        c.*member = v.get<double>();
    };
}

Setter string(std::string RunConfig::*member) {
    return [member](RunConfig& c, const json& v) {
        if (!v.is_string()) throw std::invalid_argument("string expected");
        c.*member = v.get<std::string>();
    };
}

const std::vector<std::pair<std::string, Setter>>& setters() {
    static const std::vector<std::pair<std::string, Setter>> table{
        {"task", string(&RunConfig::task)},
        {"out", string(&RunConfig::out)},
        {"format", string(&RunConfig::format)},
        {"grid",
         [](RunConfig& c, const json& v) {
             if (v.is_null()) {
                 c.grid = std::nullopt;
                 return;
             }
             if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
                 throw std::invalid_argument("[nx, ny] expected");
             c.grid = std::array<int, 2>{v[0].get<int>(), v[1].get<int>()};
         }},
        {"levels", number(&RunConfig::levels)},
        {"order", number(&RunConfig::order)},
        {"ell", number(&RunConfig::ell)},
        {"tau", number(&RunConfig::tau)},
        {"half_width", number(&RunConfig::half_width)},
        {"shell_radius", number(&RunConfig::shell_radius)},
        {"margin", number(&RunConfig::margin)},
        {"p_lo", optional_number(&RunConfig::p_lo)},
        {"p_hi", optional_number(&RunConfig::p_hi)},
        {"alpha_target", number(&RunConfig::alpha_target)},
        {"shells", number(&RunConfig::shells)},
        {"rho", number(&RunConfig::rho)},
        {"scale0", number(&RunConfig::scale0)},
        {"helix_a", number(&RunConfig::helix_a)},
        {"helix_b", number(&RunConfig::helix_b)},
        {"alpha_probe", number(&RunConfig::alpha_probe)},
        {"seed", number(&RunConfig::seed)},
        {"pairs", number(&RunConfig::pairs)},
        {"k", number(&RunConfig::k)},
        {"s", number(&RunConfig::s)},
        {"bous_half_x1", number(&RunConfig::bous_half_x1)},
        {"bous_half_x2", number(&RunConfig::bous_half_x2)},
        {"ipm_x0", number(&RunConfig::ipm_x0)},
        {"ipm_y0", number(&RunConfig::ipm_y0)},
        {"ipm_extent", number(&RunConfig::ipm_extent)},
        {"strip_center", number(&RunConfig::strip_center)},
        {"strip_half_width", number(&RunConfig::strip_half_width)},
        {"golden",
         [](RunConfig& c, const json& v) {
             if (v.is_null()) {
                 c.golden = std::nullopt;
                 return;
             }
             if (!v.is_string()) throw std::invalid_argument("string expected");
             c.golden = v.get<std::string>();
         }},
        {"golden_rtol", number(&RunConfig::golden_rtol)},
    };
    return table;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

// ---------------------------------------------------------------- reports

double sq(double v) { return v * v; }

struct Suite {
    // equation -> reports over levels, in insertion order
    std::vector<std::pair<std::string, std::vector<ResidualReport>>> rows;

    void add(const ResidualReport& r) {
        for (auto& [name, reps] : rows) {
            if (name == r.equation) {
                reps.push_back(r);
                return;
            }
        }
        rows.push_back({r.equation, {r}});
    }
    void finish() {
        for (auto& row : rows) {
            if (row.second.size() >= 3) attach_orders(row.second);
        }
    }
    bool pass() const {
        for (const auto& row : rows)
            for (const auto& r : row.second)
                if (!r.pass) return false;
        return true;
    }
    json to_json() const {
        json out = json::array();
        for (const auto& row : rows)
            for (const auto& r : row.second) out.push_back(json::parse(r.to_json()));
        return out;
    }
};

struct Check {
    std::string name;
    double value;
    double threshold;
    std::string relation;  // "<=", ">=", "==", "finite", "infinite"
    bool pass;
};

Check check_le(const std::string& name, double v, double t) { return {name, v, t, "<=", v <= t}; }
Check check_ge(const std::string& name, double v, double t) { return {name, v, t, ">=", v >= t}; }

json checks_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const auto& c : checks) {
        json j;
        j["name"] = c.name;
        j["value"] = std::isfinite(c.value) ? json(c.value) : json(nullptr);
        j["threshold"] = c.threshold;
        j["relation"] = c.relation;
        j["pass"] = c.pass;
        out.push_back(j);
    }
    return out;
}

struct TaskResult {
    Suite suite;
    std::vector<Check> checks;
    json metrics = json::object();
    std::vector<std::string> artifacts;

    bool pass() const {
        if (!suite.pass()) return false;
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fixed(double v, int digits = 3) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

std::string sci(double v) {
    std::ostringstream os;
    os.setf(std::ios::scientific);
    os.precision(3);
    os << v;
    return os.str();
}

struct Context {
    const RunConfig& config;
    std::ostream& log;
    ExportFormat format;
    std::filesystem::path out;
    bool write_fields = true;
    std::string prefix;  // artifact name prefix inside a combined run

    void note(const std::string& line) const { log << "[gsforge] " << line << '\n'; }
    std::string artifact(const std::string& name) const { return prefix + name; }
    std::string path(const std::string& name) const { return (out / artifact(name)).string(); }
};

std::vector<std::array<int, 2>> grid_levels(const RunConfig& c) {
    std::array<int, 2> g = c.grid ? *c.grid : default_grid(c.task);
    std::vector<std::array<int, 2>> out;
    for (int l = 0; l < c.levels; ++l) {
        out.push_back(g);
        g = {2 * g[0] - 1, 2 * g[1] - 1};
    }
    return out;
}

// ---------------------------------------------------------------- Euler

struct EulerLevel {
    GridField phi;
    CylField field;
};

EulerLevel build_euler_level(const Hodograph& hodo, const RunConfig& c, std::array<int, 2> n) {
    const Grid2D g = Grid2D::symmetric(c.half_width, c.half_width, n[0], n[1]);
    DimensionalParams params{c.ell, c.tau};
    params.validate();
    GridField phi = build_phi(g, hodo);
    CylField field = assemble_velocity(phi, hodo, params);
    return {std::move(phi), std::move(field)};
}

void euler_reports(const CylField& f, const std::string& tag, bool localized, Suite& suite) {
    const double ell = f.params.ell;
    const double speed = f.params.m() * ell * ell;
    const double h = std::max(f.grid.hx, f.grid.hy) / ell;
    const double ball2 = sq(kExcludedBall * ell);
    auto outside = [ell, ball2](double r, double z) { return sq(r - ell) + z * z > ball2; };
    auto inside = [ell, ball2](double r, double z) { return sq(r - ell) + z * z <= ball2; };

    const double steady_c = localized ? kLocalizedSteadyC : kSteadyC;
    const double div_c = localized ? kLocalizedDivergenceC : kDivergenceC;
    auto steady = euler_steady_residual(f.state());
    auto div = axisymmetric_divergence(f.state());
    suite.add(make_report(tag + "steady", steady, steady_c * h * h * speed * speed / ell, outside));
    suite.add(make_report(tag + "steady_ball", steady, kBallBound * speed * speed / ell, inside));
    suite.add(make_report(tag + "divergence", div, div_c * h * h * speed / ell, outside));
    if (!localized) suite.add(make_report(tag + "grad_shafranov", gs_residual_field(f), kGsC * h * h * speed));
}

void export_euler(const Context& ctx, const CylField& f, const GridField* phi, const std::string& stem,
                  TaskResult& result) {
    if (!ctx.write_fields) return;
    std::vector<NamedField> scalars{{"psi", &f.psi},         {"p", &f.p},
                                    {"u_r", &f.u_r},         {"u_phi", &f.u_phi},
                                    {"u_z", &f.u_z},         {"omega_r", &f.omega_r},
                                    {"omega_phi", &f.omega_phi}, {"omega_z", &f.omega_z}};
    GridField phi_rz;
    if (phi) {
        // same nodes, relabelled with (r, z) coordinates
        phi_rz = *phi;
        phi_rz.grid = f.psi.grid;
        scalars.insert(scalars.begin(), NamedField{"phi", &phi_rz});
    }
    std::vector<NamedVector> vectors{{"velocity", {&f.u_r, &f.u_phi, &f.u_z}},
                                     {"vorticity", {&f.omega_r, &f.omega_phi, &f.omega_z}}};
    export_fields(ctx.out.string(), ctx.artifact(stem), ctx.format, scalars, vectors, PointMap::Meridional);
    result.artifacts.push_back(ctx.artifact(stem) + "." + extension(ctx.format));
}

double sup_vorticity(const CylField& f) {
    double m = 0.0;
    for (std::size_t k = 0; k < f.omega_r.values.size(); ++k) {
        m = std::max(m, std::sqrt(sq(f.omega_r.values[k]) + sq(f.omega_phi.values[k]) + sq(f.omega_z.values[k])));
    }
    return m;
}

void write_curves(const Context& ctx, const Hodograph& hodo, const RunConfig& c, TaskResult& result) {
    if (!ctx.write_fields) return;
    const double hw = std::min(c.half_width, hodo.epsilon());
    const BoundaryCurve curve = boundary_delta(hodo, hw, hw / 200.0);
    write_table_csv(ctx.path("boundary.csv"), {"x", "delta", "slope"},
                    {curve.x_nodes, curve.delta_values, curve.slopes});
    result.artifacts.push_back(ctx.artifact("boundary.csv"));
    const AxisTable axis = axis_profile(hodo, c.half_width, 241);
    write_table_csv(ctx.path("axis.csv"), {"y", "phi"}, {axis.y, axis.phi});
    result.artifacts.push_back(ctx.artifact("axis.csv"));
    result.metrics["delta_second_difference"] = curve.second_difference_at_zero();
    result.metrics["boundary_p6_residual"] = curve.max_p6_residual;
}

TaskResult task_euler(const Context& ctx, bool localize) {
    const RunConfig& c = ctx.config;
    TaskResult result;
    const Hodograph hodo(make_euler_profiles(c.order));
    const auto levels = grid_levels(c);
    json per_level = json::array();
    std::optional<CutoffSpec> cutoff;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        Timer t;
        EulerLevel lev = build_euler_level(hodo, c, levels[l]);
        const CylField& f = lev.field;
        const HodographVelocity uv = compute_UV(lev.phi, hodo);
        const GradientResidual gr = gradient_consistency(lev.phi, uv.U, uv.V);
        const BernoulliResidual bern = bernoulli_residual(f);
        const double h = std::max(f.grid.hx, f.grid.hy);
        euler_reports(f, "", false, result.suite);
        json lj;
        lj["nx"] = levels[l][0];
        lj["ny"] = levels[l][1];
        lj["gradient_x"] = gr.res_x;
        lj["gradient_y"] = gr.res_y;
        lj["bernoulli_scaled"] = bern.scaled();
        lj["sup_vorticity"] = sup_vorticity(f);
        const bool last = l + 1 == levels.size();
        if (last) {
            result.checks.push_back(check_le("bernoulli_scaled", bern.scaled(), kBernoulliTol));
            export_euler(ctx, f, &lev.phi, "euler", result);
        }
        if (localize) {
            if (!cutoff) {
                // thresholds are fixed on the coarsest level so every level
                // localizes the same exact field
                if (c.p_lo && c.p_hi) {
                    cutoff = CutoffSpec::bump(*c.p_lo, *c.p_hi);
                } else {
                    const ShellThresholds th = annulus_thresholds(f, c.shell_radius, c.margin);
                    cutoff = CutoffSpec::bump(c.p_lo.value_or(th.p_lo), c.p_hi.value_or(th.p_hi));
                }
            }
            const CylField loc = apply_cutoff(f, *cutoff);
            euler_reports(loc, "localized_", true, result.suite);
            const auto violations = support_violations(loc, c.shell_radius);
            lj["support_violations"] = violations;
            lj["localized_sup_vorticity"] = sup_vorticity(loc);
            if (last) {
                result.checks.push_back(check_le("support_violations", static_cast<double>(violations), 0.0));
                export_euler(ctx, loc, nullptr, "euler_localized", result);
            }
        }
        per_level.push_back(lj);
        ctx.note("level " + std::to_string(levels[l][0]) + "x" + std::to_string(levels[l][1]) + " h=" + sci(h) +
                 " bernoulli=" + sci(bern.scaled()) + " (" + fixed(t.seconds()) + " s)");
    }
    result.metrics["levels"] = per_level;
    if (cutoff) {
        result.metrics["p_lo"] = cutoff->p_lo();
        result.metrics["p_hi"] = cutoff->p_hi();
    }
    write_curves(ctx, hodo, c, result);
    result.suite.finish();
    return result;
}

// ---------------------------------------------------------------- Boussinesq

TaskResult task_boussinesq(const Context& ctx) {
    const RunConfig& c = ctx.config;
    TaskResult result;
    const BoussinesqParams params = BoussinesqParams::with_k(c.k, c.s);
    const BoussinesqProfiles prof(params);
    result.checks.push_back({"gamma_at_zero", prof.gamma(0.0), 1.0, "==", prof.gamma(0.0) == 1.0});
    result.checks.push_back(check_le("alpha_k_beta_identity", prof.identity_residual(), 1e-10));
    if (ctx.write_fields) {
        write_table_csv(ctx.path("profiles.csv"), {"tau", "gamma", "alpha", "beta"},
                        {prof.tau(), prof.gamma_table(), prof.alpha_table(), prof.beta_table()});
        result.artifacts.push_back(ctx.artifact("profiles.csv"));
    }
    const auto levels = grid_levels(c);
    json per_level = json::array();
    std::optional<CutoffSpec> cutoff;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const Grid2D g = boussinesq_grid(params, c.bous_half_x1, c.bous_half_x2, levels[l][0], levels[l][1]);
        const BoussinesqStream stream = build_psi(g, prof);
        const BoussinesqFields f = assemble_boussinesq(stream, prof);
        const BoussinesqFields half = right_half(f, stream.axis_column);
        const PlanarResiduals r = boussinesq_residual(half.state());
        const double h = std::max(g.hx, g.hy);
        result.suite.add(make_report("momentum", r.momentum, kBousMomentumC * h * h));
        result.suite.add(make_report("transport", r.transport, kBousTransportC * h * h));
        result.suite.add(make_report("divergence", r.divergence, kBousDivergenceC * h * h));

        const GridArgmin am = argmin(f.p);
        const bool at_x0 = am.i == stream.axis_column && am.j == (g.ny - 1) / 2;  // grid is centred on x0
        json lj;
        lj["nx"] = levels[l][0];
        lj["ny"] = levels[l][1];
        lj["argmin"] = {am.i, am.j};
        lj["argmin_strict"] = am.strict;
        // Localized fields: informational, the crease on the axis line and
        // the grazing of the characteristic set keep these off second order.
        if (!cutoff) cutoff = boussinesq_cutoff(f, c.margin);
        const BoussinesqFields loc = localize_boussinesq(half, *cutoff);
        const PlanarResiduals lr = boussinesq_residual(loc.state());
        lj["localized_momentum"] = make_report("m", lr.momentum, 1.0).max_res;
        lj["localized_transport"] = make_report("t", lr.transport, 1.0).max_res;
        lj["localized_divergence"] = make_report("d", lr.divergence, 1.0).max_res;
        per_level.push_back(lj);
        if (l + 1 == levels.size()) {
            result.checks.push_back({"pressure_argmin_at_x0", at_x0 && am.strict ? 1.0 : 0.0, 1.0, "==",
                                     at_x0 && am.strict});
            if (ctx.write_fields) {
                std::vector<NamedField> scalars{{"psi", &f.psi}, {"u1", &f.u1}, {"u2", &f.u2},
                                                {"theta", &f.theta}, {"p", &f.p}};
                GridField zero(f.u1.grid, "zero");
                std::vector<NamedVector> vectors{{"velocity", {&f.u1, &f.u2, &zero}}};
                export_fields(ctx.out.string(), ctx.artifact("boussinesq"), ctx.format, scalars, vectors,
                              PointMap::Planar);
                result.artifacts.push_back(ctx.artifact("boussinesq") + "." + extension(ctx.format));
            }
        }
        ctx.note("boussinesq level " + std::to_string(levels[l][0]) + "x" + std::to_string(levels[l][1]) +
                 " h=" + sci(h));
    }
    result.metrics["levels"] = per_level;
    result.metrics["p_lo"] = cutoff->p_lo();
    result.metrics["p_hi"] = cutoff->p_hi();
    result.suite.finish();
    return result;
}

// ---------------------------------------------------------------- IPM

// u and theta must vanish off the strip; p is 0 on the low-z side and one
// constant on the other.
std::size_t strip_violations(const PlanarFields& f, const IpmSolution& sol, const LocalizedIpm& loc) {
    std::size_t bad = 0;
    std::optional<double> high_p;
    const Grid2D& g = f.u1.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double z = sol.z(g.x(i), g.y(j));
            if (std::abs(z - loc.z_center()) < loc.half_width()) continue;
            const bool nonzero = f.u1.at(i, j) != 0.0 || f.u2.at(i, j) != 0.0 || f.theta.at(i, j) != 0.0;
            double expected = 0.0;
            if (z > loc.z_center()) {
                if (!high_p) high_p = f.p.at(i, j);
                expected = *high_p;
            }
            if (nonzero || f.p.at(i, j) != expected) ++bad;
        }
    }
    return bad;
}

TaskResult task_ipm(const Context& ctx) {
    const RunConfig& c = ctx.config;
    TaskResult result;
    const IpmSolution sol(IpmParams{c.k, c.s, c.ipm_x0, c.ipm_y0});
    const LocalizedIpm loc(sol, c.strip_center, c.strip_half_width);
    // z = x - x0 - k (y - y0) stays >= 0.1 e on the window, clear of the
    // kink of psi^s at z = 0
    const double e = c.ipm_extent;
    const double xa = c.ipm_x0 + std::abs(c.k) * e + 0.1 * e;
    const auto levels = grid_levels(c);
    for (std::size_t l = 0; l < levels.size(); ++l) {
        const Grid2D g(xa, xa + e, c.ipm_y0, c.ipm_y0 + e, levels[l][0], levels[l][1]);
        const PlanarFields f = sol.sample(g);
        const PlanarResiduals r = ipm_residual(f.state());
        result.suite.add(make_report("darcy", r.momentum, kIpmTol));
        result.suite.add(make_report("transport", r.transport, kIpmTol));
        result.suite.add(make_report("divergence", r.divergence, kIpmTol));

        const PlanarFields lf = loc.sample(g);
        const PlanarResiduals lr = ipm_residual(lf.state());
        const double h = std::max(g.hx, g.hy);
        result.suite.add(make_report("localized_darcy", lr.momentum, kIpmLocalizedC * h * h));
        result.suite.add(make_report("localized_transport", lr.transport, kIpmLocalizedC * h * h));
        result.suite.add(make_report("localized_divergence", lr.divergence, kIpmLocalizedC * h * h));
        if (l + 1 == levels.size()) {
            const auto bad = strip_violations(lf, sol, loc);
            result.checks.push_back(check_le("strip_violations", static_cast<double>(bad), 0.0));
            if (ctx.write_fields) {
                GridField zero(g, "zero");
                for (const auto& [stem, fields] : {std::pair{std::string("ipm"), &f}, std::pair{std::string("ipm_localized"), &lf}}) {
                    std::vector<NamedField> scalars{{"psi", &fields->psi}, {"u1", &fields->u1}, {"u2", &fields->u2},
                                                    {"theta", &fields->theta}, {"p", &fields->p}};
                    std::vector<NamedVector> vectors{{"velocity", {&fields->u1, &fields->u2, &zero}}};
                    export_fields(ctx.out.string(), ctx.artifact(stem), ctx.format, scalars, vectors, PointMap::Planar);
                    result.artifacts.push_back(ctx.artifact(stem) + "." + extension(ctx.format));
                }
            }
        }
        ctx.note("ipm level " + std::to_string(levels[l][0]) + "x" + std::to_string(levels[l][1]) + " h=" + sci(h));
    }
    // closed-form spot value: at k = 1, s = 1/2, psi = z^2 / 16 and p = psi
    result.metrics["psi_at_window_corner"] = sol.psi(xa, c.ipm_y0);
    result.suite.finish();
    return result;
}

// ---------------------------------------------------------------- multiscale

double spread(const std::vector<double>& v, std::size_t last) {
    const std::size_t n = std::min(last, v.size());
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t i = v.size() - n; i < v.size(); ++i) {
        lo = std::min(lo, v[i]);
        hi = std::max(hi, v[i]);
    }
    return hi / lo;
}

double growth(const std::vector<double>& v, std::size_t last) {
    const std::size_t n = std::min(last, v.size());
    return v.back() / v[v.size() - n];
}

TaskResult task_multiscale(const Context& ctx) {
    const RunConfig& c = ctx.config;
    TaskResult result;
    TemplateOptions topt;
    topt.series_order = c.order;
    topt.nodes = (c.grid ? *c.grid : default_grid("multiscale"))[0];
    topt.half_width = c.half_width;
    topt.shell_radius = c.shell_radius;
    topt.margin = c.margin;
    topt.tau = c.tau;
    Timer t;
    auto tmpl = make_template(topt);
    ctx.note("template " + std::to_string(topt.nodes) + " nodes (" + fixed(t.seconds()) + " s)");

    HelixSpec helix{c.helix_a, c.helix_b, c.scale0, c.rho};
    auto placements = helical_placements(c.shells, c.alpha_target, helix, tmpl->bounding_radius());
    const MultiscaleField field(tmpl, placements);

    const NormEstimate l2 = norm_estimate(placements, c.alpha_target, 2.0);
    const NormEstimate holder = norm_estimate(placements, c.alpha_target, std::numeric_limits<double>::infinity());
    const NormEstimate above = norm_estimate(placements, c.alpha_probe, std::numeric_limits<double>::infinity());
    result.checks.push_back({"l2_norm_finite", l2.total, 0.0, "finite", l2.finite});
    result.checks.push_back({"holder_target_finite", holder.total, 0.0, "finite", holder.finite});
    result.checks.push_back({"holder_probe_divergent", above.total, 0.0, "infinite", !above.finite});

    HolderOptions hopt;
    hopt.pairs_per_shell = c.pairs;
    hopt.seed = c.seed;
    const HolderEstimate at_target = empirical_holder(field, c.alpha_target, hopt);
    const HolderEstimate at_probe = empirical_holder(field, c.alpha_probe, hopt);
    result.checks.push_back(check_le("holder_target_spread_last10", spread(at_target.per_shell, 10), 2.0));
    result.checks.push_back(check_ge("holder_probe_growth_last10", growth(at_probe.per_shell, 10), 4.0));
    ctx.note("holder quotients done (" + fixed(t.seconds()) + " s)");

    const std::array<double, 3> steps{4e-4, 2e-4, 1e-4};
    json diss = json::array();
    double worst = 0.0;
    for (std::size_t n = 0; n < placements.size(); ++n) {
        const DissipationStudy d = local_dissipation(field, n, steps);
        diss.push_back({{"shell", n + 1}, {"max_res", d.max_res}, {"order", d.order}});
        worst = std::max(worst, std::abs(d.order - 2.0));
    }
    result.checks.push_back(check_le("dissipation_order_deviation", worst, 0.3));

    auto norm_json = [](const NormEstimate& e) {
        json j;
        j["partial"] = e.partial;
        j["tail_bound"] = std::isfinite(e.tail_bound) ? json(e.tail_bound) : json(nullptr);
        j["total"] = std::isfinite(e.total) ? json(e.total) : json(nullptr);
        j["last_ratio"] = e.last_ratio;
        j["finite"] = e.finite;
        return j;
    };
    result.metrics["l2"] = norm_json(l2);
    result.metrics["holder_target"] = norm_json(holder);
    result.metrics["holder_probe"] = norm_json(above);
    result.metrics["holder_quotients_target"] = at_target.per_shell;
    result.metrics["holder_quotients_probe"] = at_probe.per_shell;
    result.metrics["dissipation_steps"] = steps;
    result.metrics["dissipation"] = diss;
    result.metrics["hole_pressure"] = tmpl->hole_pressure();
    result.metrics["p_lo"] = tmpl->cutoff().p_lo();
    result.metrics["p_hi"] = tmpl->cutoff().p_hi();

    if (ctx.write_fields) {
        {
            std::ofstream os(ctx.path("placements.json"));
            os << placements_to_json(placements) << '\n';
            if (!os) throw Error("cannot write " + ctx.path("placements.json"));
        }
        result.artifacts.push_back(ctx.artifact("placements.json"));
        std::vector<double> shell, q_target, q_probe, scale, amp;
        for (std::size_t n = 0; n < placements.size(); ++n) {
            shell.push_back(static_cast<double>(n + 1));
            scale.push_back(placements[n].scale);
            amp.push_back(placements[n].amplitude);
            q_target.push_back(at_target.per_shell[n]);
            q_probe.push_back(at_probe.per_shell[n]);
        }
        write_table_csv(ctx.path("holder.csv"), {"shell", "scale", "amplitude", "quotient_target", "quotient_probe"},
                        {shell, scale, amp, q_target, q_probe});
        result.artifacts.push_back(ctx.artifact("holder.csv"));

        // template on the meridional half plane x2 = 0
        const Grid2D& tg = tmpl->grid();
        const Grid2D g(1.0 + tg.x_min, 1.0 + tg.x_max, tg.y_min, tg.y_max, tg.nx, tg.ny);
        GridField ur(g, "u_r"), uphi(g, "u_phi"), uz(g, "u_z"), p(g, "p");
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const auto v = (*tmpl)({g.x(i), 0.0, g.y(j)});
                ur.at(i, j) = v[0];
                uphi.at(i, j) = v[1];
                uz.at(i, j) = v[2];
                p.at(i, j) = v[3];
            }
        }
        std::vector<NamedField> scalars{{"u_r", &ur}, {"u_phi", &uphi}, {"u_z", &uz}, {"p", &p}};
        std::vector<NamedVector> vectors{{"velocity", {&ur, &uphi, &uz}}};
        export_fields(ctx.out.string(), ctx.artifact("template"), ctx.format, scalars, vectors, PointMap::Meridional);
        result.artifacts.push_back(ctx.artifact("template") + "." + extension(ctx.format));
    }
    result.suite.finish();
    return result;
}

// ---------------------------------------------------------------- verify

json task_json(const TaskResult& r) {
    json j;
    j["pass"] = r.pass();
    j["reports"] = r.suite.to_json();
    j["checks"] = checks_json(r.checks);
    j["metrics"] = r.metrics;
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    os << text;
    if (!os) throw Error("cannot write " + path.string());
}

std::string read_text(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw InvalidArgument("cannot read " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void compare_json(const json& a, const json& b, double rtol, const std::string& path, std::vector<std::string>& bad) {
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>(), y = b.get<double>();
        if (std::abs(x - y) > rtol * std::max(std::abs(x), std::abs(y)) + 1e-14) bad.push_back(path);
        return;
    }
    if (a.type() != b.type()) {
        bad.push_back(path);
        return;
    }
    if (a.is_object()) {
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!b.contains(it.key())) {
                bad.push_back(path + "/" + it.key());
                continue;
            }
            compare_json(it.value(), b.at(it.key()), rtol, path + "/" + it.key(), bad);
        }
        for (auto it = b.begin(); it != b.end(); ++it) {
            if (!a.contains(it.key())) bad.push_back(path + "/" + it.key());
        }
    } else if (a.is_array()) {
        if (a.size() != b.size()) {
            bad.push_back(path);
            return;
        }
        for (std::size_t i = 0; i < a.size(); ++i) compare_json(a[i], b[i], rtol, path + "/" + std::to_string(i), bad);
    } else if (a != b) {
        bad.push_back(path);
    }
}

}  // namespace

// ---------------------------------------------------------------- public

RunConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what(), {});
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object", {});
    RunConfig c;
    std::vector<std::string> bad;
    std::string detail;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const auto& table = setters();
        auto s = std::find_if(table.begin(), table.end(), [&](const auto& p) { return p.first == it.key(); });
        if (s == table.end()) {
            bad.push_back(it.key());
            detail += " " + it.key() + ": unknown key;";
            continue;
        }
        try {
            s->second(c, it.value());
        } catch (const std::exception& e) {
            bad.push_back(it.key());
            detail += " " + it.key() + ": " + e.what() + ";";
        }
    }
    if (!bad.empty()) throw ConfigError("invalid config:" + detail, bad);
    return c;
}

std::string config_to_json(const RunConfig& c) {
    json j;
    const auto g = c.grid ? *c.grid : default_grid(c.task);
    j["task"] = c.task;
    j["out"] = c.out;
    j["format"] = c.format;
    j["grid"] = {g[0], g[1]};
    j["levels"] = c.levels;
    j["order"] = c.order;
    j["ell"] = c.ell;
    j["tau"] = c.tau;
    j["half_width"] = c.half_width;
    j["shell_radius"] = c.shell_radius;
    j["margin"] = c.margin;
    j["p_lo"] = optional_json(c.p_lo);
    j["p_hi"] = optional_json(c.p_hi);
    j["alpha_target"] = c.alpha_target;
    j["shells"] = c.shells;
    j["rho"] = c.rho;
    j["scale0"] = c.scale0;
    j["helix_a"] = c.helix_a;
    j["helix_b"] = c.helix_b;
    j["alpha_probe"] = c.alpha_probe;
    j["seed"] = c.seed;
    j["pairs"] = c.pairs;
    j["k"] = c.k;
    j["s"] = c.s;
    j["bous_half_x1"] = c.bous_half_x1;
    j["bous_half_x2"] = c.bous_half_x2;
    j["ipm_x0"] = c.ipm_x0;
    j["ipm_y0"] = c.ipm_y0;
    j["ipm_extent"] = c.ipm_extent;
    j["strip_center"] = c.strip_center;
    j["strip_half_width"] = c.strip_half_width;
    j["golden"] = c.golden ? json(*c.golden) : json(nullptr);
    j["golden_rtol"] = c.golden_rtol;
    return j.dump(2) + "\n";
}

std::array<int, 2> default_grid(const std::string& task) {
    if (task == "euler-localize") return {401, 401};
    if (task == "boussinesq") return {51, 201};
    if (task == "verify") return {101, 101};
    return {201, 201};
}

void validate(const RunConfig& c) {
    std::vector<std::string> bad;
    std::string detail;
    auto need = [&](bool ok, const std::string& key, const std::string& why) {
        if (!ok) {
            bad.push_back(key);
            detail += " " + key + ": " + why + ";";
        }
    };
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    const auto& names = task_names();
    need(std::find(names.begin(), names.end(), c.task) != names.end(), "task", "unknown task");
    need(c.format == "csv" || c.format == "vtk" || c.format == "vtk-ascii" || c.format == "json", "format",
         "one of csv, vtk, json");
    need(!c.out.empty(), "out", "must not be empty");
    if (c.grid) {
        const auto g = *c.grid;
        need(g[0] >= 11 && g[1] >= 11 && g[0] % 2 == 1 && g[1] % 2 == 1, "grid", "odd node counts >= 11");
        need(g[0] <= 8001 && g[1] <= 8001, "grid", "at most 8001 nodes per direction");
    }
    need(c.levels >= 1 && c.levels <= 5, "levels", "between 1 and 5");
    need(c.order >= 2 && c.order <= 40, "order", "between 2 and 40");
    need(positive(c.ell), "ell", "positive");
    need(positive(c.tau), "tau", "positive");
    need(positive(c.shell_radius), "shell_radius", "positive");
    need(positive(c.half_width) && c.half_width > c.shell_radius, "half_width", "larger than shell_radius");
    need(std::isfinite(c.margin) && c.margin >= 0.0 && c.margin < 0.5, "margin", "in [0, 0.5)");
    if (c.p_lo && c.p_hi) need(*c.p_lo < *c.p_hi, "p_lo", "below p_hi");
    need(c.alpha_target > 0.0 && c.alpha_target < 1.0, "alpha_target", "in (0, 1)");
    need(c.alpha_probe > c.alpha_target && c.alpha_probe < 1.0, "alpha_probe", "in (alpha_target, 1)");
    need(c.shells >= 1 && c.shells <= 40, "shells", "between 1 and 40");
    need(c.rho > 0.0 && c.rho < 1.0, "rho", "in (0, 1)");
    need(positive(c.scale0), "scale0", "positive");
    need(positive(c.helix_a), "helix_a", "positive");
    need(positive(c.helix_b), "helix_b", "positive");
    need(c.pairs >= 1, "pairs", "at least 1");
    need(std::isfinite(c.k) && c.k != 0.0, "k", "finite and nonzero");
    need(c.s > 0.0 && c.s < 1.0, "s", "in (0, 1)");
    need(positive(c.bous_half_x1), "bous_half_x1", "positive");
    need(positive(c.bous_half_x2), "bous_half_x2", "positive");
    need(std::isfinite(c.ipm_x0), "ipm_x0", "finite");
    need(std::isfinite(c.ipm_y0), "ipm_y0", "finite");
    need(positive(c.ipm_extent), "ipm_extent", "positive");
    need(positive(c.strip_half_width), "strip_half_width", "positive");
    need(std::isfinite(c.strip_center) && c.strip_center - c.strip_half_width > 0.0, "strip_center",
         "strip must lie in z > 0");
    need(positive(c.golden_rtol), "golden_rtol", "positive");
    if (!bad.empty()) throw ConfigError("invalid config:" + detail, bad);
}

std::string error_json(const Error& e) {
    json j;
    j["error"]["kind"] = e.kind();
    j["error"]["message"] = e.what();
    if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) j["error"]["offending_keys"] = ce->offending_keys();
    return j.dump();
}

std::vector<std::string> compare_reports(const std::string& expected, const std::string& actual, double rtol) {
    std::vector<std::string> bad;
    compare_json(json::parse(expected), json::parse(actual), rtol, "", bad);
    return bad;
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
    try {
        validate(config);
        Context ctx{config, log, parse_format(config.format), std::filesystem::path(config.out), true, ""};
        std::filesystem::create_directories(ctx.out);
        write_text(ctx.out / "config.json", config_to_json(config));
        ctx.note("task " + config.task + ", output in " + ctx.out.string());
        Timer t;

        json report;
        report["task"] = config.task;
        bool pass = true;
        std::vector<std::string> artifacts{"config.json", "report.json"};
        auto record = [&](const TaskResult& r, json& into) {
            into = task_json(r);
            pass = pass && r.pass();
            artifacts.insert(artifacts.end(), r.artifacts.begin(), r.artifacts.end());
        };

        if (config.task == "verify") {
            // condensed run of every residual suite on small grids
            json tasks = json::object();
            auto sub = [&](const std::string& name, std::array<int, 2> grid, int levels,
                           const std::function<TaskResult(const Context&)>& fn) {
                RunConfig c = config;
                c.task = name;
                c.grid = grid;
                c.levels = levels;
                Context sctx{c, log, ctx.format, ctx.out, false, name + "_"};
                record(fn(sctx), tasks[name]);
                ctx.note(name + " done (" + fixed(t.seconds()) + " s)");
            };
            const auto g = config.grid ? *config.grid : default_grid("verify");
            sub("euler-localize", g, config.levels, [](const Context& x) { return task_euler(x, true); });
            sub("boussinesq", {51, 201}, 3, task_boussinesq);
            sub("ipm", {101, 101}, 1, task_ipm);
            RunConfig mc = config;
            mc.task = "multiscale";
            mc.grid = std::array<int, 2>{101, 101};
            mc.pairs = std::min(config.pairs, 200);
            Context mctx{mc, log, ctx.format, ctx.out, false, "multiscale_"};
            record(task_multiscale(mctx), tasks["multiscale"]);
            report["tasks"] = tasks;
        } else {
            TaskResult r;
            if (config.task == "euler-build") r = task_euler(ctx, false);
            else if (config.task == "euler-localize") r = task_euler(ctx, true);
            else if (config.task == "boussinesq") r = task_boussinesq(ctx);
            else if (config.task == "ipm") r = task_ipm(ctx);
            else r = task_multiscale(ctx);
            json body;
            record(r, body);
            for (auto it = body.begin(); it != body.end(); ++it) report[it.key()] = it.value();
        }
        report["pass"] = pass;
        report["artifacts"] = artifacts;
        const std::string text = report.dump(2) + "\n";
        write_text(ctx.out / "report.json", text);
        ctx.note(std::string(pass ? "all checks passed" : "some checks FAILED") + " (" + fixed(t.seconds()) + " s)");

        if (config.golden) {
            const auto bad = compare_reports(read_text(*config.golden), text, config.golden_rtol);
            for (const auto& b : bad) ctx.note("golden mismatch at " + b);
            if (!bad.empty()) return kExitVerifyFailed;
            ctx.note("matches golden report " + *config.golden);
        }
        return pass ? kExitOk : kExitVerifyFailed;
    } catch (const ConfigError& e) {
        err << error_json(e) << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << error_json(e) << '\n';
        return kExitModule;
    } catch (const std::exception& e) {
        err << error_json(Error(e.what())) << '\n';
        return kExitModule;
    }
}

}  // namespace gsforge
