#include "gsforge/localization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "json.hpp"

#include "gsforge/error.hpp"
#include "gsforge/stream.hpp"
#include "gsforge/verify.hpp"

namespace gsforge {

namespace {

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 apply(const Mat3& m, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out;
}

Vec3 apply_transpose(const Mat3& m, const Vec3& v) {
    Vec3 out{};
    for (int i = 0; i < 3; ++i) out[i] = m[0][i] * v[0] + m[1][i] * v[1] + m[2][i] * v[2];
    return out;
}

double shell_rho2(const Grid2D& g, const DimensionalParams& params, int i, int j) {
    const double ell = params.ell;
    const double dr = (g.x(i) - ell) / ell, dz = g.y(j) / ell;
    return dr * dr + dz * dz;
}

}  // namespace

ShellThresholds annulus_thresholds(const CylField& field, double shell_radius, double margin) {
    if (!(shell_radius > 0.0)) throw InvalidArgument("shell radius must be positive");
    const Grid2D& g = field.grid;
    const double ell = field.params.ell;
    if (g.x_min > ell * (1.0 - shell_radius) || g.x_max < ell * (1.0 + shell_radius) ||
        g.y_min > -ell * shell_radius || g.y_max < ell * shell_radius) {
        throw DomainError("grid does not contain the outer circle of the shell");
    }
    const double e2 = shell_radius * shell_radius;
    double inner_max = -std::numeric_limits<double>::infinity();
    double outer_min = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double rho2 = shell_rho2(g, field.params, i, j);
            const double p = field.p.at(i, j);
            if (rho2 <= 0.5 * e2) inner_max = std::max(inner_max, p);
            if (rho2 >= e2) outer_min = std::min(outer_min, p);
        }
    }
    ShellThresholds t{inner_max * (1.0 + margin), outer_min * (1.0 - margin)};
    if (!(t.p_lo < t.p_hi)) {
        throw NumericalError("pressure levels do not separate the shell: p_lo=" + std::to_string(t.p_lo) +
                             " >= p_hi=" + std::to_string(t.p_hi));
    }
    return t;
}

CylField apply_cutoff(const CylField& field, const CutoffSpec& cutoff) {
    if (cutoff.kind() == CutoffKind::Bump) {
        const auto [lo, hi] = std::minmax_element(field.p.values.begin(), field.p.values.end());
        if (cutoff.p_lo() < *lo || cutoff.p_hi() > *hi) {
            throw InvalidArgument("cutoff window [" + std::to_string(cutoff.p_lo()) + ", " +
                                  std::to_string(cutoff.p_hi()) + "] outside the attained pressure range [" +
                                  std::to_string(*lo) + ", " + std::to_string(*hi) + "]");
        }
    }
    CylField out = field;
    for (std::size_t k = 0; k < out.p.values.size(); ++k) {
        const double p = field.p.values[k];
        const double c = cutoff(p);
        out.u_r.values[k] *= c;
        out.u_phi.values[k] *= c;
        out.u_z.values[k] *= c;
        out.p.values[k] = cutoff.primitive(p, 2);
    }
    vorticity_from_velocity(out);
    out.localized = cutoff.kind() == CutoffKind::Bump;
    return out;
}

std::size_t support_violations(const CylField& field, double shell_radius) {
    const Grid2D& g = field.grid;
    const double e2 = shell_radius * shell_radius;
    std::size_t bad = 0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double rho2 = shell_rho2(g, field.params, i, j);
            if (rho2 > 0.5 * e2 && rho2 < e2) continue;
            if (field.u_r.at(i, j) != 0.0 || field.u_phi.at(i, j) != 0.0 || field.u_z.at(i, j) != 0.0) ++bad;
        }
    }
    return bad;
}

TemplateSampler::TemplateSampler(const Hodograph& hodo, const GridField& phi, const DimensionalParams& params,
                                 const CutoffSpec& cutoff, double shell_radius)
    : hodo_(hodo), params_(params), cutoff_(cutoff), shell_radius_(shell_radius), grid_(phi.grid) {
    params.validate();
    if (params.ell != 1.0) throw InvalidArgument("the template is built with ell = 1");
    if (!(shell_radius > 0.0)) throw InvalidArgument("shell radius must be positive");
    if (grid_.x_min > -shell_radius || grid_.x_max < shell_radius || grid_.y_min > -shell_radius ||
        grid_.y_max < shell_radius) {
        throw DomainError("template grid does not contain the shell");
    }
    const HodographVelocity uv = compute_UV(phi, hodo);
    const std::size_t n = grid_.size();
    for (Hermite* h : {&phi_, &v_}) {
        h->f.resize(n);
        h->fx.resize(n);
        h->fy.resize(n);
        h->fxy.resize(n);
    }
    for (int j = 0; j < grid_.ny; ++j) {
        for (int i = 0; i < grid_.nx; ++i) {
            const std::size_t k = grid_.index(i, j);
            const double x = grid_.x(i), f = phi.at(i, j), v = uv.V.at(i, j);
            const double p3 = hodo.P3(x, f);
            const double p3_phi = hodo.derivative(PolyLabel::P3, x, f, 0, 1);
            phi_.f[k] = f;
            phi_.fx[k] = p3;
            phi_.fy[k] = v;
            phi_.fxy[k] = p3_phi * v;
            v_.f[k] = v;
            v_.fx[k] = p3_phi * v;
            v_.fy[k] = 0.5 * hodo.derivative(PolyLabel::P6, x, f, 0, 1);
            v_.fxy[k] = 0.5 * (hodo.derivative(PolyLabel::P6, x, f, 1, 1) +
                               hodo.derivative(PolyLabel::P6, x, f, 0, 2) * p3);
        }
    }
}

TemplateSampler TemplateSampler::with_cutoff(const CutoffSpec& cutoff) const {
    TemplateSampler copy = *this;
    copy.cutoff_ = cutoff;
    return copy;
}

double TemplateSampler::interpolate(const Hermite& h, double x, double y) const {
    const Grid2D& g = grid_;
    const double sx = (x - g.x_min) / g.hx, sy = (y - g.y_min) / g.hy;
    if (sx < 0.0 || sy < 0.0 || sx > g.nx - 1 || sy > g.ny - 1) {
        throw DomainError("template interpolation outside its grid");
    }
    const int i = std::min(static_cast<int>(sx), g.nx - 2);
    const int j = std::min(static_cast<int>(sy), g.ny - 2);
    const double t = sx - i, u = sy - j;
    const auto basis = [](double s, double out[4]) {
        const double s2 = s * s, s3 = s2 * s;
        out[0] = 2 * s3 - 3 * s2 + 1;  // value at 0
        out[1] = s3 - 2 * s2 + s;      // slope at 0
        out[2] = -2 * s3 + 3 * s2;     // value at 1
        out[3] = s3 - s2;              // slope at 1
    };
    double bx[4], by[4];
    basis(t, bx);
    basis(u, by);
    double acc = 0.0;
    for (int cj = 0; cj < 2; ++cj) {
        for (int ci = 0; ci < 2; ++ci) {
            const std::size_t k = g.index(i + ci, j + cj);
            const double hx = bx[2 * ci], kx = bx[2 * ci + 1] * g.hx;
            const double hy = by[2 * cj], ky = by[2 * cj + 1] * g.hy;
            acc += h.f[k] * hx * hy + h.fx[k] * kx * hy + h.fy[k] * hx * ky + h.fxy[k] * kx * ky;
        }
    }
    return acc;
}

std::array<double, 4> TemplateSampler::uncut(double x, double y) const {
    const double m = params_.m();
    const double f = interpolate(phi_, x, y);
    const double v = interpolate(v_, x, y);
    const double r = 1.0 + x;
    const double fa = std::max(f * hodo_.a().eval(f), 0.0);
    return {m * v / r, m * std::sqrt(6.0 * fa) / r, -m * hodo_.P3(x, f) / r, 2.0 * m * m * f};
}

std::array<double, 4> TemplateSampler::meridional(double x, double y) const {
    auto s = uncut(x, y);
    const double c = cutoff_(s[3]);
    return {c * s[0], c * s[1], c * s[2], cutoff_.primitive(s[3], 2)};
}

std::array<double, 4> TemplateSampler::operator()(const Vec3& X) const {
    const double r = std::hypot(X[0], X[1]);
    const double x = r - 1.0, y = X[2];
    const double rho2 = x * x + y * y, e2 = shell_radius_ * shell_radius_;
    if (rho2 >= e2) return {0.0, 0.0, 0.0, 0.0};
    if (rho2 <= 0.5 * e2) return {0.0, 0.0, 0.0, hole_pressure()};
    const auto s = meridional(x, y);
    const double c = X[0] / r, sn = X[1] / r;
    return {s[0] * c - s[1] * sn, s[0] * sn + s[1] * c, s[2], s[3]};
}

std::vector<std::array<double, 2>> TemplateSampler::active_cell_centres(double fraction) const {
    const double e2 = shell_radius_ * shell_radius_;
    std::vector<std::array<double, 2>> pts;
    std::vector<double> speed;
    for (int j = 0; j + 1 < grid_.ny; ++j) {
        for (int i = 0; i + 1 < grid_.nx; ++i) {
            const double x = grid_.x_min + (i + 0.5) * grid_.hx, y = grid_.y_min + (j + 0.5) * grid_.hy;
            const double rho2 = x * x + y * y;
            if (rho2 <= 0.5 * e2 || rho2 >= e2) continue;
            const auto s = meridional(x, y);
            pts.push_back({x, y});
            speed.push_back(std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]));
        }
    }
    const double top = speed.empty() ? 0.0 : *std::max_element(speed.begin(), speed.end());
    std::vector<std::array<double, 2>> out;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (speed[k] > fraction * top) out.push_back(pts[k]);
    }
    return out;
}

ShellThresholds TemplateSampler::circle_thresholds(double margin) const {
    const double e2 = shell_radius_ * shell_radius_;
    double inner_max = -std::numeric_limits<double>::infinity();
    double outer_min = std::numeric_limits<double>::infinity();
    constexpr int kAngles = 4096;
    for (int k = 0; k < kAngles; ++k) {
        const double t = 2.0 * std::numbers::pi * k / kAngles;
        const double ri = shell_radius_ / std::sqrt(2.0), ro = shell_radius_;
        inner_max = std::max(inner_max, uncut(ri * std::cos(t), ri * std::sin(t))[3]);
        outer_min = std::min(outer_min, uncut(ro * std::cos(t), ro * std::sin(t))[3]);
    }
    for (int j = 0; j < grid_.ny; ++j) {
        for (int i = 0; i < grid_.nx; ++i) {
            const double x = grid_.x(i), y = grid_.y(j);
            const double rho2 = x * x + y * y;
            const double p = 2.0 * params_.m() * params_.m() * phi_.f[grid_.index(i, j)];
            if (rho2 <= 0.5 * e2) inner_max = std::max(inner_max, p);
            if (rho2 >= e2) outer_min = std::min(outer_min, p);
        }
    }
    ShellThresholds t{inner_max * (1.0 + margin), outer_min * (1.0 - margin)};
    if (!(t.p_lo < t.p_hi)) {
        throw NumericalError("pressure levels do not separate the template shell");
    }
    return t;
}

std::shared_ptr<const TemplateSampler> make_template(const TemplateOptions& o) {
    const EulerProfiles prof = make_euler_profiles(o.series_order);
    const Hodograph hodo(prof);
    const Grid2D grid = Grid2D::symmetric(o.half_width, o.half_width, o.nodes, o.nodes);
    const GridField phi = build_phi(grid, hodo);
    const DimensionalParams params{1.0, o.tau};
    const TemplateSampler raw(hodo, phi, params, CutoffSpec::identity(), o.shell_radius);
    const ShellThresholds t = raw.circle_thresholds(o.margin);
    return std::make_shared<const TemplateSampler>(raw.with_cutoff(CutoffSpec::bump(t.p_lo, t.p_hi)));
}

std::vector<ShellPlacement> helical_placements(int n_shells, double alpha_target, const HelixSpec& helix,
                                               double bounding_radius) {
    if (n_shells < 1) throw InvalidArgument("need at least one shell");
    if (!(helix.rho > 0.0 && helix.rho < 1.0)) throw InvalidArgument("scale ratio rho must lie in (0, 1)");
    if (!(helix.scale0 > 0.0) || !(helix.a > 0.0) || !(helix.b >= 0.0)) {
        throw InvalidArgument("helix needs a > 0, b >= 0 and a positive base scale");
    }
    if (!(bounding_radius > 0.0)) throw InvalidArgument("bounding radius must be positive");
    const double w = 1.0 / std::hypot(helix.a, helix.b);
    std::vector<ShellPlacement> out;
    out.reserve(static_cast<std::size_t>(n_shells));
    for (int n = 1; n <= n_shells; ++n) {
        const double ell = helix.scale0 * std::pow(helix.rho, n);
        const double s = 3.0 * bounding_radius * ell / (1.0 - helix.rho);
        const double ws = w * s;
        const double half = std::sin(0.5 * ws);
        ShellPlacement pl;
        pl.center = {-2.0 * helix.a * half * half, helix.a * std::sin(ws), helix.b * ws};
        const Vec3 tangent{-helix.a * w * std::sin(ws), helix.a * w * std::cos(ws), helix.b * w};
        const Vec3 normal{-std::cos(ws), -std::sin(ws), 0.0};
        const Vec3 binormal{tangent[1] * normal[2] - tangent[2] * normal[1],
                            tangent[2] * normal[0] - tangent[0] * normal[2],
                            tangent[0] * normal[1] - tangent[1] * normal[0]};
        for (int i = 0; i < 3; ++i) pl.rotation[i] = {normal[i], binormal[i], tangent[i]};
        pl.scale = ell;
        pl.amplitude = std::pow(ell, alpha_target);
        out.push_back(pl);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            const double d = norm(sub(out[i].center, out[j].center));
            if (d < bounding_radius * (out[i].scale + out[j].scale)) {
                throw InvalidArgument("infeasible packing: shells " + std::to_string(i + 1) + " and " +
                                      std::to_string(j + 1) + " overlap");
            }
        }
    }
    return out;
}

MultiscaleField::MultiscaleField(std::shared_ptr<const TemplateSampler> tmpl, std::vector<ShellPlacement> placements)
    : tmpl_(std::move(tmpl)), placements_(std::move(placements)) {
    if (!tmpl_) throw InvalidArgument("multiscale field needs a template");
    const double R = tmpl_->bounding_radius();
    for (std::size_t n = 0; n < placements_.size(); ++n) {
        const auto& pl = placements_[n];
        if (!(pl.scale > 0.0) || !(pl.amplitude > 0.0)) throw InvalidArgument("shell scale and amplitude must be positive");
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                double dot = 0.0;
                for (int k = 0; k < 3; ++k) dot += pl.rotation[k][i] * pl.rotation[k][j];
                if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-12) {
                    throw InvalidArgument("shell " + std::to_string(n + 1) + " rotation is not orthogonal");
                }
            }
        }
        for (std::size_t m = 0; m < n; ++m) {
            const double d = norm(sub(pl.center, placements_[m].center));
            if (d < R * (pl.scale + placements_[m].scale)) {
                throw InvalidArgument("shells " + std::to_string(m + 1) + " and " + std::to_string(n + 1) +
                                      " overlap");
            }
        }
    }
    order_.resize(placements_.size());
    for (std::size_t n = 0; n < order_.size(); ++n) order_[n] = n;
    const auto lower = [&](std::size_t n) { return norm(placements_[n].center) - R * placements_[n].scale; };
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return lower(a) < lower(b); });
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t n : order_) {
        lower_.push_back(lower(n));
        running = std::max(running, norm(placements_[n].center) + R * placements_[n].scale);
        upper_max_.push_back(running);
    }
}

int MultiscaleField::shell_at(const Vec3& x) const {
    const double R = tmpl_->bounding_radius();
    const double r = norm(x);
    auto k = static_cast<std::ptrdiff_t>(std::upper_bound(lower_.begin(), lower_.end(), r) - lower_.begin());
    for (--k; k >= 0; --k) {
        const auto uk = static_cast<std::size_t>(k);
        if (upper_max_[uk] < r) break;
        const std::size_t n = order_[uk];
        if (norm(sub(x, placements_[n].center)) <= R * placements_[n].scale) return static_cast<int>(n);
    }
    return -1;
}

Vec3 MultiscaleField::to_world(std::size_t shell, const Vec3& xi) const {
    const auto& pl = placements_.at(shell);
    const Vec3 d = apply(pl.rotation, xi);
    return {pl.center[0] + pl.scale * d[0], pl.center[1] + pl.scale * d[1], pl.center[2] + pl.scale * d[2]};
}

std::array<double, 4> MultiscaleField::operator()(const Vec3& x) const {
    const int n = shell_at(x);
    if (n < 0) return {0.0, 0.0, 0.0, 0.0};
    const auto& pl = placements_[static_cast<std::size_t>(n)];
    const Vec3 d = sub(x, pl.center);
    Vec3 xi = apply_transpose(pl.rotation, d);
    for (double& c : xi) c /= pl.scale;
    const auto t = (*tmpl_)(xi);
    const Vec3 u = apply(pl.rotation, {t[0], t[1], t[2]});
    return {pl.amplitude * u[0], pl.amplitude * u[1], pl.amplitude * u[2], pl.amplitude * pl.amplitude * t[3]};
}

NormEstimate norm_estimate(std::span<const ShellPlacement> placements, double alpha, double p_exponent) {
    if (placements.empty()) throw InvalidArgument("norm_estimate needs at least one shell");
    if (!(p_exponent >= 1.0)) throw InvalidArgument("norm exponent p must be >= 1");
    NormEstimate out;
    std::vector<double> terms;
    const bool sup = std::isinf(p_exponent);
    for (const auto& pl : placements) {
        terms.push_back(sup ? pl.amplitude * std::pow(pl.scale, -alpha)
                            : std::pow(pl.amplitude, p_exponent) * std::pow(pl.scale, 3.0 - p_exponent * alpha));
    }
    const double last = terms.back();
    out.last_ratio = terms.size() >= 2 ? last / terms[terms.size() - 2] : 0.0;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (sup) {
        out.partial = *std::max_element(terms.begin(), terms.end());
        out.finite = out.last_ratio <= 1.0 + 1e-9;
        out.tail_bound = out.finite ? last : kInf;
        out.total = out.finite ? std::max(out.partial, out.tail_bound) : kInf;
        return out;
    }
    double sum = 0.0;
    for (double t : terms) sum += t;
    out.partial = std::pow(sum, 1.0 / p_exponent);
    out.finite = out.last_ratio < 1.0;
    out.tail_bound = out.finite ? last * out.last_ratio / (1.0 - out.last_ratio) : kInf;
    out.total = out.finite ? std::pow(sum + out.tail_bound, 1.0 / p_exponent) : kInf;
    return out;
}

namespace {

Vec3 template_point(const std::array<double, 2>& xy, double angle) {
    const double r = 1.0 + xy[0];
    return {r * std::cos(angle), r * std::sin(angle), xy[1]};
}

double velocity_gap(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

}  // namespace

HolderEstimate empirical_holder(const MultiscaleField& field, double alpha, const HolderOptions& o) {
    if (o.pairs_per_shell < 1) throw InvalidArgument("need at least one pair per shell");
    if (!(o.min_separation > 0.0 && o.max_separation >= o.min_separation)) {
        throw InvalidArgument("pair separations must satisfy 0 < min <= max");
    }
    const auto active = field.shell_template().active_cell_centres(0.05);
    if (active.empty()) throw NumericalError("template has no active cells");
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> log_sep(std::log(o.min_separation), std::log(o.max_separation));
    std::normal_distribution<double> gauss(0.0, 1.0);

    struct Pair {
        Vec3 a, b;
    };
    std::vector<Pair> pairs;
    for (int k = 0; k < o.pairs_per_shell; ++k) {
        const Vec3 a = template_point(active[pick(rng)], angle(rng));
        Vec3 dir{gauss(rng), gauss(rng), gauss(rng)};
        const double len = norm(dir);
        const double sep = std::exp(log_sep(rng));
        pairs.push_back({a, {a[0] + sep * dir[0] / len, a[1] + sep * dir[1] / len, a[2] + sep * dir[2] / len}});
    }
    std::vector<Pair> cross;
    if (o.cross_shell) {
        for (int k = 0; k < std::max(1, o.pairs_per_shell / 4); ++k) {
            cross.push_back({template_point(active[pick(rng)], angle(rng)), template_point(active[pick(rng)], angle(rng))});
        }
    }

    HolderEstimate out;
    out.alpha = alpha;
    const std::size_t n_shells = field.placements().size();
    out.per_shell.assign(n_shells, 0.0);
    const auto quotient = [&](const Vec3& x, const Vec3& y) {
        const double d = norm(sub(x, y));
        if (d == 0.0) return 0.0;
        return velocity_gap(field(x), field(y)) / std::pow(d, alpha);
    };
    for (std::size_t n = 0; n < n_shells; ++n) {
        double best = 0.0;
        for (const auto& pr : pairs) best = std::max(best, quotient(field.to_world(n, pr.a), field.to_world(n, pr.b)));
        if (n > 0) {
            for (const auto& pr : cross) {
                best = std::max(best, quotient(field.to_world(n, pr.a), field.to_world(n - 1, pr.b)));
            }
        }
        out.per_shell[n] = best;
        out.max_quotient = std::max(out.max_quotient, best);
    }
    return out;
}

DissipationStudy local_dissipation(const MultiscaleField& field, std::size_t shell, std::span<const double> rel_steps,
                                   int max_points) {
    if (shell >= field.placements().size()) throw InvalidArgument("shell index out of range");
    if (max_points < 1) throw InvalidArgument("need at least one sample point");
    const auto active = field.shell_template().active_cell_centres(0.1);
    if (active.empty()) throw NumericalError("template has no active cells");
    const auto& pl = field.placements()[shell];
    const std::size_t count = std::min(active.size(), static_cast<std::size_t>(max_points));
    const double scale = pl.scale / (pl.amplitude * pl.amplitude * pl.amplitude);
    const auto head = [&](const Vec3& x) {
        const auto s = field(x);
        return 0.5 * (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) + s[3];
    };

    DissipationStudy out;
    for (double rel : rel_steps) {
        const double h = rel * pl.scale;
        double worst = 0.0;
        for (std::size_t k = 0; k < count; ++k) {
            const std::size_t idx = k * active.size() / count;
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
            const Vec3 x = field.to_world(shell, template_point(active[idx], ang));
            const auto s = field(x);
            double res = 0.0;
            for (int d = 0; d < 3; ++d) {
                Vec3 xp = x, xm = x;
                xp[d] += h;
                xm[d] -= h;
                res += s[d] * (head(xp) - head(xm)) / (2.0 * h);
            }
            worst = std::max(worst, std::abs(res) * scale);
        }
        out.steps.push_back(rel);
        out.max_res.push_back(worst);
    }
    if (out.steps.size() >= 3) out.order = convergence_study(out.steps, out.max_res).order;
    return out;
}

std::string placements_to_json(std::span<const ShellPlacement> placements) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& pl : placements) {
        nlohmann::ordered_json j;
        j["center"] = pl.center;
        j["rotation"] = pl.rotation;
        j["scale"] = pl.scale;
        j["amplitude"] = pl.amplitude;
        arr.push_back(j);
    }
    return arr.dump(2);
}

}  // namespace gsforge
