#include "gsforge/hodograph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "gsforge/error.hpp"
#include "rk4.hpp"

namespace gsforge {

namespace {

// k-th derivative of sum c_j t^j at t, no radius check
double poly_derivative(const std::vector<double>& c, double t, int k) {
    const int n = static_cast<int>(c.size());
    double acc = 0.0;
    for (int j = n - 1; j >= k; --j) {
        double factor = 1.0;
        for (int i = 0; i < k; ++i) factor *= static_cast<double>(j - i);
        acc = acc * t + factor * c[static_cast<std::size_t>(j)];
    }
    return acc;
}

// product of two polynomials in x with series coefficients
std::vector<TruncatedSeries> multiply_x(const std::vector<TruncatedSeries>& p,
                                        const std::vector<TruncatedSeries>& q) {
    const double r = std::min(p.front().radius(), q.front().radius());
    std::vector<TruncatedSeries> out(p.size() + q.size() - 1, TruncatedSeries::constant(0.0, r));
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] = out[i + j] + p[i] * q[j];
    }
    return out;
}

PolyField make_p3(const TruncatedSeries& b, double r) {
    const auto one = TruncatedSeries::constant(1.0, r);
    return PolyField(PolyLabel::P3, {one - b, 3.0 * one - b, TruncatedSeries::constant(3.0, r), one});
}

PolyField make_p2(const TruncatedSeries& a, double r) {
    const auto one = TruncatedSeries::constant(1.0, r);
    const auto phi = TruncatedSeries::identity(r);
    return PolyField(PolyLabel::P2, {6.0 * (phi * (one - a)), 12.0 * phi, 6.0 * phi});
}

PolyField make_p6(const PolyField& p2, const PolyField& p3) {
    auto sq = multiply_x(p3.coeff_series(), p3.coeff_series());
    std::vector<TruncatedSeries> c = sq;
    for (auto& s : c) s = -1.0 * s;
    for (std::size_t k = 0; k < p2.coeff_series().size(); ++k) c[k] = c[k] + p2.coeff_series()[k];
    return PolyField(PolyLabel::P6, std::move(c));
}

}  // namespace

std::string to_string(PolyLabel label) {
    switch (label) {
        case PolyLabel::P2: return "P2";
        case PolyLabel::P3: return "P3";
        case PolyLabel::P6: return "P6";
    }
    return "?";
}

PolyField::PolyField(PolyLabel label, std::vector<TruncatedSeries> coeff_series)
    : label_(label), coeffs_(std::move(coeff_series)) {
    if (coeffs_.empty()) throw InvalidArgument("PolyField needs at least one coefficient series");
}

double PolyField::derivative(double x, double phi, int dx, int dphi) const {
    if (dx < 0 || dphi < 0) throw InvalidArgument("negative derivative order");
    const int n = static_cast<int>(coeffs_.size());
    double acc = 0.0;
    for (int k = n - 1; k >= dx; --k) {
        double factor = 1.0;
        for (int i = 0; i < dx; ++i) factor *= static_cast<double>(k - i);
        acc = acc * x + factor * poly_derivative(coeffs_[static_cast<std::size_t>(k)].coeffs(), phi, dphi);
    }
    return acc;
}

TruncatedSeries PolyField::at_x(double x) const {
    TruncatedSeries acc = TruncatedSeries::constant(0.0, coeffs_.front().radius());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = x * acc + *it;
    return acc;
}

Hodograph::Hodograph(const EulerProfiles& profiles)
    : Hodograph(profiles.a, profiles.b, profiles.epsilon) {}

Hodograph::Hodograph(TruncatedSeries a, TruncatedSeries b, double epsilon)
    : a_(std::move(a)),
      b_(std::move(b)),
      eps_(epsilon),
      p2_(make_p2(a_, epsilon)),
      p3_(make_p3(b_, epsilon)),
      p6_(make_p6(p2_, p3_)) {
    if (!(epsilon > 0.0)) throw InvalidArgument("hodograph interval half-width must be positive");
}

const PolyField& Hodograph::field(PolyLabel label) const {
    switch (label) {
        case PolyLabel::P2: return p2_;
        case PolyLabel::P3: return p3_;
        case PolyLabel::P6: return p6_;
    }
    throw InvalidArgument("unknown polynomial label");
}

void Hodograph::check_phi(double phi) const {
    if (!(std::abs(phi) <= eps_ * (1.0 + 1e-12))) {
        throw DomainError("phi=" + std::to_string(phi) + " outside [-eps, eps], eps=" + std::to_string(eps_));
    }
}

double Hodograph::eval_P(PolyLabel label, double x, double phi) const {
    check_phi(phi);
    return field(label).eval(x, phi);
}

double Hodograph::derivative(PolyLabel label, double x, double phi, int dx, int dphi) const {
    check_phi(phi);
    return field(label).derivative(x, phi, dx, dphi);
}

bool Hodograph::in_domain(double x, double phi) const { return std::abs(phi) <= eps_ && P6(x, phi) > 0.0; }

double Hodograph::compatibility_residual(std::span<const double> xs, std::span<const double> phis) const {
    double worst = 0.0;
    for (double x : xs) {
        for (double phi : phis) {
            check_phi(phi);
            const double r = p6_.derivative(x, phi, 1, 0) + p3_.eval(x, phi) * p6_.derivative(x, phi, 0, 1) -
                             2.0 * p3_.derivative(x, phi, 0, 1) * p6_.eval(x, phi);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

std::size_t BoundaryCurve::zero_index() const { return x_nodes.size() / 2; }

double BoundaryCurve::operator()(double x) const {
    if (x_nodes.size() < 2) throw DomainError("empty boundary curve");
    const double x0 = x_nodes.front();
    if (x < x0 - 1e-14 || x > x_nodes.back() + 1e-14) {
        throw DomainError("boundary curve evaluated outside its x range at x=" + std::to_string(x));
    }
    auto i = static_cast<std::size_t>(std::floor((x - x0) / step));
    i = std::min(i, x_nodes.size() - 2);
    const double t = (x - x_nodes[i]) / step;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    return h00 * delta_values[i] + h10 * step * slopes[i] + h01 * delta_values[i + 1] +
           h11 * step * slopes[i + 1];
}

double BoundaryCurve::second_difference_at_zero() const {
    const std::size_t c = zero_index();
    return (delta_values[c + 1] - 2.0 * delta_values[c] + delta_values[c - 1]) / (step * step);
}

double BoundaryCurve::second_difference_at_zero(double spacing) const {
    const double m = spacing / step;
    const auto k = static_cast<std::size_t>(std::lround(m));
    if (k < 1 || std::abs(m - static_cast<double>(k)) > 1e-9 * m || k > zero_index()) {
        throw InvalidArgument("spacing must be a positive multiple of the node step inside the curve range");
    }
    const std::size_t c = zero_index();
    const double h = static_cast<double>(k) * step;
    return (delta_values[c + k] - 2.0 * delta_values[c] + delta_values[c - k]) / (h * h);
}

BoundaryCurve boundary_delta(const Hodograph& hodo, double half_width, double h) {
    if (!(half_width > 0.0) || !(h > 0.0)) throw InvalidArgument("boundary_delta needs positive width and step");
    if (h > half_width / 50.0 * (1.0 + 1e-12)) {
        throw InvalidArgument("boundary_delta step must satisfy h <= half_width/50");
    }
    const int n = static_cast<int>(std::ceil(half_width / h - 1e-9));
    const double step = half_width / n;
    const std::size_t total = 2 * static_cast<std::size_t>(n) + 1;

    BoundaryCurve c;
    c.step = step;
    c.x_nodes.resize(total);
    c.delta_values.resize(total);
    c.slopes.resize(total);

    const auto rhs = [&](double x, double d) {
        if (std::abs(d) > hodo.epsilon()) {
            throw DomainError("boundary curve left |phi| <= eps at x=" + std::to_string(x) +
                              " (delta=" + std::to_string(d) + ")");
        }
        return hodo.field(PolyLabel::P3).eval(x, d);
    };
    const auto center = static_cast<std::size_t>(n);
    c.x_nodes[center] = 0.0;
    c.delta_values[center] = 0.0;
    for (int dir : {1, -1}) {
        double d = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double x = dir * (i - 1) * step;
            d = detail::rk4_step(rhs, x, d, dir * step);
            rhs(dir * i * step, d);
            const auto idx = static_cast<std::size_t>(static_cast<int>(center) + dir * i);
            c.x_nodes[idx] = dir * i * step;
            c.delta_values[idx] = d;
        }
    }
    for (std::size_t i = 0; i < total; ++i) {
        c.slopes[i] = hodo.P3(c.x_nodes[i], c.delta_values[i]);
        c.max_p6_residual = std::max(c.max_p6_residual, std::abs(hodo.P6(c.x_nodes[i], c.delta_values[i])));
    }
    return c;
}

ColumnProfile::ColumnProfile(const Hodograph& hodo, double x, double delta_guess) : x_(x) {
    const TruncatedSeries pi = hodo.field(PolyLabel::P6).at_x(x);
    double d = delta_guess;
    for (int it = 0; it < 50; ++it) {
        const double f = pi.eval_unchecked(d);
        const double fp = poly_derivative(pi.coeffs(), d, 1);
        if (!(fp > 0.0)) {
            throw NumericalError("column root of P6 is not simple at x=" + std::to_string(x));
        }
        const double step = f / fp;
        d -= step;
        if (std::abs(step) < 1e-17 + 1e-15 * std::abs(d)) break;
    }
    if (std::abs(d) >= hodo.epsilon()) {
        throw DomainError("column base delta(x) outside profile interval at x=" + std::to_string(x));
    }
    delta_ = d;
    reduced_ = pi.shifted(d).divided_by_t();
    u_max_ = std::sqrt(hodo.epsilon() - d);
    y_max_ = primitive_u(u_max_);
}

double ColumnProfile::integrand(double v) const {
    const double r = reduced_.eval_unchecked(v * v);
    if (!(r > 0.0)) {
        throw NumericalError("Y primitive is non-monotone: P6 <= 0 inside the column at x=" +
                             std::to_string(x_) + ", phi=" + std::to_string(delta_ + v * v));
    }
    return 2.0 / std::sqrt(r);
}

double ColumnProfile::primitive_u(double u) const {
    if (u == 0.0) return 0.0;
    return boost::math::quadrature::gauss<double, 30>::integrate([this](double v) { return integrand(v); },
                                                                 0.0, u);
}

double ColumnProfile::primitive(double phi) const {
    if (phi < delta_ || phi > delta_ + u_max_ * u_max_ * (1.0 + 1e-12)) {
        throw DomainError("primitive evaluated outside [delta, eps]");
    }
    return primitive_u(std::sqrt(phi - delta_));
}

double ColumnProfile::phi_at(double y) const {
    const double target = std::abs(y);
    if (target > y_max_ * (1.0 + 1e-12)) {
        throw DomainError("y=" + std::to_string(y) + " beyond the reachable height " + std::to_string(y_max_) +
                          " of the column at x=" + std::to_string(x_));
    }
    if (target == 0.0) return delta_;
    double lo = 0.0, hi = u_max_;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (primitive_u(mid) < target) lo = mid;
        else hi = mid;
    }
    double u = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) u -= (primitive_u(u) - target) / integrand(u);
    return delta_ + u * u;
}

AxisTable axis_profile(const Hodograph& hodo, double y_max, int n_points) {
    if (n_points < 2) throw InvalidArgument("axis_profile needs at least two points");
    if (!(y_max > 0.0)) throw InvalidArgument("axis_profile needs y_max > 0");
    const ColumnProfile column(hodo, 0.0);
    if (y_max > column.max_height()) {
        throw DomainError("y_max=" + std::to_string(y_max) + " exceeds the axis height " +
                          std::to_string(column.max_height()) + " reachable inside [-eps, eps]");
    }
    AxisTable t;
    t.y.resize(static_cast<std::size_t>(n_points));
    t.phi.resize(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double y = y_max * i / (n_points - 1);
        t.y[static_cast<std::size_t>(i)] = y;
        t.phi[static_cast<std::size_t>(i)] = column.phi_at(y);
        if (i > 0 && !(t.phi[static_cast<std::size_t>(i)] > t.phi[static_cast<std::size_t>(i - 1)])) {
            throw NumericalError("axis profile not strictly increasing at y=" + std::to_string(y));
        }
    }
    return t;
}

}  // namespace gsforge
