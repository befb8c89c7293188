#include "gsforge/cutoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "gsforge/error.hpp"

namespace gsforge {

namespace {

constexpr int kPanels = 512;

double e_fn(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double e_deriv(double t) { return t > 0.0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }

double smooth_step_deriv(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double a = e_fn(t), b = e_fn(1.0 - t);
    const double da = e_deriv(t), db = -e_deriv(1.0 - t);
    return (da * (a + b) - a * (da + db)) / ((a + b) * (a + b));
}

}  // namespace

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = e_fn(t);
    return a / (a + e_fn(1.0 - t));
}

CutoffSpec CutoffSpec::identity() { return CutoffSpec(); }

CutoffSpec CutoffSpec::bump(double p_lo, double p_hi, double width) {
    if (!(p_lo < p_hi)) {
        throw InvalidArgument("cutoff thresholds need p_lo < p_hi (got " + std::to_string(p_lo) + ", " +
                              std::to_string(p_hi) + ")");
    }
    CutoffSpec c;
    c.kind_ = CutoffKind::Bump;
    c.p_lo_ = p_lo;
    c.p_hi_ = p_hi;
    c.width_ = width > 0.0 ? width : 0.5 * (p_hi - p_lo);
    if (c.width_ > 0.5 * (p_hi - p_lo) * (1.0 + 1e-12)) {
        throw InvalidArgument("cutoff transition width exceeds half the pressure window");
    }
    c.panel_ = (p_hi - p_lo) / kPanels;
    for (int k = 1; k <= 2; ++k) {
        auto& cum = c.cumulative_[k - 1];
        cum.assign(kPanels + 1, 0.0);
        for (int i = 0; i < kPanels; ++i) {
            const double a = p_lo + i * c.panel_;
            cum[static_cast<std::size_t>(i + 1)] = cum[static_cast<std::size_t>(i)] + c.panel_integral(a, a + c.panel_, k);
        }
    }
    return c;
}

double CutoffSpec::operator()(double p) const {
    if (kind_ == CutoffKind::Identity) return 1.0;
    return smooth_step((p - p_lo_) / width_) * smooth_step((p_hi_ - p) / width_);
}

double CutoffSpec::derivative(double p) const {
    if (kind_ == CutoffKind::Identity) return 0.0;
    const double t1 = (p - p_lo_) / width_, t2 = (p_hi_ - p) / width_;
    return (smooth_step_deriv(t1) * smooth_step(t2) - smooth_step(t1) * smooth_step_deriv(t2)) / width_;
}

double CutoffSpec::panel_integral(double a, double b, int k) const {
    return boost::math::quadrature::gauss<double, 15>::integrate(
        [this, k](double p) {
            const double v = (*this)(p);
            return k == 1 ? v : v * v;
        },
        a, b);
}

double CutoffSpec::primitive(double p, int k) const {
    if (k != 1 && k != 2) throw InvalidArgument("cutoff primitive power must be 1 or 2");
    if (kind_ == CutoffKind::Identity) return p;
    const auto& cum = cumulative_[k - 1];
    const double total = cum.back();
    if (p >= p_hi_) return 0.0;
    if (p <= p_lo_) return -total;
    const auto i = std::min(static_cast<int>((p - p_lo_) / panel_), kPanels - 1);
    const double a = p_lo_ + i * panel_;
    return cum[static_cast<std::size_t>(i)] + panel_integral(a, p, k) - total;
}

}  // namespace gsforge
