#include "gsforge/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace gsforge {

TruncatedSeries::TruncatedSeries(std::vector<double> coeffs, double radius)
    : coeffs_(std::move(coeffs)), radius_(radius) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    if (!(radius_ > 0.0)) throw InvalidArgument("series radius must be positive");
}

TruncatedSeries TruncatedSeries::constant(double c, double radius) {
    return TruncatedSeries({c}, radius);
}

TruncatedSeries TruncatedSeries::identity(double radius) {
    return TruncatedSeries({0.0, 1.0}, radius);
}

double TruncatedSeries::eval(double t) const {
    // small relative slack so that endpoints computed in floating point are accepted
    if (std::abs(t) > radius_ * (1.0 + 1e-12)) {
        throw DomainError("series evaluated at t=" + std::to_string(t) + " outside radius " +
                          std::to_string(radius_));
    }
    return eval_unchecked(t);
}

double TruncatedSeries::eval_unchecked(double t) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
}

double TruncatedSeries::eval_deriv(double t) const { return eval_derivative(t, 1); }

double TruncatedSeries::eval_derivative(double t, int k) const {
    if (std::abs(t) > radius_ * (1.0 + 1e-12)) {
        throw DomainError("series derivative evaluated outside radius");
    }
    const int n = order();
    if (k > n) return 0.0;
    double acc = 0.0;
    for (int j = n; j >= k; --j) {
        double falling = 1.0;
        for (int i = 0; i < k; ++i) falling *= static_cast<double>(j - i);
        acc = acc * t + falling * coeffs_[static_cast<std::size_t>(j)];
    }
    return acc;
}

TruncatedSeries TruncatedSeries::derivative() const {
    if (coeffs_.size() <= 1) return TruncatedSeries({0.0}, radius_);
    std::vector<double> d(coeffs_.size() - 1);
    for (std::size_t j = 1; j < coeffs_.size(); ++j) d[j - 1] = static_cast<double>(j) * coeffs_[j];
    return TruncatedSeries(std::move(d), radius_);
}

TruncatedSeries TruncatedSeries::shifted(double t0) const {
    // repeated synthetic division: c <- coefficients of f(t0 + s)
    std::vector<double> c = coeffs_;
    const std::size_t n = c.size();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = n - 1; j > k; --j) c[j - 1] += t0 * c[j];
    }
    return TruncatedSeries(std::move(c), std::max(radius_ - std::abs(t0), 1e-300));
}

TruncatedSeries TruncatedSeries::divided_by_t() const {
    if (coeffs_.size() <= 1) return TruncatedSeries({0.0}, radius_);
    return TruncatedSeries(std::vector<double>(coeffs_.begin() + 1, coeffs_.end()), radius_);
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (std::size_t j = 0; j < c.size() && j < coeffs_.size(); ++j) c[j] = coeffs_[j];
    return TruncatedSeries(std::move(c), radius_);
}

TruncatedSeries TruncatedSeries::with_radius(double radius) const {
    return TruncatedSeries(coeffs_, radius);
}

TruncatedSeries TruncatedSeries::reciprocal(int order) const {
    const double c0 = coeffs_[0];
    if (c0 == 0.0) throw NumericalError("reciprocal of a series with zero constant term");
    std::vector<double> r(static_cast<std::size_t>(order) + 1, 0.0);
    r[0] = 1.0 / c0;
    for (std::size_t j = 1; j < r.size(); ++j) {
        double s = 0.0;
        for (std::size_t i = 1; i <= j && i < coeffs_.size(); ++i) s += coeffs_[i] * r[j - i];
        r[j] = -s / c0;
    }
    return TruncatedSeries(std::move(r), radius_);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = a[j] + b[j];
    return TruncatedSeries(std::move(c), std::min(a.radius_, b.radius_));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = a[j] - b[j];
    return TruncatedSeries(std::move(c), std::min(a.radius_, b.radius_));
}

TruncatedSeries operator*(double s, const TruncatedSeries& a) {
    std::vector<double> c = a.coeffs_;
    for (double& v : c) v *= s;
    return TruncatedSeries(std::move(c), a.radius_);
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    return multiply_truncated(a, b, a.order() + b.order());
}

TruncatedSeries multiply_truncated(const TruncatedSeries& a, const TruncatedSeries& b, int order) {
    std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
    for (std::size_t i = 0; i < a.coeffs_.size() && i < c.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size() && i + j < c.size(); ++j) {
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return TruncatedSeries(std::move(c), std::min(a.radius_, b.radius_));
}

std::string TruncatedSeries::to_json() const {
    nlohmann::json j;
    j["coeffs"] = coeffs_;
    j["order"] = order();
    j["radius"] = radius_;
    return j.dump();
}

TruncatedSeries TruncatedSeries::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("series JSON: ") + e.what());
    }
    if (!j.contains("coeffs") || !j.contains("order") || !j.contains("radius")) {
        throw InvalidArgument("series JSON needs keys coeffs, order, radius");
    }
    auto coeffs = j.at("coeffs").get<std::vector<double>>();
    const int order = j.at("order").get<int>();
    if (static_cast<int>(coeffs.size()) != order + 1) {
        throw InvalidArgument("series JSON: coeffs must have order+1 entries");
    }
    return TruncatedSeries(std::move(coeffs), j.at("radius").get<double>());
}

double ratio_test_radius(const std::vector<double>& coeffs, double floor) {
    const std::size_t n = coeffs.size();
    const std::size_t first = n > 4 ? n - 4 : 1;
    double r = std::numeric_limits<double>::infinity();
    for (std::size_t j = first; j < n; ++j) {
        const double prev = std::abs(coeffs[j - 1]);
        const double cur = std::abs(coeffs[j]);
        if (prev == 0.0 || cur == 0.0) continue;
        r = std::min(r, prev / cur);
    }
    if (!std::isfinite(r)) r = 1.0 / floor;
    return std::max(r, floor);
}

}  // namespace gsforge
