#pragma once

namespace gsforge::detail {

/// One classical Runge-Kutta step for the scalar ODE y' = f(t, y).
template <class F>
double rk4_step(F&& f, double t, double y, double h) {
    const double k1 = f(t, y);
    const double k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(t + h, y + h * k3);
    return y + h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
}

}  // namespace gsforge::detail
