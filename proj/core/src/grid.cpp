#include "gsforge/grid.hpp"

#include <algorithm>
#include <cmath>

#include "gsforge/error.hpp"

namespace gsforge {

Grid2D::Grid2D(double x_min_, double x_max_, double y_min_, double y_max_, int nx_, int ny_)
    : x_min(x_min_), x_max(x_max_), y_min(y_min_), y_max(y_max_), nx(nx_), ny(ny_) {
    if (nx < 2 || ny < 2) throw InvalidArgument("grid needs at least two nodes per direction");
    if (!(x_max > x_min) || !(y_max > y_min)) throw InvalidArgument("grid extent must be positive");
    hx = (x_max - x_min) / (nx - 1);
    hy = (y_max - y_min) / (ny - 1);
}

Grid2D Grid2D::symmetric(double half_x, double half_y, int nx, int ny) {
    if (nx % 2 == 0 || ny % 2 == 0) {
        throw InvalidArgument("symmetric grid needs odd node counts, got " + std::to_string(nx) + "x" +
                              std::to_string(ny));
    }
    return Grid2D(-half_x, half_x, -half_y, half_y, nx, ny);
}

bool Grid2D::is_symmetric_x() const {
    return nx % 2 == 1 && std::abs(x_min + x_max) <= 1e-12 * (x_max - x_min);
}

bool Grid2D::is_symmetric_y() const {
    return ny % 2 == 1 && std::abs(y_min + y_max) <= 1e-12 * (y_max - y_min);
}

int Grid2D::zero_column() const {
    const int i = static_cast<int>(std::lround(-x_min / hx));
    if (i < 0 || i >= nx || std::abs(x_min + i * hx) > 1e-9 * hx) {
        throw InvalidArgument("grid has no node column at x = 0");
    }
    return i;
}

int Grid2D::zero_row() const {
    const int j = static_cast<int>(std::lround(-y_min / hy));
    if (j < 0 || j >= ny || std::abs(y_min + j * hy) > 1e-9 * hy) {
        throw InvalidArgument("grid has no node row at y = 0");
    }
    return j;
}

Grid2D Grid2D::refined() const { return Grid2D(x_min, x_max, y_min, y_max, 2 * nx - 1, 2 * ny - 1); }

GridField::GridField(Grid2D g, std::string name_, FieldKind kind_)
    : grid(g), values(g.size(), 0.0), kind(kind_), name(std::move(name_)) {}

void GridField::require_finite() const {
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw NumericalError("field '" + name + "' has a non-finite value at node " + std::to_string(k));
        }
    }
}

double GridField::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

GridArgmin argmin(const GridField& f) {
    if (f.values.empty()) throw InvalidArgument("argmin of an empty field");
    const auto it = std::min_element(f.values.begin(), f.values.end());
    const auto k = static_cast<std::size_t>(it - f.values.begin());
    GridArgmin out;
    out.i = static_cast<int>(k % static_cast<std::size_t>(f.grid.nx));
    out.j = static_cast<int>(k / static_cast<std::size_t>(f.grid.nx));
    out.value = *it;
    out.strict = std::count(f.values.begin(), f.values.end(), *it) == 1;
    return out;
}

GridField subfield(const GridField& f, int i0, int i1, int j0, int j1) {
    const Grid2D& g = f.grid;
    if (i0 < 0 || j0 < 0 || i1 >= g.nx || j1 >= g.ny || i1 - i0 < 1 || j1 - j0 < 1) {
        throw InvalidArgument("subfield index range outside the grid");
    }
    const Grid2D sub(g.x(i0), g.x(i1), g.y(j0), g.y(j1), i1 - i0 + 1, j1 - j0 + 1);
    GridField out(sub, f.name, f.kind);
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) out.at(i - i0, j - j0) = f.at(i, j);
    }
    return out;
}

}  // namespace gsforge
