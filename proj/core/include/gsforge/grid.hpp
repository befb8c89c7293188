#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace gsforge {

/// Uniform structured grid; node (i, j) sits at (x_min + i hx, y_min + j hy).
struct Grid2D {
    double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
    int nx = 0, ny = 0;
    double hx = 0.0, hy = 0.0;

    Grid2D() = default;
    Grid2D(double x_min, double x_max, double y_min, double y_max, int nx, int ny);

    /// [-half_x, half_x] x [-half_y, half_y] with odd node counts, so that
    /// the lines x = 0 and y = 0 carry nodes.
    static Grid2D symmetric(double half_x, double half_y, int nx, int ny);

    double x(int i) const { return i == (nx - 1) / 2 && is_symmetric_x() ? 0.0 : x_min + i * hx; }
    double y(int j) const { return j == (ny - 1) / 2 && is_symmetric_y() ? 0.0 : y_min + j * hy; }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
    }
    bool is_symmetric_x() const;
    bool is_symmetric_y() const;
    /// Index of the node at x = 0 (resp. y = 0); throws if there is none.
    int zero_column() const;
    int zero_row() const;
    /// Same grid with the spacing halved (2n - 1 nodes per direction).
    Grid2D refined() const;
};

enum class FieldKind { Scalar, VectorComponent };

/// Node values on a Grid2D, stored row by row (index = j * nx + i).
struct GridField {
    Grid2D grid;
    std::vector<double> values;
    FieldKind kind = FieldKind::Scalar;
    std::string name;

    GridField() = default;
    GridField(Grid2D g, std::string name, FieldKind kind = FieldKind::Scalar);

    double& at(int i, int j) { return values[grid.index(i, j)]; }
    double at(int i, int j) const { return values[grid.index(i, j)]; }
    /// Throws NumericalError on NaN or infinite entries.
    void require_finite() const;
    double max_abs() const;
};

struct GridArgmin {
    int i = 0;
    int j = 0;
    double value = 0.0;
    bool strict = false;  ///< every other node is strictly larger
};

GridArgmin argmin(const GridField& f);

/// Nodes i in [i0, i1], j in [j0, j1] as a field on the matching sub-grid.
GridField subfield(const GridField& f, int i0, int i1, int j0, int j1);

}  // namespace gsforge
