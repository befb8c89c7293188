#pragma once

#include <cmath>
#include <filesystem>
#include <string>

#include "gsforge/grid.hpp"

namespace testing {

// Fills a grid field from a function of the node coordinates.
template <class F>
gsforge::GridField sample(const gsforge::Grid2D& g, F&& f, const std::string& name = "f") {
    gsforge::GridField out(g, name);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) out.at(i, j) = f(g.x(i), g.y(j));
    return out;
}

inline double interior_max(const gsforge::GridField& f) {
    double m = 0.0;
    for (int j = 1; j + 1 < f.grid.ny; ++j)
        for (int i = 1; i + 1 < f.grid.nx; ++i) m = std::max(m, std::abs(f.at(i, j)));
    return m;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("gsforge_unit_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testing
