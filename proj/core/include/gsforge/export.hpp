#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gsforge/grid.hpp"

namespace gsforge {

enum class ExportFormat { Csv, Vtk, Json };

/// "csv", "vtk" (or "vtk-ascii"), "json"; anything else is InvalidArgument.
ExportFormat parse_format(const std::string& name);
std::string extension(ExportFormat format);

struct NamedField {
    std::string name;
    const GridField* field = nullptr;
};

/// Three components of a vector array; a null component is written as 0.
struct NamedVector {
    std::string name;
    std::array<const GridField*, 3> components{};
};

/// How grid coordinates become VTK points: planar (x, y, 0) or
/// meridional (r, 0, z).
enum class PointMap { Planar, Meridional };

/// Header "x,y,<names...>", one row per node, values with 17 significant digits.
void write_csv(const std::string& path, std::span<const NamedField> fields, const std::string& x_label = "x",
               const std::string& y_label = "y");

/// Header line then one row per entry; all columns must have equal length.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

/// Legacy ASCII STRUCTURED_GRID with POINT_DATA scalars and vectors.
void write_vtk(const std::string& path, std::span<const NamedField> scalars, std::span<const NamedVector> vectors,
               PointMap map, const std::string& title = "gsforge field");

/// {"grid":{...},"fields":{"name":[...]}} with round-trip doubles.
void write_field_json(const std::string& path, std::span<const NamedField> fields);
std::vector<GridField> read_field_json(const std::string& path);

/// Writes `fields` (plus `vectors` for VTK) as <stem>.<ext> in `dir`; returns the path.
std::string export_fields(const std::string& dir, const std::string& stem, ExportFormat format,
                          std::span<const NamedField> fields, std::span<const NamedVector> vectors, PointMap map);

}  // namespace gsforge
