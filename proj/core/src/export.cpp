#include "gsforge/export.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "gsforge/error.hpp"

namespace gsforge {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    return out;
}

const Grid2D& common_grid(std::span<const NamedField> fields) {
    if (fields.empty()) throw InvalidArgument("nothing to export: no fields given");
    for (const auto& f : fields) {
        if (f.field == nullptr || f.field->values.empty() || f.field->grid.size() == 0) {
            throw InvalidArgument("refusing to export empty field '" + f.name + "'");
        }
        if (f.field->values.size() != f.field->grid.size()) {
            throw InvalidArgument("field '" + f.name + "' size does not match its grid");
        }
    }
    const Grid2D& g = fields.front().field->grid;
    for (const auto& f : fields) {
        const Grid2D& q = f.field->grid;
        if (q.nx != g.nx || q.ny != g.ny || q.x_min != g.x_min || q.y_min != g.y_min) {
            throw InvalidArgument("exported fields must share one grid ('" + f.name + "' differs)");
        }
    }
    return g;
}

}  // namespace

ExportFormat parse_format(const std::string& name) {
    if (name == "csv") return ExportFormat::Csv;
    if (name == "vtk" || name == "vtk-ascii") return ExportFormat::Vtk;
    if (name == "json") return ExportFormat::Json;
    throw InvalidArgument("unsupported export format '" + name + "' (expected csv, vtk or json)");
}

std::string extension(ExportFormat format) {
    switch (format) {
        case ExportFormat::Csv: return "csv";
        case ExportFormat::Vtk: return "vtk";
        case ExportFormat::Json: return "json";
    }
    return "dat";
}

void write_csv(const std::string& path, std::span<const NamedField> fields, const std::string& x_label,
               const std::string& y_label) {
    const Grid2D& g = common_grid(fields);
    auto out = open_out(path);
    out << x_label << ',' << y_label;
    for (const auto& f : fields) out << ',' << f.name;
    out << '\n';
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            out << fmt17(g.x(i)) << ',' << fmt17(g.y(j));
            for (const auto& f : fields) out << ',' << fmt17(f.field->at(i, j));
            out << '\n';
        }
    }
}

void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size() || columns.empty()) {
        throw InvalidArgument("table needs one header entry per column");
    }
    const std::size_t n = columns.front().size();
    if (n == 0) throw InvalidArgument("refusing to export an empty table");
    for (const auto& c : columns) {
        if (c.size() != n) throw InvalidArgument("table columns differ in length");
    }
    auto out = open_out(path);
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << fmt17(columns[c][r]);
        out << '\n';
    }
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == name) return c;
    }
    throw InvalidArgument("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    CsvTable t;
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("CSV '" + path + "' is empty");
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) t.header.push_back(cell);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != t.header.size()) throw InvalidArgument("ragged CSV row in '" + path + "'");
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_vtk(const std::string& path, std::span<const NamedField> scalars, std::span<const NamedVector> vectors,
               PointMap map, const std::string& title) {
    std::vector<NamedField> all(scalars.begin(), scalars.end());
    for (const auto& v : vectors) {
        for (const GridField* c : v.components) {
            if (c) all.push_back({v.name, c});
        }
    }
    const Grid2D& g = common_grid(all);
    auto out = open_out(path);
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_GRID\n";
    out << "DIMENSIONS " << g.nx << ' ' << g.ny << " 1\n";
    out << "POINTS " << g.size() << " double\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (map == PointMap::Planar) {
                out << fmt17(g.x(i)) << ' ' << fmt17(g.y(j)) << " 0\n";
            } else {
                out << fmt17(g.x(i)) << " 0 " << fmt17(g.y(j)) << '\n';
            }
        }
    }
    out << "POINT_DATA " << g.size() << '\n';
    for (const auto& s : scalars) {
        out << "SCALARS " << s.name << " double 1\nLOOKUP_TABLE default\n";
        for (double v : s.field->values) out << fmt17(v) << '\n';
    }
    for (const auto& v : vectors) {
        out << "VECTORS " << v.name << " double\n";
        for (std::size_t k = 0; k < g.size(); ++k) {
            for (int c = 0; c < 3; ++c) {
                out << (c ? " " : "") << (v.components[static_cast<std::size_t>(c)] ? fmt17(v.components[static_cast<std::size_t>(c)]->values[k]) : "0");
            }
            out << '\n';
        }
    }
}

void write_field_json(const std::string& path, std::span<const NamedField> fields) {
    const Grid2D& g = common_grid(fields);
    nlohmann::ordered_json j;
    j["grid"] = {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
                 {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
    nlohmann::ordered_json fs = nlohmann::ordered_json::object();
    for (const auto& f : fields) fs[f.name] = f.field->values;
    j["fields"] = fs;
    auto out = open_out(path);
    out << j.dump() << '\n';
}

std::vector<GridField> read_field_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    const auto j = nlohmann::ordered_json::parse(in);
    const auto& gj = j.at("grid");
    const Grid2D g(gj.at("x_min").get<double>(), gj.at("x_max").get<double>(), gj.at("y_min").get<double>(),
                   gj.at("y_max").get<double>(), gj.at("nx").get<int>(), gj.at("ny").get<int>());
    std::vector<GridField> out;
    for (const auto& [name, values] : j.at("fields").items()) {
        GridField f(g, name);
        f.values = values.get<std::vector<double>>();
        if (f.values.size() != g.size()) throw InvalidArgument("field '" + name + "' has the wrong length");
        out.push_back(std::move(f));
    }
    return out;
}

std::string export_fields(const std::string& dir, const std::string& stem, ExportFormat format,
                          std::span<const NamedField> fields, std::span<const NamedVector> vectors, PointMap map) {
    const std::string path = (std::filesystem::path(dir) / (stem + "." + extension(format))).string();
    const std::string xl = map == PointMap::Meridional ? "r" : "x";
    const std::string yl = map == PointMap::Meridional ? "z" : "y";
    switch (format) {
        case ExportFormat::Csv: write_csv(path, fields, xl, yl); break;
        case ExportFormat::Json: write_field_json(path, fields); break;
        case ExportFormat::Vtk: write_vtk(path, fields, vectors, map, stem); break;
    }
    return path;
}

}  // namespace gsforge
