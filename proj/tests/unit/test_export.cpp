#include <doctest.h>

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gsforge/error.hpp"
#include "gsforge/export.hpp"
#include "helpers.hpp"

using namespace gsforge;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("export") {

TEST_CASE("CSV round trip is bit exact") {
    const auto dir = testing::scratch_dir("csv");
    const Grid2D g(0.1, 0.7, -0.2, 0.3, 7, 5);
    const GridField a = testing::sample(g, [](double x, double y) { return std::exp(x) / 3 + y / 7; }, "a");
    const GridField b = testing::sample(g, [](double x, double y) { return x * y * 1e-300; }, "b");
    const std::vector<NamedField> fs{{"a", &a}, {"b", &b}};
    write_csv((dir / "f.csv").string(), fs);
    const CsvTable t = read_csv((dir / "f.csv").string());
    REQUIRE(t.rows.size() == g.size());
    const auto ca = t.column("a"), cb = t.column("b"), cx = t.column("x");
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto& row = t.rows[g.index(i, j)];
            CHECK(row[ca] == a.at(i, j));
            CHECK(row[cb] == b.at(i, j));
            CHECK(row[cx] == g.x(i));
        }
    CHECK_THROWS_AS(t.column("nope"), InvalidArgument);
}

TEST_CASE("JSON field round trip") {
    const auto dir = testing::scratch_dir("json");
    const Grid2D g(0, 1, 0, 2, 4, 3);
    const GridField a = testing::sample(g, [](double x, double y) { return x - y / 3; }, "a");
    const std::vector<NamedField> fs{{"a", &a}};
    write_field_json((dir / "f.json").string(), fs);
    const auto back = read_field_json((dir / "f.json").string());
    REQUIRE(back.size() == 1);
    CHECK(back[0].name == "a");
    CHECK(back[0].values == a.values);
    CHECK(back[0].grid.nx == 4);
    CHECK(back[0].grid.y_max == 2.0);
}

TEST_CASE("legacy VTK structured grid") {
    const auto dir = testing::scratch_dir("vtk");
    const Grid2D g(1, 2, -1, 1, 3, 2);
    const GridField a = testing::sample(g, [](double x, double) { return x; }, "a");
    const GridField z(g, "z");
    const std::vector<NamedField> fs{{"a", &a}};
    const std::vector<NamedVector> vs{{"u", {&a, &z, &z}}};
    const std::string path = export_fields(dir.string(), "t", ExportFormat::Vtk, fs, vs, PointMap::Meridional);
    const std::string text = slurp(path);
    CHECK(text.rfind("# vtk DataFile Version 3.0", 0) == 0);
    CHECK(text.find("DATASET STRUCTURED_GRID") != std::string::npos);
    CHECK(text.find("DIMENSIONS 3 2 1") != std::string::npos);
    CHECK(text.find("POINTS 6 double") != std::string::npos);
    CHECK(text.find("POINT_DATA 6") != std::string::npos);
    CHECK(text.find("SCALARS a double") != std::string::npos);
    CHECK(text.find("VECTORS u double") != std::string::npos);
}

TEST_CASE("formats and rejections") {
    CHECK(parse_format("csv") == ExportFormat::Csv);
    CHECK(parse_format("vtk") == ExportFormat::Vtk);
    CHECK(parse_format("json") == ExportFormat::Json);
    CHECK(extension(ExportFormat::Vtk) == "vtk");
    CHECK_THROWS_AS(parse_format("hdf5"), InvalidArgument);
    const auto dir = testing::scratch_dir("reject");
    const GridField empty;
    const std::vector<NamedField> fs{{"e", &empty}};
    CHECK_THROWS_AS(write_csv((dir / "e.csv").string(), fs), InvalidArgument);
    const GridField a(Grid2D(0, 1, 0, 1, 3, 3), "a"), b(Grid2D(0, 1, 0, 1, 4, 3), "b");
    const std::vector<NamedField> mixed{{"a", &a}, {"b", &b}};
    CHECK_THROWS_AS(write_csv((dir / "m.csv").string(), mixed), InvalidArgument);
}

TEST_CASE("table CSV") {
    const auto dir = testing::scratch_dir("table");
    write_table_csv((dir / "t.csv").string(), {"x", "y"}, {{1.0, 2.0}, {0.1, 0.2}});
    const CsvTable t = read_csv((dir / "t.csv").string());
    CHECK(t.header == std::vector<std::string>{"x", "y"});
    CHECK(t.rows[1][1] == 0.2);
    CHECK_THROWS_AS(write_table_csv((dir / "u.csv").string(), {"x"}, {{1.0}, {2.0}}), InvalidArgument);
}

}
