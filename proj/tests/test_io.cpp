#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "json.hpp"
#include "movers/io.hpp"

using namespace movers;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("movers_io_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p, std::string& header) {
    std::ifstream in(p);
    std::getline(in, header);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
        rows.push_back(cols);
    }
    return rows;
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("fmt round-trips doubles") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(io::fmt(x)) == x);
}

TEST_CASE("line.csv of the steady contact") {
    const auto run = cases::run_case("steady-contact");
    const fs::path dir = scratch("line");
    io::write_line_csv(run.result1->field, dir / "line.csv");
    std::string header;
    const auto rows = read_csv(dir / "line.csv", header);
    CHECK(header == io::kLineHeader);
    REQUIRE(rows.size() == 100);
    std::set<std::string> rho;
    for (const auto& r : rows) {
        REQUIRE(r.size() == 7);
        rho.insert(r[1]);
    }
    CHECK(rho == std::set<std::string>{"1", "1.3999999999999999"});
    const std::string text = slurp(dir / "line.csv");
    CHECK(text.back() == '\n');
}

TEST_CASE("line.csv of a uniform field differs only in x") {
    fv1d::Field1D f(fv1d::Grid1D{0.0, 1.0, 10});
    for (int j = 0; j < 10; ++j) f(j) = primitive_to_conserved<1>({1.2, 0.3, 0.9}, GasModel{});
    const fs::path dir = scratch("uniform");
    io::write_line_csv(f, dir / "line.csv");
    std::string header;
    const auto rows = read_csv(dir / "line.csv", header);
    for (const auto& r : rows) {
        for (std::size_t c = 1; c < r.size(); ++c) CHECK(r[c] == rows[0][c]);
    }
}

TEST_CASE("outputs are byte-for-byte reproducible") {
    cases::RunOverrides o;
    o.order = 2;
    const fs::path a = scratch("rep_a");
    const fs::path b = scratch("rep_b");
    for (const auto& dir : {a, b}) {
        const auto run = cases::run_case("sod-modified-sonic", o);
        io::write_run(run, cases::diagnostics(run), dir);
    }
    for (const char* f : {"line.csv", "oracle.csv", "history.csv"}) CHECK(slurp(a / f) == slurp(b / f));

    cases::RunOverrides o2;
    o2.max_steps = 30;
    for (const auto& dir : {a, b}) {
        const auto run = cases::run_case("oblique-reflection", o2);
        io::write_run(run, cases::diagnostics(run), dir);
    }
    CHECK(slurp(a / "field.csv") == slurp(b / "field.csv"));
    CHECK(slurp(a / "field.meta") == slurp(b / "field.meta"));
}

TEST_CASE("slip-flow field and metadata") {
    cases::RunOverrides o;
    o.max_steps = 100;
    const auto run = cases::run_case("slip-flow", o);
    const fs::path dir = scratch("slip");
    io::write_run(run, cases::diagnostics(run), dir);
    std::string header;
    const auto rows = read_csv(dir / "field.csv", header);
    CHECK(header == io::kFieldHeader);
    CHECK(rows.size() == 1600);
    for (const auto& r : rows) {
        const double m = std::stod(r[8]);
        CHECK((std::abs(m - 2.0) < 1e-12 || std::abs(m - 3.0) < 1e-12));
    }
    const auto meta = io::read_meta(dir / "field.meta");
    CHECK(meta.at("case") == "slip-flow");
    CHECK(meta.at("scheme") == "movers-le");
    CHECK(meta.at("ni") == "40");
    CHECK(meta.at("nj") == "40");
    CHECK(meta.at("contour_hint") == "2.0:0.05:3.0");
    CHECK(meta.at("contour_variable") == "mach");
    CHECK(meta.at("contour_start") == "2");
    CHECK(meta.at("contour_end") == "3");
    CHECK(meta.at("contour_step") == "0.050000000000000003");
    CHECK(meta.at("contour_levels") == "21");
    CHECK(meta.at("steps") == "100");

    const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
    CHECK(j["case"] == "slip-flow");
    CHECK(j["result"]["completed"] == true);
    CHECK(j["result"]["steps"] == 100);
    CHECK(j["contour"]["levels"] == 21);
}

TEST_CASE("blanked cells are absent from field.csv") {
    cases::RunOverrides o;
    o.nx = 60;
    o.ny = 20;
    o.max_steps = 2;
    const auto run = cases::run_case("forward-step", o);
    const fs::path dir = scratch("step");
    io::write_run(run, cases::diagnostics(run), dir);
    std::string header;
    const auto rows = read_csv(dir / "field.csv", header);
    CHECK(static_cast<int>(rows.size()) == run.grid2->fluid_cell_count());
    for (const auto& r : rows) CHECK_FALSE(run.grid2->blanked(std::stoi(r[0]), std::stoi(r[1])));
    CHECK(io::read_meta(dir / "field.meta").at("fluid_cells") == std::to_string(rows.size()));
    CHECK(io::read_meta(dir / "field.meta").at("contour_levels") == "37");
}

TEST_CASE("history.csv columns") {
    const auto run = cases::run_case("sod-modified-sonic");
    const fs::path dir = scratch("hist");
    io::write_history(run.history(), dir / "history.csv");
    std::string header;
    const auto rows = read_csv(dir / "history.csv", header);
    CHECK(header == io::kHistoryHeader);
    REQUIRE(rows.size() == run.history().size());
    double prev = -INFINITY;
    for (const auto& r : rows) {
        REQUIRE(r.size() == 10);
        const double s = std::stod(r[7]);
        CHECK(s >= prev - 1e-10);
        prev = s;
    }
}

TEST_CASE("oracle.csv samples") {
    const auto s = riemann::exact_riemann({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1});
    const fs::path dir = scratch("oracle");
    io::write_oracle_csv(s, 0.0, 1.0, 0.5, 0.2, dir / "oracle.csv", 11);
    std::string header;
    const auto rows = read_csv(dir / "oracle.csv", header);
    CHECK(header == io::kOracleHeader);
    REQUIRE(rows.size() == 11);
    CHECK(rows.front()[1] == "1");
    CHECK(rows.back()[1] == "0.125");
    CHECK_THROWS_AS(io::write_oracle_csv(s, 0.0, 1.0, 0.5, 0.0, dir / "x.csv"), ConfigError);
}

TEST_CASE("unwritable path is an error") {
    fv1d::Field1D f(fv1d::Grid1D{0.0, 1.0, 4});
    for (int j = 0; j < 4; ++j) f(j) = primitive_to_conserved<1>({1.0, 0.0, 1.0}, GasModel{});
    const fs::path file = scratch("blocker");
    fs::create_directories(file.parent_path());
    std::ofstream(file) << "x";
    CHECK_THROWS(io::write_line_csv(f, file / "line.csv"));
}

}  // TEST_SUITE
