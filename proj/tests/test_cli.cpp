#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "movers/cli.hpp"

using namespace movers;
using namespace movers::cli;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = execute(parse_args(args), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("run arguments fill a config") {
    const Command c = parse_args({"run", "--case", "steady-contact", "--scheme", "movers-le", "--nx", "100"});
    const auto* r = std::get_if<RunCommand>(&c);
    REQUIRE(r != nullptr);
    CHECK(r->config.case_name == "steady-contact");
    CHECK(r->config.scheme == SchemeId::MoversLE);
    CHECK(r->config.order == 1);
    CHECK(r->config.nx == 100);
    CHECK_FALSE(r->config.ny.has_value());
    CHECK_FALSE(r->config.cfl.has_value());
    CHECK(r->config.sw.eps0 == 1e-8);
    CHECK(r->config.sw.delta0 == 1e-6);
    CHECK(r->config.out_dir.empty());
}

TEST_CASE("every flag is parsed") {
    const Command c = parse_args({"run", "--case", "slip-flow", "--scheme", "llf", "--order", "2", "--nx", "20",
                                  "--ny", "30", "--cfl", "0.3", "--tfinal", "0.5", "--max-steps", "7", "--eps0",
                                  "1e-7", "--delta0", "1e-5", "--isa", "scalar", "--out", "/tmp/x"});
    const auto& cfg = std::get<RunCommand>(c).config;
    CHECK(cfg.scheme == SchemeId::Llf);
    CHECK(cfg.order == 2);
    CHECK(cfg.ny == 30);
    CHECK(cfg.cfl == 0.3);
    CHECK(cfg.t_final == 0.5);
    CHECK(cfg.max_steps == 7);
    CHECK(cfg.sw.eps0 == 1e-7);
    CHECK(cfg.sw.delta0 == 1e-5);
    CHECK(cfg.isa == simd::Isa::Scalar);
    CHECK(cfg.out_dir == "/tmp/x");
}

TEST_CASE("usage errors exit with 2") {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"run", "--case", "steady-contact", "--scheme", "bogus"},
             {"run", "--scheme", "bogus"},
             {"run", "--case", "nope"},
             {"run", "--case", "steady-contact", "--order", "3"},
             {"run", "--case", "steady-contact", "--eps0", "0"},
             {"run", "--case", "steady-contact", "--nx", "-5"},
             {"sweep", "--case", "steady-contact", "--grids", "10,abc"},
             {"frobnicate"},
             {}}) {
        const Outcome o = invoke(args);
        INFO(args.size());
        CHECK(o.code == kExitUsage);
        CHECK_FALSE(o.err.empty());
    }
}

TEST_CASE("help exits with 0") {
    const Outcome o = invoke({"run", "--help"});
    CHECK(o.code == kExitOk);
    CHECK(o.out.find("--case") != std::string::npos);
}

TEST_CASE("list prints the 13 cases") {
    const Outcome o = invoke({"list"});
    CHECK(o.code == kExitOk);
    std::istringstream in(o.out);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) ++n;
    CHECK(n == 13);
    CHECK(o.out.find("shock-diffraction") != std::string::npos);
}

TEST_CASE("a completed run exits with 0 and writes outputs") {
    const auto dir = std::filesystem::temp_directory_path() / ("movers_cli_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    const Outcome o = invoke({"run", "--case", "steady-contact", "--out", dir.string()});
    CHECK(o.code == kExitOk);
    CHECK(o.out.find("reached-final-time") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "line.csv"));
    CHECK(std::filesystem::exists(dir / "summary.json"));
    CHECK(std::filesystem::exists(dir / "history.csv"));
}

TEST_CASE("a positivity failure exits with 1") {
    const Outcome o = invoke({"run", "--case", "strong-shock", "--scheme", "movers-n"});
    CHECK(o.code == kExitRunFailure);
    CHECK(o.err.find("positivity") != std::string::npos);
}

TEST_CASE("sweep tabulates errors per grid") {
    const Command c = parse_args({"sweep", "--case", "sod-modified-sonic", "--grids", "50,100,40x20"});
    const auto& s = std::get<SweepCommand>(c);
    REQUIRE(s.grids.size() == 3);
    CHECK(s.grids[2].nx == 40);
    CHECK(s.grids[2].ny == 20);

    const Outcome o = invoke({"sweep", "--case", "sod-modified-sonic", "--grids", "50,100"});
    CHECK(o.code == kExitOk);
    std::istringstream in(o.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "nx,ny,l1_rho,ratio");
    std::getline(in, line);
    CHECK(line.rfind("50,,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("100,,", 0) == 0);
}

}  // TEST_SUITE
