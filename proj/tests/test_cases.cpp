#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "movers/cases.hpp"
#include "support.hpp"

using namespace movers;
using namespace movers::cases;
using testing_support::kPropertySamples;

TEST_SUITE("cases") {

TEST_CASE("registry holds exactly the benchmark cases") {
    const std::vector<std::string> expected = {
        "steady-contact", "steady-shock",     "sod-modified-sonic", "strong-shock",      "strong-discontinuities",
        "slow-contact",   "slip-flow",        "oblique-reflection", "ramp-channel",      "half-cylinder-m6",
        "half-cylinder-m20", "forward-step",  "shock-diffraction"};
    CHECK(case_names() == expected);
    const std::set<std::string> unique(expected.begin(), expected.end());
    CHECK(unique.size() == registry().size());
}

TEST_CASE("lookups") {
    const CaseSpec& c = find_case("steady-contact");
    REQUIRE(c.riemann.has_value());
    CHECK(c.riemann->left.rho == 1.0);
    CHECK(c.riemann->left.u == 0.0);
    CHECK(c.riemann->left.p == 1.0);
    CHECK(c.riemann->right.rho == 1.4);
    CHECK(c.riemann->right.p == 1.0);
    CHECK(c.riemann->x0 == 0.5);
    CHECK(c.t_final == 2.0);
    CHECK(c.default_nx == 100);

    const CaseSpec& o = find_case("oblique-reflection");
    const Primitive in = o.ic2(0.1, 0.1);
    CHECK(in.rho == 1.0);
    CHECK(in.u == 2.9);
    CHECK(in.v == 0.0);
    CHECK(in.p == doctest::Approx(1.0 / 1.4).epsilon(1e-15));
    const auto* top = std::get_if<fv2d::FixedInflow>(&o.bc2.top);
    REQUIRE(top != nullptr);
    const Primitive t = top->state(1.0, 1.0);
    CHECK(t.rho == 1.69997);
    CHECK(t.u == 2.61934);
    CHECK(t.v == -0.50633);
    CHECK(t.p == 1.52819);
    CHECK(o.reference_grids == std::vector<std::pair<int, int>>{{60, 20}, {120, 40}, {240, 80}});
    CHECK(o.steady);

    CHECK_THROWS_AS(find_case("unknown"), UnknownCaseError);
    CHECK_THROWS_AS(find_case("unknown"), ConfigError);
}

TEST_CASE("1D defaults") {
    const auto& s = find_case("sod-modified-sonic");
    CHECK(s.riemann->left.u == 0.75);
    CHECK(s.riemann->x0 == 0.3);
    CHECK(s.t_final == 0.2);
    const auto& ss = find_case("strong-shock");
    CHECK(ss.riemann->left.p == 1000.0);
    CHECK(ss.riemann->right.p == 0.01);
    CHECK(ss.t_final == 0.012);
    const auto& sd = find_case("strong-discontinuities");
    CHECK(sd.riemann->x0 == 0.4);
    CHECK(sd.t_final == 0.035);
    const auto& sc = find_case("slow-contact");
    CHECK(sc.riemann->x0 == 0.8);
    CHECK(sc.riemann->left.u == -19.59745);
}

TEST_CASE("every initial condition is a valid state") {
    testing_support::StateGen gen(71);
    for (const CaseSpec& c : registry()) {
        int bad = 0;
        for (int k = 0; k < kPropertySamples; ++k) {
            Primitive w;
            if (c.dimension == 1) {
                w = c.ic1(gen.uniform(c.x_min, c.x_max));
            } else {
                w = c.ic2(gen.uniform(-4.0, 4.0), gen.uniform(-4.0, 4.0));
            }
            if (!(w.rho > 0.0 && w.p > 0.0 && std::isfinite(w.u) && std::isfinite(w.v))) ++bad;
        }
        INFO(c.name);
        CHECK(bad == 0);
    }
}

TEST_CASE("steady-shock initial jump has continuous flux") {
    const auto& c = find_case("steady-shock");
    const GasModel gas;
    const auto FL = physical_flux<1>(primitive_to_conserved<1>(c.riemann->left, gas), gas);
    const auto FR = physical_flux<1>(primitive_to_conserved<1>(c.riemann->right, gas), gas);
    for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(FL[k] - FR[k]) < 1e-12 * std::max(1.0, std::abs(FL[k])));
    CHECK(mach_number(c.riemann->left, gas) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("contour hints and level counts") {
    const auto slip = find_case("slip-flow").contour;
    REQUIRE(slip.has_value());
    CHECK(slip->caption == "2.0:0.05:3.0");
    CHECK(slip->variable == "mach");
    CHECK(contour_level_count(*slip) == 21);
    CHECK(contour_level_count(*find_case("oblique-reflection").contour) == 23);
    const auto diff = *find_case("shock-diffraction").contour;
    CHECK(diff.start == 0.5);
    CHECK(diff.end == 7.0);
    CHECK(diff.step == 0.25);
    CHECK(contour_level_count(diff) == 27);
    const auto step = *find_case("forward-step").contour;
    CHECK(step.end == 6.5);
    CHECK(step.step == 0.15);
    const auto cyl = *find_case("half-cylinder-m20").contour;
    CHECK(contour_level_count(cyl) == 16);
    CHECK_THROWS_AS(parse_contour_hint("1:2", "rho"), ConfigError);
    CHECK_THROWS_AS(parse_contour_hint("1:x:2", "rho"), ConfigError);
    CHECK_THROWS_AS(parse_contour_hint("3:1:0.5", "rho"), ConfigError);
}

TEST_CASE("every 2D case builds a grid with positive areas") {
    for (const CaseSpec& c : registry()) {
        if (c.dimension != 2) continue;
        const auto g = c.grid2(c.default_nx / 4, std::max(4, c.default_ny / 4));
        for (int j = 0; j < g.nj(); ++j) {
            for (int i = 0; i < g.ni(); ++i) CHECK(g.area(i, j) > 0.0);
        }
    }
}

TEST_CASE("diagnostics examples") {
    RunOverrides o;
    const auto contact = diagnostics(run_case("steady-contact", o));
    CHECK(contact.completed);
    CHECK(contact.stationarity <= 1e-12);
    CHECK(contact.final_time == 2.0);

    const auto sod = diagnostics(run_case("sod-modified-sonic", o));
    REQUIRE(sod.fan.has_value());
    CHECK(sod.fan->cells >= 2);
    CHECK(sod.fan->monotone);
    CHECK(sod.fan->no_expansion_shock);
    CHECK(sod.min_entropy_increment >= -1e-10);

    o.scheme = SchemeId::Llf;
    const auto strong = diagnostics(run_case("strong-shock", o));
    CHECK(strong.completed);
    CHECK(strong.min_rho > 0.0);
    CHECK(strong.min_p > 0.0);
}

TEST_CASE("overrides replace the case defaults") {
    RunOverrides o;
    o.nx = 37;
    o.cfl = 0.5;
    o.t_final = 0.01;
    const auto run = run_case("sod-modified-sonic", o);
    CHECK(run.nx == 37);
    CHECK(run.cfl == 0.5);
    CHECK(run.result1->field.size() == 37);
    CHECK(run.result1->field.time == 0.01);
}

}  // TEST_SUITE
