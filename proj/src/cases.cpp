#include "movers/cases.hpp"

#include <algorithm>
#include <chrono>
#include <charconv>
#include <cmath>
#include <numbers>

namespace movers::cases {

namespace {

double parse_number(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ConfigError("bad number in contour hint: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

ContourHint parse_contour_hint(std::string_view caption, std::string variable) {
    const auto c1 = caption.find(':');
    const auto c2 = caption.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
    if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
        throw ConfigError("contour hint needs three ':'-separated numbers");
    }
    const double a = parse_number(caption.substr(0, c1));
    const double b = parse_number(caption.substr(c1 + 1, c2 - c1 - 1));
    const double c = parse_number(caption.substr(c2 + 1));
    ContourHint h;
    h.caption = std::string(caption);
    h.variable = std::move(variable);
    h.start = a;
    if (b < c) {
        h.step = b;
        h.end = c;
    } else {
        h.end = b;
        h.step = c;
    }
    if (!(h.step > 0.0) || !(h.end > h.start)) throw ConfigError("contour hint needs start < end and step > 0");
    return h;
}

int contour_level_count(const ContourHint& h) {
    return static_cast<int>(std::floor((h.end - h.start) / h.step + 1e-9)) + 1;
}

namespace {

using fv1d::BoundaryPair;
using fv1d::Transmissive;
using fv2d::BoundarySet;
using fv2d::Extrapolation;
using fv2d::SlipWall;

CaseSpec riemann_case(std::string name, std::string description, Primitive left, Primitive right, double x0,
                      double t_final) {
    CaseSpec c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.dimension = 1;
    c.default_nx = 100;
    c.cfl = 0.8;
    c.t_final = t_final;
    c.riemann = RiemannSetup{left, right, x0};
    c.ic1 = [left, right, x0](double x) { return x < x0 ? left : right; };
    c.bc1 = BoundaryPair{Transmissive{}, Transmissive{}};
    return c;
}

CaseSpec two_d_case(std::string name, std::string description, int nx, int ny) {
    CaseSpec c;
    c.name = std::move(name);
    c.description = std::move(description);
    c.dimension = 2;
    c.default_nx = nx;
    c.default_ny = ny;
    c.cfl = 0.4;
    return c;
}

std::vector<CaseSpec> build_registry() {
    std::vector<CaseSpec> r;
    const GasModel gas{};

    r.push_back(riemann_case("steady-contact", "stationary contact discontinuity", Primitive{1.0, 0.0, 1.0},
                             Primitive{1.4, 0.0, 1.0}, 0.5, 2.0));
    {
        const auto pair = riemann::steady_shock_pair(2.0, 1.0, 1.0, gas);
        r.push_back(riemann_case("steady-shock", "stationary Mach 2 normal shock", pair[0], pair[1], 0.5, 2.0));
    }
    r.push_back(riemann_case("sod-modified-sonic", "modified Sod problem with a sonic point in the rarefaction",
                             Primitive{1.0, 0.75, 1.0}, Primitive{0.125, 0.0, 0.1}, 0.3, 0.2));
    r.push_back(riemann_case("strong-shock", "strong shock (shock Mach number about 198)", Primitive{1.0, 0.0, 1000.0},
                             Primitive{1.0, 0.0, 0.01}, 0.5, 0.012));
    r.push_back(riemann_case("strong-discontinuities", "collision of two strong shocks",
                             Primitive{5.99924, 19.5975, 460.894}, Primitive{5.99242, -6.19633, 46.0950}, 0.4, 0.035));
    r.push_back(riemann_case("slow-contact", "slowly moving contact behind a strong shock",
                             Primitive{1.0, -19.59745, 1000.0}, Primitive{1.0, -19.59745, 0.01}, 0.8, 0.012));

    {
        CaseSpec c = two_d_case("slip-flow", "grid-aligned slip line between Mach 3 and Mach 2 streams", 40, 40);
        c.t_final = 1.0;
        c.reference_grids = {{40, 40}};
        auto ic = [](double, double y) { return Primitive{1.4, y > 0.5 ? 3.0 : 2.0, 0.0, 1.0}; };
        c.ic2 = ic;
        c.grid2 = [](int nx, int ny) { return fv2d::make_cartesian({0.0, 1.0, 0.0, 1.0, nx, ny}); };
        c.bc2 = BoundarySet{fv2d::FixedInflow{ic}, Extrapolation{}, Extrapolation{}, Extrapolation{}};
        c.contour = parse_contour_hint("2.0:0.05:3.0", "mach");
        r.push_back(std::move(c));
    }
    {
        CaseSpec c = two_d_case("oblique-reflection", "oblique shock reflecting from a flat wall", 240, 80);
        c.steady = true;
        c.steady_rel_tol = 1e-6;
        c.max_steps = 200'000;
        c.reference_grids = {{60, 20}, {120, 40}, {240, 80}};
        const Primitive inflow{1.0, 2.9, 0.0, 1.0 / 1.4};
        const Primitive post{1.69997, 2.61934, -0.50633, 1.52819};
        c.ic2 = [inflow](double, double) { return inflow; };
        c.grid2 = [](int nx, int ny) { return fv2d::make_cartesian({0.0, 4.0, 0.0, 1.0, nx, ny}); };
        c.bc2 = BoundarySet{fv2d::uniform_inflow(inflow), Extrapolation{}, SlipWall{}, fv2d::uniform_inflow(post)};
        c.contour = parse_contour_hint("0.7:0.1:2.9", "p");
        r.push_back(std::move(c));
    }
    {
        CaseSpec c = two_d_case("ramp-channel", "Mach 2 channel flow over a 15 degree ramp", 240, 80);
        c.steady = true;
        c.steady_rel_tol = 1e-6;
        c.max_steps = 200'000;
        c.reference_grids = {{60, 20}, {120, 40}, {240, 80}};
        const Primitive inflow{1.4, 2.0, 0.0, 1.0};
        c.ic2 = [inflow](double, double) { return inflow; };
        c.grid2 = [](int nx, int ny) {
            fv2d::RampParams p;
            p.ni = nx;
            p.nj = ny;
            return fv2d::make_ramp(p);
        };
        c.bc2 = BoundarySet{fv2d::uniform_inflow(inflow), Extrapolation{}, SlipWall{}, SlipWall{}};
        c.contour = parse_contour_hint("0.7:0.1:2.9", "p");
        r.push_back(std::move(c));
    }
    for (double mach : {6.0, 20.0}) {
        const std::string name = mach == 6.0 ? "half-cylinder-m6" : "half-cylinder-m20";
        CaseSpec c = two_d_case(name, "hypersonic flow past a half cylinder", 45, 45);
        c.steady = true;
        c.steady_rel_tol = 1e-6;
        c.max_steps = 200'000;
        c.reference_grids = {{45, 45}};
        const Primitive free{1.4, mach, 0.0, 1.0};
        c.ic2 = [free](double, double) { return free; };
        c.grid2 = [](int nx, int ny) {
            fv2d::PolarParams p;
            p.ni = nx;
            p.nj = ny;
            return fv2d::make_polar(p);
        };
        // i = 0 is the cylinder, i = ni the outer boundary, j = 0 / nj the outlets
        c.bc2 = BoundarySet{SlipWall{}, fv2d::uniform_inflow(free), Extrapolation{}, Extrapolation{}};
        c.contour = parse_contour_hint("2.0:0.2:5.0", "rho");
        r.push_back(std::move(c));
    }
    {
        CaseSpec c = two_d_case("forward-step", "Mach 3 wind tunnel with a forward-facing step", 240, 80);
        c.t_final = 4.0;
        c.reference_grids = {{240, 80}};
        const Primitive inflow{1.4, 3.0, 0.0, 1.0};
        c.ic2 = [inflow](double, double) { return inflow; };
        c.grid2 = [](int nx, int ny) {
            fv2d::StepParams p;
            p.box = {0.0, 3.0, 0.0, 1.0, nx, ny};
            return fv2d::make_step(p);
        };
        c.bc2 = BoundarySet{fv2d::uniform_inflow(inflow), Extrapolation{}, SlipWall{}, SlipWall{}};
        c.contour = parse_contour_hint("1.0:6.5:0.15", "rho");
        r.push_back(std::move(c));
    }
    {
        CaseSpec c = two_d_case("shock-diffraction", "Mach 5.09 shock diffracting around a backward corner", 400, 400);
        c.t_final = 0.1561;
        c.reference_grids = {{400, 400}};
        const Primitive ahead{1.4, 0.0, 0.0, 1.0};
        const Primitive behind = riemann::moving_shock_state(5.09, ahead, gas);
        c.ic2 = [ahead, behind](double x, double) { return x < 0.05 ? behind : ahead; };
        c.grid2 = [](int nx, int ny) {
            fv2d::StepParams p;
            p.box = {0.0, 1.0, 0.0, 1.0, nx, ny};
            p.block_x_min = 0.0;
            p.block_x_max = 0.05;
            p.block_y_min = 0.0;
            p.block_y_max = 0.5;
            return fv2d::make_step(p);
        };
        c.bc2 = BoundarySet{fv2d::uniform_inflow(behind), Extrapolation{}, Extrapolation{}, SlipWall{}};
        c.contour = parse_contour_hint("0.5:7.0:0.25", "rho");
        r.push_back(std::move(c));
    }
    return r;
}

}  // namespace

const std::vector<CaseSpec>& registry() {
    static const std::vector<CaseSpec> r = build_registry();
    return r;
}

std::vector<std::string> case_names() {
    std::vector<std::string> names;
    for (const auto& c : registry()) names.push_back(c.name);
    return names;
}

const CaseSpec& find_case(std::string_view name) {
    for (const auto& c : registry()) {
        if (c.name == name) return c;
    }
    throw UnknownCaseError(std::string(name));
}

bool CaseRun::ok() const {
    if (result1) return result1->ok();
    if (result2) return result2->ok();
    return false;
}

const std::vector<fv1d::HistoryRow>& CaseRun::history() const {
    static const std::vector<fv1d::HistoryRow> empty;
    if (result1) return result1->history;
    if (result2) return result2->history;
    return empty;
}

fv1d::Field1D initial_field_1d(const CaseSpec& spec, int nx) {
    fv1d::Grid1D grid{spec.x_min, spec.x_max, nx};
    fv1d::Field1D f(grid);
    const GasModel gas{};
    for (int j = 0; j < nx; ++j) {
        const Primitive w = spec.ic1(grid.center(j));
        require_valid(w);
        f(j) = primitive_to_conserved<1>(w, gas);
    }
    fv1d::apply_bc(f, spec.bc1, gas);
    return f;
}

fv2d::Field2D initial_field_2d(const CaseSpec& spec, const fv2d::StructuredGrid2D& grid) {
    fv2d::Field2D f(grid);
    fv2d::initialize(f, grid, spec.ic2, GasModel{});
    return f;
}

CaseRun run_case(const CaseSpec& spec, const RunOverrides& ov) {
    CaseRun run;
    run.spec = &spec;
    run.overrides = ov;
    run.cfl = ov.cfl.value_or(spec.cfl);
    run.t_final = ov.t_final.value_or(spec.t_final);
    const auto start = std::chrono::steady_clock::now();

    if (spec.dimension == 1) {
        run.nx = ov.nx.value_or(spec.default_nx);
        fv1d::SolverOptions opt;
        opt.scheme = ov.scheme;
        opt.order = ov.order;
        opt.sw = ov.sw;
        if (ov.isa) opt.isa = *ov.isa;
        fv1d::TimeControls tc;
        tc.cfl = run.cfl;
        tc.t_final = run.t_final;
        tc.max_steps = ov.max_steps.value_or(spec.max_steps);
        run.initial1 = initial_field_1d(spec, run.nx);
        run.result1 = fv1d::run(*run.initial1, spec.bc1, opt, tc);
        if (spec.riemann) run.oracle = riemann::exact_riemann(spec.riemann->left, spec.riemann->right, opt.gas);
    } else {
        run.nx = ov.nx.value_or(spec.default_nx);
        run.ny = ov.ny.value_or(spec.default_ny);
        run.grid2 = std::make_shared<fv2d::StructuredGrid2D>(spec.grid2(run.nx, run.ny));
        fv2d::SolverOptions opt;
        opt.scheme = ov.scheme;
        opt.order = ov.order;
        opt.sw = ov.sw;
        if (ov.isa) opt.isa = *ov.isa;
        fv2d::Solver2D solver(*run.grid2, spec.bc2, opt);
        fv2d::TimeControls tc;
        tc.cfl = run.cfl;
        tc.steady = spec.steady && !ov.t_final.has_value();
        tc.t_final = run.t_final;
        tc.steady_rel_tol = spec.steady_rel_tol;
        tc.max_steps = ov.max_steps.value_or(spec.max_steps);
        run.initial2 = initial_field_2d(spec, *run.grid2);
        run.result2 = fv2d::run_2d(*run.initial2, solver, tc);
    }
    run.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

FanCheck fan_check(const fv1d::Field1D& field, const riemann::RiemannSolution& oracle, double t, double x0,
                   const GasModel& gas) {
    FanCheck fc;
    if (oracle.left_wave != riemann::WaveKind::Rarefaction) return fc;
    const double head = x0 + oracle.left_head * t;
    const double tail = x0 + oracle.left_tail * t;
    const auto& grid = field.grid();
    std::vector<double> rho;
    for (int j = 0; j < field.size(); ++j) {
        const double x = grid.center(j);
        if (x > head && x < tail) rho.push_back(conserved_to_primitive<1>(field(j), gas).rho);
    }
    fc.cells = static_cast<int>(rho.size());
    fc.total_drop = oracle.left.rho - oracle.rho_star_left;
    for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
        const double d = rho[k + 1] - rho[k];
        fc.max_rise = std::max(fc.max_rise, d);
        fc.max_drop = std::max(fc.max_drop, -d);
    }
    fc.allowed_drop = fc.cells > 0 ? 2.5 * fc.total_drop / fc.cells : 0.0;
    fc.monotone = fc.cells >= 2 && fc.max_rise <= 1e-12;
    fc.no_expansion_shock = fc.cells >= 2 && fc.max_drop < fc.allowed_drop;
    return fc;
}

double mirror_asymmetry(const fv2d::Field2D& field, const fv2d::StructuredGrid2D& grid) {
    double scale = 0.0;
    double diff = 0.0;
    const int nj = grid.nj();
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < grid.ni(); ++i) {
            const fv2d::State& a = field(i, j);
            fv2d::State b = field(i, nj - 1 - j);
            b[2] = -b[2];
            for (std::size_t c = 0; c < 4; ++c) {
                scale = std::max(scale, std::abs(a[c]));
                diff = std::max(diff, std::abs(a[c] - b[c]));
            }
        }
    }
    return scale > 0.0 ? diff / scale : 0.0;
}

Diagnostics diagnostics(const CaseRun& run) {
    Diagnostics d;
    d.wall_seconds = run.wall_seconds;
    const auto& hist = run.history();
    d.completed = run.ok();
    d.min_rho = std::numeric_limits<double>::infinity();
    d.min_p = std::numeric_limits<double>::infinity();
    for (const auto& row : hist) {
        d.min_rho = std::min(d.min_rho, row.min_rho);
        d.min_p = std::min(d.min_p, row.min_p);
    }
    d.min_entropy_increment = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < hist.size(); ++k) {
        d.min_entropy_increment = std::min(d.min_entropy_increment, hist[k].total_entropy - hist[k - 1].total_entropy);
    }
    if (hist.size() < 2) d.min_entropy_increment = 0.0;
    if (!hist.empty()) {
        d.residual_first = hist.front().residual;
        d.residual_last = hist.back().residual;
        if (d.residual_first > 0.0 && d.residual_last > 0.0) {
            d.residual_drop_orders = std::log10(d.residual_first / d.residual_last);
        } else if (d.residual_first > 0.0) {
            d.residual_drop_orders = std::numeric_limits<double>::infinity();
        }
    }

    if (run.result1) {
        const auto& r = *run.result1;
        d.status = std::string(fv1d::to_string(r.status));
        d.steps = r.field.step;
        d.final_time = r.field.time;
        d.max_conservation_defect = r.max_conservation_defect;
        for (int j = 0; j < r.field.size(); ++j) {
            for (std::size_t c = 0; c < 3; ++c) {
                d.stationarity = std::max(d.stationarity, std::abs(r.field(j)[c] - (*run.initial1)(j)[c]));
            }
        }
        if (run.oracle && r.ok() && r.field.time > 0.0) {
            d.l1 = riemann::l1_error(r.field, *run.oracle, r.field.time, run.spec->riemann->x0);
            if (run.spec->name == "sod-modified-sonic") {
                d.fan = fan_check(r.field, *run.oracle, r.field.time, run.spec->riemann->x0);
            }
        }
    } else if (run.result2) {
        const auto& r = *run.result2;
        d.status = std::string(fv1d::to_string(r.status));
        d.steps = r.field.step;
        d.final_time = r.field.time;
        d.max_conservation_defect = r.max_conservation_defect;
        const auto& g = *run.grid2;
        for (int j = 0; j < g.nj(); ++j) {
            for (int i = 0; i < g.ni(); ++i) {
                if (g.blanked(i, j)) continue;
                for (std::size_t c = 0; c < 4; ++c) {
                    d.stationarity = std::max(d.stationarity, std::abs(r.field(i, j)[c] - (*run.initial2)(i, j)[c]));
                }
            }
        }
        if (g.kind() == fv2d::GridKind::Polar) d.mirror_asymmetry = mirror_asymmetry(r.field, g);
    }
    return d;
}

}  // namespace movers::cases
