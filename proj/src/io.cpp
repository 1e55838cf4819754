#include "movers/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace movers::io {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_line_csv(const fv1d::Field1D& field, const std::filesystem::path& path, const GasModel& gas) {
    auto out = open_out(path);
    out << kLineHeader << '\n';
    for (int j = 0; j < field.size(); ++j) {
        const Primitive w = conserved_to_primitive<1>(field(j), gas);
        out << fmt(field.grid().center(j)) << ',' << fmt(w.rho) << ',' << fmt(w.u) << ',' << fmt(w.p) << ','
            << fmt(specific_internal_energy(w, gas)) << ',' << fmt(mach_number(w, gas)) << ','
            << fmt(specific_entropy(w, gas)) << '\n';
    }
    close_checked(out, path);
}

void write_oracle_csv(const riemann::RiemannSolution& oracle, double x_min, double x_max, double x0, double t,
                      const std::filesystem::path& path, int samples) {
    if (samples < 2) throw ConfigError("oracle sampling needs at least two points");
    if (!(t > 0.0)) throw ConfigError("oracle sampling needs t > 0");
    auto out = open_out(path);
    out << kOracleHeader << '\n';
    for (int k = 0; k < samples; ++k) {
        const double x = x_min + (x_max - x_min) * k / (samples - 1);
        const Primitive w = oracle.sample((x - x0) / t);
        out << fmt(x) << ',' << fmt(w.rho) << ',' << fmt(w.u) << ',' << fmt(w.p) << '\n';
    }
    close_checked(out, path);
}

void write_field_csv(const fv2d::Field2D& field, const fv2d::StructuredGrid2D& grid, const FieldMeta& meta,
                     const std::filesystem::path& path, const GasModel& gas) {
    auto out = open_out(path);
    out << kFieldHeader << '\n';
    for (int j = 0; j < grid.nj(); ++j) {
        for (int i = 0; i < grid.ni(); ++i) {
            if (grid.blanked(i, j)) continue;
            const Primitive w = conserved_to_primitive<2>(field(i, j), gas);
            const fv2d::Vec2& c = grid.centroid(i, j);
            out << i << ',' << j << ',' << fmt(c.x) << ',' << fmt(c.y) << ',' << fmt(w.rho) << ',' << fmt(w.u) << ','
                << fmt(w.v) << ',' << fmt(w.p) << ',' << fmt(mach_number(w, gas)) << '\n';
        }
    }
    close_checked(out, path);

    std::filesystem::path meta_path = path;
    meta_path.replace_extension(".meta");
    auto m = open_out(meta_path);
    m << "case=" << meta.case_name << '\n';
    m << "scheme=" << meta.scheme << '\n';
    m << "order=" << meta.order << '\n';
    m << "grid_kind=" << fv2d::to_string(grid.kind()) << '\n';
    m << "ni=" << grid.ni() << '\n';
    m << "nj=" << grid.nj() << '\n';
    m << "fluid_cells=" << grid.fluid_cell_count() << '\n';
    m << "time=" << fmt(meta.time) << '\n';
    m << "steps=" << meta.steps << '\n';
    if (meta.contour) {
        m << "contour_hint=" << meta.contour->caption << '\n';
        m << "contour_variable=" << meta.contour->variable << '\n';
        m << "contour_start=" << fmt(meta.contour->start) << '\n';
        m << "contour_end=" << fmt(meta.contour->end) << '\n';
        m << "contour_step=" << fmt(meta.contour->step) << '\n';
        m << "contour_levels=" << cases::contour_level_count(*meta.contour) << '\n';
    }
    close_checked(m, meta_path);
}

std::map<std::string, std::string> read_meta(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

void write_history(const std::vector<fv1d::HistoryRow>& history, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << kHistoryHeader << '\n';
    for (const auto& h : history) {
        out << h.step << ',' << fmt(h.t) << ',' << fmt(h.dt) << ',' << fmt(h.residual) << ',' << fmt(h.total_mass)
            << ',' << fmt(h.total_momentum_x) << ',' << fmt(h.total_energy) << ',' << fmt(h.total_entropy) << ','
            << fmt(h.min_rho) << ',' << fmt(h.min_p) << '\n';
    }
    close_checked(out, path);
}

std::string summary_json(const cases::CaseRun& run, const cases::Diagnostics& d) {
    using nlohmann::json;
    json j;
    j["case"] = run.spec->name;
    j["dimension"] = run.spec->dimension;
    j["scheme"] = std::string(to_string(run.overrides.scheme));
    j["order"] = run.overrides.order;
    j["nx"] = run.nx;
    if (run.spec->dimension == 2) j["ny"] = run.ny;
    j["cfl"] = run.cfl;
    j["t_final"] = run.t_final;
    j["steady"] = run.spec->dimension == 2 && run.spec->steady && !run.overrides.t_final;
    j["eps0"] = run.overrides.sw.eps0;
    j["delta0"] = run.overrides.sw.delta0;
    j["isa"] = simd::isa_name(run.overrides.isa.value_or(simd::active_isa()));

    json r;
    r["status"] = d.status;
    r["completed"] = d.completed;
    r["steps"] = d.steps;
    r["final_time"] = d.final_time;
    r["min_rho"] = d.min_rho;
    r["min_p"] = d.min_p;
    r["stationarity"] = d.stationarity;
    r["max_conservation_defect"] = d.max_conservation_defect;
    r["min_entropy_increment"] = d.min_entropy_increment;
    r["residual_first"] = d.residual_first;
    r["residual_last"] = d.residual_last;
    r["residual_drop_orders"] = d.residual_drop_orders;
    r["wall_seconds"] = d.wall_seconds;
    if (d.l1) r["l1_error"] = {{"rho", d.l1->rho}, {"u", d.l1->u}, {"p", d.l1->p}};
    if (d.fan) {
        r["fan_check"] = {{"cells", d.fan->cells},
                          {"max_rise", d.fan->max_rise},
                          {"max_drop", d.fan->max_drop},
                          {"total_drop", d.fan->total_drop},
                          {"allowed_drop", d.fan->allowed_drop},
                          {"monotone", d.fan->monotone},
                          {"no_expansion_shock", d.fan->no_expansion_shock}};
    }
    if (d.mirror_asymmetry) r["mirror_asymmetry"] = *d.mirror_asymmetry;
    if (run.result1 && run.result1->failure) r["failure"] = *run.result1->failure;
    if (run.result2 && run.result2->failure) r["failure"] = *run.result2->failure;
    j["result"] = r;
    if (run.spec->contour) {
        const auto& c = *run.spec->contour;
        j["contour"] = {{"caption", c.caption}, {"variable", c.variable}, {"start", c.start},
                        {"end", c.end},         {"step", c.step},         {"levels", cases::contour_level_count(c)}};
    }
    return j.dump(2) + "\n";
}

void write_run(const cases::CaseRun& run, const cases::Diagnostics& d, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const GasModel gas{};
    if (run.result1) {
        write_line_csv(run.result1->field, dir / "line.csv", gas);
        if (run.oracle && run.spec->riemann && run.result1->field.time > 0.0) {
            write_oracle_csv(*run.oracle, run.spec->x_min, run.spec->x_max, run.spec->riemann->x0,
                             run.result1->field.time, dir / "oracle.csv");
        }
    }
    if (run.result2) {
        FieldMeta meta;
        meta.case_name = run.spec->name;
        meta.scheme = std::string(to_string(run.overrides.scheme));
        meta.order = run.overrides.order;
        meta.time = run.result2->field.time;
        meta.steps = run.result2->field.step;
        meta.contour = run.spec->contour;
        write_field_csv(run.result2->field, *run.grid2, meta, dir / "field.csv", gas);
    }
    write_history(run.history(), dir / "history.csv");
    auto out = open_out(dir / "summary.json");
    out << summary_json(run, d);
    close_checked(out, dir / "summary.json");
}

}  // namespace movers::io
