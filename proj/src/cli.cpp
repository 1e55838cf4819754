#include "movers/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "movers/io.hpp"

namespace movers::cli {
namespace {

struct RawRun {
    std::string case_name;
    std::string scheme = "movers-le";
    int order = 1;
    std::optional<int> nx;
    std::optional<int> ny;
    std::optional<double> cfl;
    std::optional<double> t_final;
    std::optional<long> max_steps;
    double eps0 = SwitchParams{}.eps0;
    double delta0 = SwitchParams{}.delta0;
    std::string isa;
    std::string out_dir;
};

void add_run_flags(CLI::App& app, RawRun& r) {
    app.add_option("--case", r.case_name, "case name (see `list`)")->required();
    app.add_option("--scheme", r.scheme, "llf, movers-n, movers-e, movers-l or movers-le")->capture_default_str();
    app.add_option("--order", r.order, "spatial order")->check(CLI::IsMember({1, 2}))->capture_default_str();
    app.add_option("--nx", r.nx, "cells in x (or i)")->check(CLI::PositiveNumber);
    app.add_option("--ny", r.ny, "cells in y (or j), 2D only")->check(CLI::PositiveNumber);
    app.add_option("--cfl", r.cfl, "CFL number")->check(CLI::PositiveNumber);
    app.add_option("--tfinal", r.t_final, "final time; for steady 2D cases runs to this time instead")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-steps", r.max_steps, "step budget")->check(CLI::PositiveNumber);
    app.add_option("--eps0", r.eps0, "relative threshold of the jump-condition tests")->capture_default_str();
    app.add_option("--delta0", r.delta0, "relative threshold of the limiter guard")->capture_default_str();
    app.add_option("--isa", r.isa, "face kernel: scalar or avx2 (default: best available)")
        ->check(CLI::IsMember({"scalar", "avx2"}));
    app.add_option("--out", r.out_dir, "output directory");
}

RunConfig to_config(const RawRun& r) {
    RunConfig c;
    c.case_name = r.case_name;
    cases::find_case(c.case_name);
    const auto scheme = parse_scheme(r.scheme);
    if (!scheme) throw ConfigError("unknown scheme: " + r.scheme);
    c.scheme = *scheme;
    c.order = r.order;
    c.nx = r.nx;
    c.ny = r.ny;
    c.cfl = r.cfl;
    c.t_final = r.t_final;
    c.max_steps = r.max_steps;
    c.sw.eps0 = r.eps0;
    c.sw.delta0 = r.delta0;
    c.sw.validate();
    if (r.isa == "scalar") c.isa = simd::Isa::Scalar;
    if (r.isa == "avx2") {
        if (!simd::isa_available(simd::Isa::Avx2)) throw ConfigError("avx2 kernel not available on this machine");
        c.isa = simd::Isa::Avx2;
    }
    c.out_dir = r.out_dir;
    return c;
}

std::vector<GridSize> parse_grids(const std::string& text) {
    std::vector<GridSize> grids;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto x = item.find('x');
        try {
            std::size_t used = 0;
            if (x == std::string::npos) {
                const int n = std::stoi(item, &used);
                if (used != item.size() || n <= 0) throw ConfigError("");
                grids.push_back({n, std::nullopt});
            } else {
                const std::string a = item.substr(0, x);
                const std::string b = item.substr(x + 1);
                std::size_t ua = 0;
                std::size_t ub = 0;
                const int n = std::stoi(a, &ua);
                const int m = std::stoi(b, &ub);
                if (ua != a.size() || ub != b.size() || n <= 0 || m <= 0) throw ConfigError("");
                grids.push_back({n, m});
            }
        } catch (const std::exception&) {
            throw ConfigError("bad grid entry '" + item + "' (expected N or NxM)");
        }
    }
    if (grids.empty()) throw ConfigError("--grids needs at least one entry");
    return grids;
}

std::string line(const char* f, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

int run_one(const RunConfig& cfg, std::ostream& out, std::ostream& err, cases::Diagnostics* diag_out = nullptr) {
    const cases::CaseRun run = cases::run_case(cfg.case_name, cfg.overrides());
    const cases::Diagnostics d = cases::diagnostics(run);
    if (diag_out) *diag_out = d;
    if (!cfg.out_dir.empty()) io::write_run(run, d, cfg.out_dir);

    out << cfg.case_name << ' ' << to_string(cfg.scheme) << " order " << cfg.order << ": " << d.status << " after "
        << d.steps << " steps, t=" << io::fmt(d.final_time) << '\n';
    out << line("  min rho %.6g  min p %.6g\n", d.min_rho, d.min_p);
    if (d.l1) out << line("  L1 rho %.6e  L1 p %.6e\n", d.l1->rho, d.l1->p);
    if (run.spec->dimension == 2 && run.spec->steady) {
        out << line("  residual %.3e -> %.3e\n", d.residual_first, d.residual_last);
    }
    if (d.mirror_asymmetry) out << "  mirror asymmetry " << io::fmt(*d.mirror_asymmetry) << '\n';
    out << line("  conservation defect %.3e  wall %.2fs\n", d.max_conservation_defect, d.wall_seconds);
    if (!d.completed) {
        if (run.result1 && run.result1->failure) err << *run.result1->failure << '\n';
        if (run.result2 && run.result2->failure) err << *run.result2->failure << '\n';
        return kExitRunFailure;
    }
    return kExitOk;
}

}  // namespace

cases::RunOverrides RunConfig::overrides() const {
    cases::RunOverrides o;
    o.scheme = scheme;
    o.order = order;
    o.nx = nx;
    o.ny = ny;
    o.cfl = cfl;
    o.t_final = t_final;
    o.max_steps = max_steps;
    o.sw = sw;
    o.isa = isa;
    return o;
}

Command parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Finite-volume Euler solver with the MOVERS family of central schemes", "movers"};
    app.require_subcommand(1);
    CLI::App* list = app.add_subcommand("list", "print the registered cases");
    RawRun run_raw;
    CLI::App* run = app.add_subcommand("run", "run one case");
    add_run_flags(*run, run_raw);
    RawRun sweep_raw;
    std::string grids = "100,200,400";
    CLI::App* sweep = app.add_subcommand("sweep", "run one case over several grids and tabulate the L1 errors");
    add_run_flags(*sweep, sweep_raw);
    sweep->add_option("--grids", grids, "comma-separated N or NxM entries")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (list->parsed()) return ListCommand{};
        if (run->parsed()) return RunCommand{to_config(run_raw)};
        if (sweep->parsed()) {
            SweepCommand s{to_config(sweep_raw), {}};
            s.grids = parse_grids(grids);
            return s;
        }
    } catch (const CLI::Success&) {
        std::ostringstream o;
        o << app.help();
        for (CLI::App* sub : {list, run, sweep}) {
            if (sub->parsed()) {
                o.str("");
                o << sub->help();
            }
        }
        return ParseExit{kExitOk, o.str()};
    } catch (const CLI::Error& e) {
        return ParseExit{kExitUsage, e.what()};
    } catch (const ConfigError& e) {
        return ParseExit{kExitUsage, e.what()};
    }
    return ParseExit{kExitUsage, "no subcommand given"};
}

int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (const auto* p = std::get_if<ParseExit>(&cmd)) {
            (p->code == kExitOk ? out : err) << p->message << (p->message.empty() ? "" : "\n");
            return p->code;
        }
        if (std::holds_alternative<ListCommand>(cmd)) {
            for (const auto& c : cases::registry()) out << c.name << '\n';
            return kExitOk;
        }
        if (const auto* r = std::get_if<RunCommand>(&cmd)) return run_one(r->config, out, err);

        const auto& s = std::get<SweepCommand>(cmd);
        int status = kExitOk;
        double prev = 0.0;
        out << "nx,ny,l1_rho,ratio\n";
        for (const GridSize& g : s.grids) {
            RunConfig cfg = s.config;
            cfg.nx = g.nx;
            std::string tag = std::to_string(g.nx);
            if (g.ny) {
                cfg.ny = g.ny;
                tag += "x" + std::to_string(*g.ny);
            }
            if (!s.config.out_dir.empty()) cfg.out_dir = s.config.out_dir + "/" + tag;
            std::ostringstream detail;
            cases::Diagnostics d;
            const int rc = run_one(cfg, detail, err, &d);
            status = std::max(status, rc);
            const double l1 = d.l1 ? d.l1->rho : std::nan("");
            out << *cfg.nx << ',' << (cfg.ny ? std::to_string(*cfg.ny) : std::string()) << ',' << io::fmt(l1) << ','
                << (prev > 0.0 ? io::fmt(prev / l1) : std::string()) << '\n';
            prev = l1;
        }
        return status;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRunFailure;
    }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
    return execute(parse_args(args), out, err);
}

}  // namespace movers::cli
