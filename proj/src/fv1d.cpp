#include "movers/fv1d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace movers::fv1d {

void Grid1D::validate() const {
    if (n_cells < 4) throw ConfigError("Grid1D needs at least 4 cells");
    if (!(x_max > x_min)) throw ConfigError("Grid1D needs x_max > x_min");
}

Field1D::Field1D(const Grid1D& grid) : grid_(grid) {
    grid_.validate();
    cells_.assign(static_cast<std::size_t>(grid.n_cells + 2 * Grid1D::kGhost), State{});
}

void TimeControls::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
    if (!(t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
    if (max_steps < 0) throw ConfigError("max_steps must be >= 0");
}

void SolverOptions::validate() const {
    if (order != 1 && order != 2) throw ConfigError("order must be 1 or 2");
    gas.validate();
    sw.validate();
}

std::string_view to_string(RunStatus s) {
    switch (s) {
        case RunStatus::ReachedFinalTime:
            return "reached-final-time";
        case RunStatus::SteadyState:
            return "steady-state";
        case RunStatus::MaxSteps:
            return "max-steps";
        case RunStatus::PositivityFailure:
            return "positivity-failure";
    }
    return "unknown";
}

namespace {

State mirror(State U) {
    U[1] = -U[1];
    return U;
}

void fill_side(Field1D& f, const BoundaryCondition& bc, bool left, const GasModel& gas) {
    const int n = f.size();
    for (int k = 0; k < Grid1D::kGhost; ++k) {
        const int ghost = left ? -1 - k : n + k;
        const int inner = left ? k : n - 1 - k;
        const int nearest = left ? 0 : n - 1;
        std::visit(
            [&](const auto& b) {
                using T = std::decay_t<decltype(b)>;
                if constexpr (std::is_same_v<T, Transmissive>) {
                    f(ghost) = f(nearest);
                } else if constexpr (std::is_same_v<T, FixedInflow>) {
                    f(ghost) = primitive_to_conserved<1>(b.state, gas);
                } else if constexpr (std::is_same_v<T, Reflective>) {
                    f(ghost) = mirror(f(inner));
                } else {
                    f(ghost) = left ? f(n - 1 - k) : f(k);
                }
            },
            bc);
    }
}

double minmod2(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

void check_positive(const Field1D& field, const GasModel& gas) {
    for (int j = 0; j < field.size(); ++j) {
        const State& U = field(j);
        const Primitive w = detail::recover<1>(U, gas);
        if (!(w.rho > 0.0) || !(w.p > 0.0) || !std::isfinite(U[1]) || !std::isfinite(U[2])) {
            std::ostringstream msg;
            msg << "positivity lost in cell " << j << " at t=" << field.time << " (rho=" << w.rho << ", p=" << w.p
                << ")";
            throw PositivityError(msg.str(), j, std::nullopt, field.time, w.rho, w.p);
        }
    }
}

simd::KernelParams kernel_params(const SolverOptions& opt) {
    simd::KernelParams kp;
    kp.scheme = static_cast<simd::KernelScheme>(static_cast<int>(opt.scheme));
    kp.gamma = opt.gas.gamma;
    kp.eps0 = opt.sw.eps0;
    kp.delta0 = opt.sw.delta0;
    kp.scalar_limiter = opt.sw.limiter == LimiterMode::Scalar;
    kp.per_component_steady = opt.sw.steady_test == SteadyTest::PerComponent;
    return kp;
}

}  // namespace

void apply_bc(Field1D& field, const BoundaryPair& bc, const GasModel& gas) {
    const bool lp = std::holds_alternative<Periodic>(bc.left);
    const bool rp = std::holds_alternative<Periodic>(bc.right);
    if (lp != rp) throw ConfigError("periodic boundaries must be set on both sides");
    fill_side(field, bc.left, true, gas);
    fill_side(field, bc.right, false, gas);
}

InterfaceStates muscl_reconstruct(const Field1D& field, int order, const GasModel& gas) {
    const int n = field.size();
    InterfaceStates s;
    s.left.resize(static_cast<std::size_t>(n + 1));
    s.right.resize(static_cast<std::size_t>(n + 1));
    if (order == 1) {
        for (int f = 0; f <= n; ++f) {
            s.left[static_cast<std::size_t>(f)] = field(f - 1);
            s.right[static_cast<std::size_t>(f)] = field(f);
        }
        return s;
    }

    // primitive values and limited slopes for cells -1..n
    std::vector<Primitive> w(static_cast<std::size_t>(n + 4));
    for (int j = -2; j <= n + 1; ++j) w[static_cast<std::size_t>(j + 2)] = detail::recover<1>(field(j), gas);
    auto W = [&](int j) -> const Primitive& { return w[static_cast<std::size_t>(j + 2)]; };
    std::vector<Primitive> slope(static_cast<std::size_t>(n + 2));
    for (int j = -1; j <= n; ++j) {
        Primitive& d = slope[static_cast<std::size_t>(j + 1)];
        d.rho = minmod2(W(j).rho - W(j - 1).rho, W(j + 1).rho - W(j).rho);
        d.u = minmod2(W(j).u - W(j - 1).u, W(j + 1).u - W(j).u);
        d.p = minmod2(W(j).p - W(j - 1).p, W(j + 1).p - W(j).p);
    }
    auto S = [&](int j) -> const Primitive& { return slope[static_cast<std::size_t>(j + 1)]; };

    for (int f = 0; f <= n; ++f) {
        const Primitive& a = W(f - 1);
        const Primitive& b = W(f);
        const Primitive wl{a.rho + 0.5 * S(f - 1).rho, a.u + 0.5 * S(f - 1).u, a.p + 0.5 * S(f - 1).p};
        const Primitive wr{b.rho - 0.5 * S(f).rho, b.u - 0.5 * S(f).u, b.p - 0.5 * S(f).p};
        const auto k = static_cast<std::size_t>(f);
        if (wl.rho > 0.0 && wl.p > 0.0 && wr.rho > 0.0 && wr.p > 0.0) {
            s.left[k] = primitive_to_conserved<1>(wl, gas);
            s.right[k] = primitive_to_conserved<1>(wr, gas);
        } else {
            s.left[k] = field(f - 1);
            s.right[k] = field(f);
        }
    }
    return s;
}

Rhs compute_rhs(const Field1D& field, const SolverOptions& opt, Workspace& ws) {
    check_positive(field, opt.gas);
    const int n = field.size();
    const std::size_t total = static_cast<std::size_t>(n + 2 * Grid1D::kGhost);
    const std::size_t faces = static_cast<std::size_t>(n + 1);
    const auto& cells = field.storage();

    for (int c = 0; c < 3; ++c) {
        ws.soa[c].resize(total);
        ws.flux[c].resize(faces);
        for (std::size_t k = 0; k < total; ++k) ws.soa[c][k] = cells[k][static_cast<std::size_t>(c)];
    }

    // Face f uses storage cells f..f+3 as its stencil; its own states are f+1, f+2.
    simd::FaceBatch<1> batch;
    batch.count = faces;
    for (int c = 0; c < 3; ++c) {
        for (int k = 0; k < 4; ++k) batch.stencil[k][c] = ws.soa[c].data() + k;
        batch.flux[c] = ws.flux[c].data();
    }
    if (opt.order == 1) {
        for (int c = 0; c < 3; ++c) {
            batch.left[c] = ws.soa[c].data() + 1;
            batch.right[c] = ws.soa[c].data() + 2;
        }
    } else {
        const InterfaceStates st = muscl_reconstruct(field, opt.order, opt.gas);
        for (int c = 0; c < 3; ++c) {
            ws.left[c].resize(faces);
            ws.right[c].resize(faces);
            for (std::size_t f = 0; f < faces; ++f) {
                ws.left[c][f] = st.left[f][static_cast<std::size_t>(c)];
                ws.right[c][f] = st.right[f][static_cast<std::size_t>(c)];
            }
            batch.left[c] = ws.left[c].data();
            batch.right[c] = ws.right[c].data();
        }
    }
    simd::face_fluxes(batch, kernel_params(opt), opt.isa);

    Rhs rhs;
    rhs.face_flux.resize(faces);
    for (std::size_t f = 0; f < faces; ++f) {
        for (int c = 0; c < 3; ++c) rhs.face_flux[f][static_cast<std::size_t>(c)] = ws.flux[c][f];
    }
    const double dx = field.grid().dx();
    rhs.dudt.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const auto& fl = rhs.face_flux[static_cast<std::size_t>(j)];
        const auto& fr = rhs.face_flux[static_cast<std::size_t>(j + 1)];
        for (std::size_t c = 0; c < 3; ++c) rhs.dudt[static_cast<std::size_t>(j)][c] = -(fr[c] - fl[c]) / dx;
    }
    for (std::size_t c = 0; c < 3; ++c) rhs.boundary_outflow[c] = rhs.face_flux[faces - 1][c] - rhs.face_flux[0][c];
    for (const auto& f : rhs.face_flux) {
        for (std::size_t c = 0; c < 3; ++c) rhs.flux_magnitude[c] += std::abs(f[c]);
    }
    return rhs;
}

Rhs compute_rhs(const Field1D& field, const SolverOptions& opt) {
    Workspace ws;
    return compute_rhs(field, opt, ws);
}

double stable_dt(const Field1D& field, double cfl, const GasModel& gas, double t_final) {
    double smax = 0.0;
    for (int j = 0; j < field.size(); ++j) {
        const Primitive w = conserved_to_primitive<1>(field(j), gas);
        smax = std::max(smax, spectral_radius(w, gas));
    }
    double dt = cfl * field.grid().dx() / smax;
    if (field.time + dt > t_final) dt = t_final - field.time;
    return dt;
}

namespace {

struct Totals {
    double sum[3] = {0, 0, 0};
    double abs_sum[3] = {0, 0, 0};
};

Totals totals(const Field1D& f) {
    Totals t;
    const double dx = f.grid().dx();
    for (int j = 0; j < f.size(); ++j) {
        for (std::size_t c = 0; c < 3; ++c) {
            t.sum[c] += f(j)[c] * dx;
            t.abs_sum[c] += std::abs(f(j)[c]) * dx;
        }
    }
    return t;
}

void euler_update(Field1D& f, const Rhs& rhs, double dt) {
    for (int j = 0; j < f.size(); ++j) {
        for (std::size_t c = 0; c < 3; ++c) f(j)[c] += dt * rhs.dudt[static_cast<std::size_t>(j)][c];
    }
}

}  // namespace

StepReport step(Field1D& field, const BoundaryPair& bc, const SolverOptions& opt, double dt, Workspace& ws,
                const Rhs* rhs0) {
    const Totals before = totals(field);
    Flux<1> tally;
    Flux<1> churn;

    apply_bc(field, bc, opt.gas);
    Rhs owned;
    if (rhs0 == nullptr) {
        owned = compute_rhs(field, opt, ws);
        rhs0 = &owned;
    }

    if (opt.order == 1) {
        euler_update(field, *rhs0, dt);
        for (std::size_t c = 0; c < 3; ++c) {
            tally[c] = dt * rhs0->boundary_outflow[c];
            churn[c] = dt * rhs0->flux_magnitude[c];
        }
    } else {
        Field1D stage = field;
        euler_update(stage, *rhs0, dt);
        stage.time = field.time + dt;
        apply_bc(stage, bc, opt.gas);
        const Rhs rhs1 = compute_rhs(stage, opt, ws);
        for (int j = 0; j < field.size(); ++j) {
            for (std::size_t c = 0; c < 3; ++c) {
                const double u1 = stage(j)[c] + dt * rhs1.dudt[static_cast<std::size_t>(j)][c];
                field(j)[c] = 0.5 * field(j)[c] + 0.5 * u1;
            }
        }
        for (std::size_t c = 0; c < 3; ++c) {
            tally[c] = 0.5 * dt * (rhs0->boundary_outflow[c] + rhs1.boundary_outflow[c]);
            churn[c] = dt * (rhs0->flux_magnitude[c] + rhs1.flux_magnitude[c]);
        }
    }
    field.time += dt;
    ++field.step;
    apply_bc(field, bc, opt.gas);

    const Totals after = totals(field);
    StepReport rep;
    rep.dt = dt;
    for (std::size_t c = 0; c < 3; ++c) {
        const double defect = std::abs(after.sum[c] - (before.sum[c] - tally[c]));
        const double scale = before.abs_sum[c] + churn[c];
        if (scale > 0.0) rep.conservation_defect = std::max(rep.conservation_defect, defect / scale);
    }
    return rep;
}

HistoryRow measure(const Field1D& field, const GasModel& gas) {
    HistoryRow row;
    row.step = field.step;
    row.t = field.time;
    row.min_rho = std::numeric_limits<double>::infinity();
    row.min_p = std::numeric_limits<double>::infinity();
    const double dx = field.grid().dx();
    for (int j = 0; j < field.size(); ++j) {
        const State& U = field(j);
        const Primitive w = detail::recover<1>(U, gas);
        row.total_mass += U[0] * dx;
        row.total_momentum_x += U[1] * dx;
        row.total_energy += U[2] * dx;
        row.min_rho = std::min(row.min_rho, w.rho);
        row.min_p = std::min(row.min_p, w.p);
        if (w.rho > 0.0 && w.p > 0.0) row.total_entropy += entropy_density(w, gas) * dx;
    }
    return row;
}

RunResult run(Field1D field, const BoundaryPair& bc, const SolverOptions& opt, const TimeControls& tc) {
    opt.validate();
    tc.validate();
    RunResult result;
    Workspace ws;
    double last_dt = 0.0;
    try {
        while (true) {
            apply_bc(field, bc, opt.gas);
            const Rhs rhs = compute_rhs(field, opt, ws);
            HistoryRow row = measure(field, opt.gas);
            row.dt = last_dt;
            double sq = 0.0;
            for (const auto& d : rhs.dudt) sq += d[0] * d[0];
            row.residual = std::sqrt(sq / static_cast<double>(field.size()));
            result.history.push_back(row);

            if (tc.steady_residual_tol > 0.0 && row.residual < tc.steady_residual_tol) {
                result.status = RunStatus::SteadyState;
                break;
            }
            if (field.time >= tc.t_final) {
                result.status = RunStatus::ReachedFinalTime;
                break;
            }
            if (field.step >= tc.max_steps) {
                result.status = RunStatus::MaxSteps;
                break;
            }
            const double dt = stable_dt(field, tc.cfl, opt.gas, tc.t_final);
            const bool last = field.time + dt >= tc.t_final;
            const StepReport rep = step(field, bc, opt, dt, ws, &rhs);
            if (last) field.time = tc.t_final;
            last_dt = rep.dt;
            result.max_conservation_defect = std::max(result.max_conservation_defect, rep.conservation_defect);
        }
    } catch (const PositivityError& e) {
        result.status = RunStatus::PositivityFailure;
        result.failure = e.what();
    }
    result.field = std::move(field);
    return result;
}

}  // namespace movers::fv1d
