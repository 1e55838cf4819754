#include "movers/fv2d.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <type_traits>

namespace movers::fv2d {

FixedInflow uniform_inflow(const Primitive& w) {
    require_valid(w);
    return FixedInflow{[w](double, double) { return w; }};
}

Field2D::Field2D(const StructuredGrid2D& grid) : ni_(grid.ni()), nj_(grid.nj()) {
    cells_.assign(static_cast<std::size_t>((ni_ + 2 * kGhost) * (nj_ + 2 * kGhost)), State{});
}

void initialize(Field2D& field, const StructuredGrid2D& grid, const std::function<Primitive(double, double)>& ic,
                const GasModel& gas) {
    for (int j = 0; j < grid.nj(); ++j) {
        for (int i = 0; i < grid.ni(); ++i) {
            const Vec2& c = grid.centroid(i, j);
            const Primitive w = ic(c.x, c.y);
            require_valid(w);
            field(i, j) = primitive_to_conserved<2>(w, gas);
        }
    }
    // keep ghosts and corners valid so that no stale zero state is ever read
    for (int j = -kGhost; j < grid.nj() + kGhost; ++j) {
        for (int i = -kGhost; i < grid.ni() + kGhost; ++i) {
            if (i >= 0 && i < grid.ni() && j >= 0 && j < grid.nj()) continue;
            const int ci = std::clamp(i, 0, grid.ni() - 1);
            const int cj = std::clamp(j, 0, grid.nj() - 1);
            field(i, j) = field(ci, cj);
        }
    }
}

void SolverOptions::validate() const {
    if (order != 1 && order != 2) throw ConfigError("order must be 1 or 2");
    gas.validate();
    sw.validate();
}

void TimeControls::validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
    if (!steady && !(t_final >= 0.0)) throw ConfigError("t_final must be >= 0");
    if (steady && !(steady_rel_tol > 0.0 && steady_rel_tol < 1.0)) {
        throw ConfigError("steady_rel_tol must lie in (0, 1)");
    }
    if (max_steps < 0) throw ConfigError("max_steps must be >= 0");
}

Flux<2> face_flux(const State& UL, const State& UR, Normal n, SchemeId scheme, const GasModel& gas,
                  const SwitchParams& sw, const Stencil<2>* stencil) {
    return numerical_flux<2>(scheme, UL, UR, stencil, gas, n, sw);
}

namespace {

State wall_mirror(State U, Normal n) {
    const double mn = U[1] * n.nx + U[2] * n.ny;
    U[1] -= 2.0 * mn * n.nx;
    U[2] -= 2.0 * mn * n.ny;
    return U;
}

double minmod2(double a, double b) {
    if (a > 0.0 && b > 0.0) return std::min(a, b);
    if (a < 0.0 && b < 0.0) return std::max(a, b);
    return 0.0;
}

Primitive minmod_slope(const Primitive& a, const Primitive& b, const Primitive& c) {
    return Primitive{minmod2(b.rho - a.rho, c.rho - b.rho), minmod2(b.u - a.u, c.u - b.u),
                     minmod2(b.v - a.v, c.v - b.v), minmod2(b.p - a.p, c.p - b.p)};
}

Primitive plus_half(const Primitive& w, const Primitive& d, double sign) {
    return Primitive{w.rho + sign * 0.5 * d.rho, w.u + sign * 0.5 * d.u, w.v + sign * 0.5 * d.v,
                     w.p + sign * 0.5 * d.p};
}

bool positive(const Primitive& w) { return w.rho > 0.0 && w.p > 0.0; }

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

Solver2D::Solver2D(const StructuredGrid2D& grid, BoundarySet bc, SolverOptions opt)
    : grid_(&grid), bc_(std::move(bc)), opt_(opt) {
    opt_.validate();
    for (const BC2D* side : {&bc_.left, &bc_.right, &bc_.bottom, &bc_.top}) {
        if (const auto* in = std::get_if<FixedInflow>(side); in != nullptr && !in->state) {
            throw ConfigError("fixed inflow boundary without a state");
        }
    }
    build_faces();
}

void Solver2D::build_faces() {
    const StructuredGrid2D& g = *grid_;
    const int ni = g.ni();
    const int nj = g.nj();
    Field2D shape(g);
    cell_faces_.assign(static_cast<std::size_t>(ni * nj), std::array<int, 4>{-1, -1, -1, -1});
    faces_.clear();

    auto in_domain = [&](int i, int j) { return i >= 0 && i < ni && j >= 0 && j < nj; };
    auto usable = [&](int i, int j) { return !in_domain(i, j) || !g.blanked(i, j); };

    // dir 0: i-faces between (i-1, j) and (i, j); dir 1: j-faces between (i, j-1) and (i, j)
    for (int dir = 0; dir < 2; ++dir) {
        const int fi_max = dir == 0 ? ni : ni - 1;
        const int fj_max = dir == 0 ? nj - 1 : nj;
        for (int j = 0; j <= fj_max; ++j) {
            for (int i = 0; i <= fi_max; ++i) {
                const int di = dir == 0 ? 1 : 0;
                const int dj = dir == 0 ? 0 : 1;
                const int li = i - di, lj = j - dj;
                const bool l_in = in_domain(li, lj);
                const bool r_in = in_domain(i, j);
                const bool l_fluid = g.fluid(li, lj);
                const bool r_fluid = g.fluid(i, j);

                Face f;
                f.dir = static_cast<std::uint8_t>(dir);
                const FaceGeometry& geo = dir == 0 ? g.i_face(i, j) : g.j_face(i, j);
                f.n = geo.n;
                f.length = geo.length;
                f.left = shape.index(li, lj);
                f.right = shape.index(i, j);

                if (l_in && r_in) {
                    if (l_fluid && r_fluid) {
                        f.out_sign = 0;
                    } else if (l_fluid) {
                        f.wall = 1;
                        f.out_sign = 1;
                        f.right = f.left;
                    } else if (r_fluid) {
                        f.wall = 2;
                        f.out_sign = -1;
                        f.left = f.right;
                    } else {
                        continue;
                    }
                } else if (r_in) {
                    if (!r_fluid) continue;
                    f.out_sign = -1;
                } else {
                    if (!l_fluid) continue;
                    f.out_sign = 1;
                }

                bool full = f.wall == 0;
                for (int k = 0; k < 4; ++k) {
                    const int si = i + (k - 2) * di;
                    const int sj = j + (k - 2) * dj;
                    f.stencil[k] = shape.index(si, sj);
                    if (!usable(si, sj)) full = false;
                }
                f.full_stencil = full ? 1 : 0;

                const int id = static_cast<int>(faces_.size());
                faces_.push_back(f);
                if (l_fluid) cell_faces_[static_cast<std::size_t>(li + lj * ni)][2 * dir + 1] = id;
                if (r_fluid) cell_faces_[static_cast<std::size_t>(i + j * ni)][2 * dir] = id;
            }
        }
    }
}

void Solver2D::apply_bc(Field2D& field) const {
    const StructuredGrid2D& g = *grid_;
    const int ni = g.ni();
    const int nj = g.nj();
    const GasModel& gas = opt_.gas;

    // side 0 left, 1 right, 2 bottom, 3 top
    auto fill = [&](const BC2D& bc, int side) {
        const int count = side < 2 ? nj : ni;
        for (int r = 0; r < count; ++r) {
            const FaceGeometry& geo = side == 0   ? g.i_face(0, r)
                                      : side == 1 ? g.i_face(ni, r)
                                      : side == 2 ? g.j_face(r, 0)
                                                  : g.j_face(r, nj);
            for (int k = 0; k < kGhost; ++k) {
                int gi, gj, ii, ij, ni0, nj0;
                switch (side) {
                    case 0:
                        gi = -1 - k, gj = r, ii = k, ij = r, ni0 = 0, nj0 = r;
                        break;
                    case 1:
                        gi = ni + k, gj = r, ii = ni - 1 - k, ij = r, ni0 = ni - 1, nj0 = r;
                        break;
                    case 2:
                        gi = r, gj = -1 - k, ii = r, ij = k, ni0 = r, nj0 = 0;
                        break;
                    default:
                        gi = r, gj = nj + k, ii = r, ij = nj - 1 - k, ni0 = r, nj0 = nj - 1;
                        break;
                }
                std::visit(
                    [&](const auto& b) {
                        using T = std::decay_t<decltype(b)>;
                        if constexpr (std::is_same_v<T, FixedInflow>) {
                            field(gi, gj) = primitive_to_conserved<2>(b.state(geo.midpoint.x, geo.midpoint.y), gas);
                        } else if constexpr (std::is_same_v<T, Extrapolation>) {
                            field(gi, gj) = field(ni0, nj0);
                        } else {
                            field(gi, gj) = wall_mirror(field(ii, ij), geo.n);
                        }
                    },
                    bc);
            }
        }
    };
    fill(bc_.left, 0);
    fill(bc_.right, 1);
    fill(bc_.bottom, 2);
    fill(bc_.top, 3);
}

void Solver2D::check_positive(const Field2D& field) const {
    const StructuredGrid2D& g = *grid_;
    for (int j = 0; j < g.nj(); ++j) {
        for (int i = 0; i < g.ni(); ++i) {
            if (g.blanked(i, j)) continue;
            const State& U = field(i, j);
            const Primitive w = detail::recover<2>(U, opt_.gas);
            if (!(w.rho > 0.0) || !(w.p > 0.0) || !std::isfinite(U[1]) || !std::isfinite(U[2]) ||
                !std::isfinite(U[3])) {
                std::ostringstream msg;
                msg << "positivity lost in cell (" << i << ", " << j << ") at t=" << field.time << " (rho=" << w.rho
                    << ", p=" << w.p << ")";
                throw PositivityError(msg.str(), i, j, field.time, w.rho, w.p);
            }
        }
    }
}

void Solver2D::fill_primitives(const Field2D& field) {
    const auto& cells = field.storage();
    prim_.resize(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
        const State& U = cells[k];
        prim_[k] = U[0] > 0.0 ? detail::recover<2>(U, opt_.gas) : Primitive{1.0, 0.0, 0.0, 1.0};
    }
}

void Solver2D::reconstruct(const Field2D& field) {
    const StructuredGrid2D& g = *grid_;
    const int ni = g.ni();
    const int nj = g.nj();
    const std::size_t nf = faces_.size();
    recon_left_.resize(nf);
    recon_right_.resize(nf);
    const auto& cells = field.storage();

    if (opt_.order == 1) {
        for (std::size_t k = 0; k < nf; ++k) {
            recon_left_[k] = cells[faces_[k].left];
            recon_right_[k] = cells[faces_[k].right];
        }
        return;
    }

    fill_primitives(field);
    const std::size_t total = cells.size();
    slope_i_.assign(total, Primitive{0.0, 0.0, 0.0, 0.0});
    slope_j_.assign(total, Primitive{0.0, 0.0, 0.0, 0.0});
    auto blocked = [&](int i, int j) { return i >= 0 && i < ni && j >= 0 && j < nj && g.blanked(i, j); };
    const int stride = field.stride();
    for (int j = 0; j < nj; ++j) {
        for (int i = -1; i <= ni; ++i) {
            if (blocked(i - 1, j) || blocked(i, j) || blocked(i + 1, j)) continue;
            const std::size_t c = field.index(i, j);
            slope_i_[c] = minmod_slope(prim_[c - 1], prim_[c], prim_[c + 1]);
        }
    }
    for (int j = -1; j <= nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            if (blocked(i, j - 1) || blocked(i, j) || blocked(i, j + 1)) continue;
            const std::size_t c = field.index(i, j);
            const auto s = static_cast<std::size_t>(stride);
            slope_j_[c] = minmod_slope(prim_[c - s], prim_[c], prim_[c + s]);
        }
    }

    for (std::size_t k = 0; k < nf; ++k) {
        const Face& f = faces_[k];
        const auto& slope = f.dir == 0 ? slope_i_ : slope_j_;
        const Primitive wl = plus_half(prim_[f.left], slope[f.left], 1.0);
        const Primitive wr = plus_half(prim_[f.right], slope[f.right], -1.0);
        if (f.wall == 1) {
            recon_left_[k] = positive(wl) ? primitive_to_conserved<2>(wl, opt_.gas) : cells[f.left];
            recon_right_[k] = recon_left_[k];
        } else if (f.wall == 2) {
            recon_right_[k] = positive(wr) ? primitive_to_conserved<2>(wr, opt_.gas) : cells[f.right];
            recon_left_[k] = recon_right_[k];
        } else if (positive(wl) && positive(wr)) {
            recon_left_[k] = primitive_to_conserved<2>(wl, opt_.gas);
            recon_right_[k] = primitive_to_conserved<2>(wr, opt_.gas);
        } else {
            recon_left_[k] = cells[f.left];
            recon_right_[k] = cells[f.right];
        }
    }
}

void Solver2D::face_fluxes(const Field2D& field) {
    const std::size_t nf = faces_.size();
    const auto& cells = field.storage();
    const bool limited = uses_limiter(opt_.scheme);
    for (int c = 0; c < 4; ++c) {
        left_[c].resize(nf);
        right_[c].resize(nf);
        flux_[c].resize(nf);
        for (int k = 0; k < 4; ++k) st_[k][c].resize(limited ? nf : 1);
    }
    full_.resize(nf);

    for (std::size_t k = 0; k < nf; ++k) {
        const Face& f = faces_[k];
        const State l = to_face_frame(recon_left_[k], f.n);
        State r = to_face_frame(recon_right_[k], f.n);
        if (f.wall == 1) {
            r = l;
            r[1] = -l[1];
        } else if (f.wall == 2) {
            State mirrored = r;
            mirrored[1] = -r[1];
            for (std::size_t c = 0; c < 4; ++c) left_[c][k] = mirrored[c];
        }
        for (std::size_t c = 0; c < 4; ++c) {
            if (f.wall != 2) left_[c][k] = l[c];
            right_[c][k] = r[c];
        }
        full_[k] = f.full_stencil;
        if (limited) {
            for (int s = 0; s < 4; ++s) {
                const State q = f.full_stencil ? to_face_frame(cells[f.stencil[s]], f.n) : l;
                for (std::size_t c = 0; c < 4; ++c) st_[s][c][k] = q[c];
            }
        }
    }

    simd::FaceBatch<2> batch;
    batch.count = nf;
    for (int c = 0; c < 4; ++c) {
        batch.left[c] = left_[c].data();
        batch.right[c] = right_[c].data();
        batch.flux[c] = flux_[c].data();
        for (int s = 0; s < 4; ++s) batch.stencil[s][c] = st_[s][c].data();
    }
    batch.full_stencil = full_.data();
    if (!limited) {
        // stencils are never read; point them at valid memory with stride-free access
        for (int c = 0; c < 4; ++c) {
            for (int s = 0; s < 4; ++s) batch.stencil[s][c] = left_[c].data();
        }
    }
    simd::face_fluxes(batch, kernel_params(opt_), opt_.isa);

    face_flux_.resize(nf);
    for (std::size_t k = 0; k < nf; ++k) {
        Flux<2> q;
        for (std::size_t c = 0; c < 4; ++c) q[c] = flux_[c][k];
        q = from_face_frame(q, faces_[k].n);
        for (std::size_t c = 0; c < 4; ++c) q[c] *= faces_[k].length;
        face_flux_[k] = q;
    }
}

Rhs2D Solver2D::compute_rhs(const Field2D& field) {
    check_positive(field);
    reconstruct(field);
    face_fluxes(field);

    const StructuredGrid2D& g = *grid_;
    const int ni = g.ni();
    const int nj = g.nj();
    Rhs2D rhs;
    rhs.dudt.assign(static_cast<std::size_t>(ni * nj), State{});
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            if (g.blanked(i, j)) continue;
            const auto& cf = cell_faces_[static_cast<std::size_t>(i + j * ni)];
            const Flux<2>& fi0 = face_flux_[static_cast<std::size_t>(cf[0])];
            const Flux<2>& fi1 = face_flux_[static_cast<std::size_t>(cf[1])];
            const Flux<2>& fj0 = face_flux_[static_cast<std::size_t>(cf[2])];
            const Flux<2>& fj1 = face_flux_[static_cast<std::size_t>(cf[3])];
            const double area = g.area(i, j);
            State& d = rhs.dudt[static_cast<std::size_t>(i + j * ni)];
            for (std::size_t c = 0; c < 4; ++c) d[c] = -((fi1[c] - fi0[c]) + (fj1[c] - fj0[c])) / area;
        }
    }
    for (std::size_t k = 0; k < faces_.size(); ++k) {
        const int s = faces_[k].out_sign;
        if (s == 0) continue;
        for (std::size_t c = 0; c < 4; ++c) rhs.boundary_outflow[c] += s * face_flux_[k][c];
    }
    for (const auto& f : face_flux_) {
        for (std::size_t c = 0; c < 4; ++c) rhs.flux_magnitude[c] += std::abs(f[c]);
    }
    return rhs;
}

double Solver2D::stable_dt(const Field2D& field, double cfl, double t_final) const {
    const StructuredGrid2D& g = *grid_;
    double dt = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.nj(); ++j) {
        for (int i = 0; i < g.ni(); ++i) {
            if (g.blanked(i, j)) continue;
            const Primitive w = conserved_to_primitive<2>(field(i, j), opt_.gas);
            const double a = sound_speed(w, opt_.gas);
            const FaceGeometry* fs[4] = {&g.i_face(i, j), &g.i_face(i + 1, j), &g.j_face(i, j), &g.j_face(i, j + 1)};
            double sum = 0.0;
            for (const FaceGeometry* f : fs) sum += (std::abs(w.u * f->n.nx + w.v * f->n.ny) + a) * f->length;
            dt = std::min(dt, g.area(i, j) / sum);
        }
    }
    dt *= cfl;
    if (field.time + dt > t_final) dt = t_final - field.time;
    return dt;
}

namespace {

struct Totals {
    double sum[4] = {0, 0, 0, 0};
    double abs_sum[4] = {0, 0, 0, 0};
};

Totals totals(const Field2D& f, const StructuredGrid2D& g) {
    Totals t;
    for (int j = 0; j < g.nj(); ++j) {
        for (int i = 0; i < g.ni(); ++i) {
            if (g.blanked(i, j)) continue;
            const double a = g.area(i, j);
            for (std::size_t c = 0; c < 4; ++c) {
                t.sum[c] += f(i, j)[c] * a;
                t.abs_sum[c] += std::abs(f(i, j)[c]) * a;
            }
        }
    }
    return t;
}

void euler_update(Field2D& f, const StructuredGrid2D& g, const Rhs2D& rhs, double dt) {
    for (int j = 0; j < g.nj(); ++j) {
        for (int i = 0; i < g.ni(); ++i) {
            if (g.blanked(i, j)) continue;
            const State& d = rhs.dudt[static_cast<std::size_t>(i + j * g.ni())];
            State& U = f(i, j);
            for (std::size_t c = 0; c < 4; ++c) U[c] += dt * d[c];
        }
    }
}

}  // namespace

fv1d::StepReport Solver2D::step(Field2D& field, double dt, const Rhs2D* rhs0) {
    const StructuredGrid2D& g = *grid_;
    const Totals before = totals(field, g);
    Flux<2> tally;
    Flux<2> churn;

    apply_bc(field);
    Rhs2D owned;
    if (rhs0 == nullptr) {
        owned = compute_rhs(field);
        rhs0 = &owned;
    }

    if (opt_.order == 1) {
        euler_update(field, g, *rhs0, dt);
        for (std::size_t c = 0; c < 4; ++c) {
            tally[c] = dt * rhs0->boundary_outflow[c];
            churn[c] = dt * rhs0->flux_magnitude[c];
        }
    } else {
        Field2D stage = field;
        euler_update(stage, g, *rhs0, dt);
        stage.time = field.time + dt;
        apply_bc(stage);
        const Rhs2D rhs1 = compute_rhs(stage);
        for (int j = 0; j < g.nj(); ++j) {
            for (int i = 0; i < g.ni(); ++i) {
                if (g.blanked(i, j)) continue;
                const State& d = rhs1.dudt[static_cast<std::size_t>(i + j * g.ni())];
                for (std::size_t c = 0; c < 4; ++c) {
                    const double u1 = stage(i, j)[c] + dt * d[c];
                    field(i, j)[c] = 0.5 * field(i, j)[c] + 0.5 * u1;
                }
            }
        }
        for (std::size_t c = 0; c < 4; ++c) {
            tally[c] = 0.5 * dt * (rhs0->boundary_outflow[c] + rhs1.boundary_outflow[c]);
            churn[c] = dt * (rhs0->flux_magnitude[c] + rhs1.flux_magnitude[c]);
        }
    }
    field.time += dt;
    ++field.step;
    apply_bc(field);

    const Totals after = totals(field, g);
    fv1d::StepReport rep;
    rep.dt = dt;
    for (std::size_t c = 0; c < 4; ++c) {
        const double defect = std::abs(after.sum[c] - (before.sum[c] - tally[c]));
        const double scale = before.abs_sum[c] + churn[c];
        if (scale > 0.0) rep.conservation_defect = std::max(rep.conservation_defect, defect / scale);
    }
    return rep;
}

double Solver2D::residual(const Rhs2D& rhs) const {
    const StructuredGrid2D& g = *grid_;
    double sq = 0.0;
    for (int j = 0; j < g.nj(); ++j) {
        for (int i = 0; i < g.ni(); ++i) {
            if (g.blanked(i, j)) continue;
            const double d = rhs.dudt[static_cast<std::size_t>(i + j * g.ni())][0];
            sq += d * d;
        }
    }
    return std::sqrt(sq / g.fluid_cell_count());
}

HistoryRow Solver2D::measure(const Field2D& field) const {
    const StructuredGrid2D& g = *grid_;
    HistoryRow row;
    row.step = field.step;
    row.t = field.time;
    row.min_rho = std::numeric_limits<double>::infinity();
    row.min_p = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.nj(); ++j) {
        for (int i = 0; i < g.ni(); ++i) {
            if (g.blanked(i, j)) continue;
            const State& U = field(i, j);
            const double a = g.area(i, j);
            const Primitive w = detail::recover<2>(U, opt_.gas);
            row.total_mass += U[0] * a;
            row.total_momentum_x += U[1] * a;
            row.total_energy += U[3] * a;
            row.min_rho = std::min(row.min_rho, w.rho);
            row.min_p = std::min(row.min_p, w.p);
            if (w.rho > 0.0 && w.p > 0.0) row.total_entropy += entropy_density(w, opt_.gas) * a;
        }
    }
    return row;
}

double RunResult2D::residual_drop_orders() const {
    if (history.size() < 2) return 0.0;
    const double first = history.front().residual;
    const double last = history.back().residual;
    if (!(first > 0.0)) return 0.0;
    if (!(last > 0.0)) return std::numeric_limits<double>::infinity();
    return std::log10(first / last);
}

RunResult2D run_2d(Field2D field, Solver2D& solver, const TimeControls& tc) {
    tc.validate();
    RunResult2D result;
    double last_dt = 0.0;
    double first_residual = -1.0;
    try {
        while (true) {
            solver.apply_bc(field);
            const Rhs2D rhs = solver.compute_rhs(field);
            HistoryRow row = solver.measure(field);
            row.dt = last_dt;
            row.residual = solver.residual(rhs);
            result.history.push_back(row);
            if (first_residual < 0.0) first_residual = row.residual;

            if (tc.steady) {
                if (row.residual <= tc.steady_rel_tol * first_residual && field.step > 0) {
                    result.status = RunStatus::SteadyState;
                    break;
                }
                if (row.residual == 0.0) {
                    result.status = RunStatus::SteadyState;
                    break;
                }
            } else if (field.time >= tc.t_final) {
                result.status = RunStatus::ReachedFinalTime;
                break;
            }
            if (field.step >= tc.max_steps) {
                result.status = RunStatus::MaxSteps;
                break;
            }
            const double t_end = tc.steady ? std::numeric_limits<double>::infinity() : tc.t_final;
            const double dt = solver.stable_dt(field, tc.cfl, t_end);
            const bool last = !tc.steady && field.time + dt >= tc.t_final;
            const fv1d::StepReport rep = solver.step(field, dt, &rhs);
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

}  // namespace movers::fv2d
