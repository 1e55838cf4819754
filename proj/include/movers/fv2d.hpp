#pragma once

// Unsplit cell-centred finite-volume solver on structured quadrilateral grids:
//
//   dU/dt = -(1/area) * sum over faces of F(U_L, U_R; n) * length
//
// Every face flux is evaluated in the face-normal frame by the batched face
// kernels and rotated back. Blanked cells are inert; faces between a fluid cell
// and a blanked cell are slip walls.

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "movers/errors.hpp"
#include "movers/euler.hpp"
#include "movers/fv1d.hpp"
#include "movers/grid2d.hpp"
#include "movers/schemes.hpp"
#include "movers/simd/face_kernel.hpp"

namespace movers::fv2d {

using State = Conserved<2>;
using fv1d::HistoryRow;
using fv1d::RunStatus;

inline constexpr int kGhost = 2;

/// Ghost state prescribed from a function of the boundary-face midpoint.
struct FixedInflow {
    std::function<Primitive(double x, double y)> state;
};
/// Zero-order extrapolation (also used as supersonic outflow).
struct Extrapolation {};
/// Mirror of the face-normal velocity component.
struct SlipWall {};

using BC2D = std::variant<FixedInflow, Extrapolation, SlipWall>;

FixedInflow uniform_inflow(const Primitive& w);

/// One condition per side. `left`/`right` are the i = 0 and i = ni sides,
/// `bottom`/`top` the j = 0 and j = nj sides.
struct BoundarySet {
    BC2D left = Extrapolation{};
    BC2D right = Extrapolation{};
    BC2D bottom = Extrapolation{};
    BC2D top = Extrapolation{};
};

class Field2D {
public:
    Field2D() = default;
    explicit Field2D(const StructuredGrid2D& grid);

    int ni() const { return ni_; }
    int nj() const { return nj_; }
    int stride() const { return ni_ + 2 * kGhost; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>((i + kGhost) + (j + kGhost) * (ni_ + 2 * kGhost));
    }

    State& operator()(int i, int j) { return cells_[index(i, j)]; }
    const State& operator()(int i, int j) const { return cells_[index(i, j)]; }

    std::vector<State>& storage() { return cells_; }
    const std::vector<State>& storage() const { return cells_; }

    double time = 0.0;
    long step = 0;

private:
    int ni_ = 0;
    int nj_ = 0;
    std::vector<State> cells_;
};

/// Sets every interior cell (blanked ones included) from `ic(centroid)`.
void initialize(Field2D& field, const StructuredGrid2D& grid, const std::function<Primitive(double, double)>& ic,
                const GasModel& gas);

struct SolverOptions {
    SchemeId scheme = SchemeId::MoversLE;
    int order = 1;
    GasModel gas{};
    SwitchParams sw{};
    simd::Isa isa = simd::active_isa();

    void validate() const;
};

struct TimeControls {
    double cfl = 0.4;
    /// Unsteady runs stop here; ignored when `steady` is set.
    double t_final = 0.0;
    bool steady = false;
    /// Steady runs stop when residual <= steady_rel_tol * first residual.
    double steady_rel_tol = 1e-6;
    long max_steps = 1'000'000;

    void validate() const;
};

/// Face flux in the global frame per unit length, for a single face. Without a
/// stencil the limiter uses phi = 1.
Flux<2> face_flux(const State& UL, const State& UR, Normal n, SchemeId scheme, const GasModel& gas,
                  const SwitchParams& sw = {}, const Stencil<2>* stencil = nullptr);

struct Rhs2D {
    /// dU/dt for interior cells, (i, j) at i + j * ni; zero for blanked cells.
    std::vector<State> dudt;
    /// Net flux leaving the fluid region (domain boundary and wall faces).
    Flux<2> boundary_outflow;
    /// sum over faces of |F| * length, the round-off scale of the update.
    Flux<2> flux_magnitude;
};

/// Precomputed face connectivity plus scratch buffers for one grid.
class Solver2D {
public:
    Solver2D(const StructuredGrid2D& grid, BoundarySet bc, SolverOptions opt);

    const StructuredGrid2D& grid() const { return *grid_; }
    const BoundarySet& boundaries() const { return bc_; }
    const SolverOptions& options() const { return opt_; }
    SolverOptions& options() { return opt_; }

    void apply_bc(Field2D& field) const;

    /// Requires ghosts to be filled. Throws PositivityError if a fluid cell
    /// has lost positivity.
    Rhs2D compute_rhs(const Field2D& field);

    /// cfl * min over fluid cells of area / sum_faces (|u.n| + a) * length,
    /// shortened so that time + dt <= t_final.
    double stable_dt(const Field2D& field, double cfl,
                     double t_final = std::numeric_limits<double>::infinity()) const;

    /// One Euler (order 1) or SSP-RK2 (order 2) step. Returns the relative
    /// conservation defect against the boundary-flux tally.
    fv1d::StepReport step(Field2D& field, double dt, const Rhs2D* rhs0 = nullptr);

    /// RMS of d(rho)/dt over fluid cells.
    double residual(const Rhs2D& rhs) const;

    HistoryRow measure(const Field2D& field) const;

private:
    struct Face {
        std::size_t left = 0;  ///< storage index; for walls both sides name the fluid cell
        std::size_t right = 0;
        std::size_t stencil[4] = {};
        std::uint8_t full_stencil = 1;
        /// 0: ordinary face, 1: wall with fluid on the left, 2: wall with fluid on the right
        std::uint8_t wall = 0;
        /// +1 / -1 when the face bounds the fluid region with the fluid on its
        /// left / right, else 0.
        int out_sign = 0;
        /// Reconstruction direction (0 = i, 1 = j).
        std::uint8_t dir = 0;
        Normal n;
        double length = 0.0;
    };

    void build_faces();
    void fill_primitives(const Field2D& field);
    void reconstruct(const Field2D& field);
    void face_fluxes(const Field2D& field);
    void check_positive(const Field2D& field) const;

    const StructuredGrid2D* grid_;
    BoundarySet bc_;
    SolverOptions opt_;

    std::vector<Face> faces_;
    /// Per interior cell: faces i-, i+, j-, j+ (index into faces_, -1 if none).
    std::vector<std::array<int, 4>> cell_faces_;

    // scratch
    std::vector<double> left_[4], right_[4], st_[4][4], flux_[4];
    std::vector<std::uint8_t> full_;
    std::vector<Flux<2>> face_flux_;
    std::vector<State> recon_left_, recon_right_;
    std::vector<Primitive> prim_, slope_i_, slope_j_;
};

struct RunResult2D {
    Field2D field;
    std::vector<HistoryRow> history;
    RunStatus status = RunStatus::ReachedFinalTime;
    double max_conservation_defect = 0.0;
    std::optional<std::string> failure;

    bool ok() const { return status != RunStatus::PositivityFailure; }
    /// log10(first residual / last residual); 0 when undefined.
    double residual_drop_orders() const;
};

RunResult2D run_2d(Field2D field, Solver2D& solver, const TimeControls& tc);

}  // namespace movers::fv2d
