#pragma once

// Semi-discrete 1D finite-volume solver
//
//   dU_j/dt = -(F_{j+1/2} - F_{j-1/2}) / dx
//
// on a uniform grid with two ghost layers per side. Interface fluxes come from
// the batched face kernels; order 2 adds primitive-variable MUSCL reconstruction
// and two-stage SSP Runge-Kutta.

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "movers/euler.hpp"
#include "movers/schemes.hpp"
#include "movers/simd/face_kernel.hpp"

namespace movers::fv1d {

using State = Conserved<1>;

struct Grid1D {
    static constexpr int kGhost = 2;

    double x_min = 0.0;
    double x_max = 1.0;
    int n_cells = 100;

    double dx() const { return (x_max - x_min) / n_cells; }
    double center(int j) const { return x_min + (j + 0.5) * dx(); }
    void validate() const;
};

struct Transmissive {};
struct FixedInflow {
    Primitive state;
};
struct Reflective {};
/// Wraps around; must be set on both sides.
struct Periodic {};

using BoundaryCondition = std::variant<Transmissive, FixedInflow, Reflective, Periodic>;

struct BoundaryPair {
    BoundaryCondition left = Transmissive{};
    BoundaryCondition right = Transmissive{};
};

/// Cell averages with ghost layers. Interior cells are j = 0..n-1; ghosts are
/// j = -2, -1 and n, n+1.
class Field1D {
public:
    Field1D() = default;
    explicit Field1D(const Grid1D& grid);

    const Grid1D& grid() const { return grid_; }
    int size() const { return grid_.n_cells; }

    State& operator()(int j) { return cells_[static_cast<std::size_t>(j + Grid1D::kGhost)]; }
    const State& operator()(int j) const { return cells_[static_cast<std::size_t>(j + Grid1D::kGhost)]; }

    /// All storage including ghosts, ghost-first.
    const std::vector<State>& storage() const { return cells_; }

    double time = 0.0;
    long step = 0;

private:
    Grid1D grid_;
    std::vector<State> cells_;
};

struct TimeControls {
    double cfl = 0.8;
    double t_final = 0.0;
    long max_steps = 1'000'000;
    /// Stop once the RMS density residual falls below this; 0 disables.
    double steady_residual_tol = 0.0;

    void validate() const;
};

struct SolverOptions {
    SchemeId scheme = SchemeId::MoversLE;
    int order = 1;
    GasModel gas{};
    SwitchParams sw{};
    simd::Isa isa = simd::active_isa();

    void validate() const;
};

void apply_bc(Field1D& field, const BoundaryPair& bc, const GasModel& gas);

/// Left/right states at faces 0..n (face f separates cells f-1 and f).
struct InterfaceStates {
    std::vector<State> left;
    std::vector<State> right;
};

/// Order 1 returns the adjacent cell averages. Order 2 reconstructs (rho, u, p)
/// linearly with minmod slopes and drops back to the averages at any face
/// where the reconstruction is not positive.
InterfaceStates muscl_reconstruct(const Field1D& field, int order, const GasModel& gas);

struct Rhs {
    std::vector<State> dudt;                ///< interior cells only
    std::vector<Flux<1>> face_flux;         ///< faces 0..n
    /// F at the right boundary minus F at the left boundary.
    Flux<1> boundary_outflow;
    /// sum over faces of |F|, the round-off scale of the update.
    Flux<1> flux_magnitude;
};

/// Scratch buffers reused across calls.
struct Workspace {
    std::vector<double> soa[3];
    std::vector<double> left[3];
    std::vector<double> right[3];
    std::vector<double> flux[3];
};

/// Requires ghosts to be filled. Throws PositivityError if an interior cell
/// has lost positivity.
Rhs compute_rhs(const Field1D& field, const SolverOptions& opt, Workspace& ws);
Rhs compute_rhs(const Field1D& field, const SolverOptions& opt);

/// cfl * dx / max spectral radius, shortened so that time + dt <= t_final.
double stable_dt(const Field1D& field, double cfl, const GasModel& gas,
                 double t_final = std::numeric_limits<double>::infinity());

struct StepReport {
    double dt = 0.0;
    /// Max over components of the conservation-identity defect relative to
    /// sum |U| dx + dt * sum |F| over faces.
    double conservation_defect = 0.0;
};

/// Advances one step of size dt (Euler for order 1, SSP-RK2 for order 2).
/// `rhs0`, if given, must be the rhs of the current field.
StepReport step(Field1D& field, const BoundaryPair& bc, const SolverOptions& opt, double dt, Workspace& ws,
                const Rhs* rhs0 = nullptr);

struct HistoryRow {
    long step = 0;
    double t = 0.0;
    double dt = 0.0;
    double residual = 0.0;
    double total_mass = 0.0;
    double total_momentum_x = 0.0;
    double total_energy = 0.0;
    double total_entropy = 0.0;
    double min_rho = 0.0;
    double min_p = 0.0;
};

enum class RunStatus { ReachedFinalTime, SteadyState, MaxSteps, PositivityFailure };

std::string_view to_string(RunStatus s);

struct RunResult {
    Field1D field;
    std::vector<HistoryRow> history;
    RunStatus status = RunStatus::ReachedFinalTime;
    double max_conservation_defect = 0.0;
    std::optional<std::string> failure;

    bool ok() const { return status != RunStatus::PositivityFailure; }
};

/// Totals and extrema of the interior cells.
HistoryRow measure(const Field1D& field, const GasModel& gas);

/// Advances to t_final, to the steady tolerance or to max_steps. A positivity
/// failure stops the run and is reported through status/failure.
RunResult run(Field1D field, const BoundaryPair& bc, const SolverOptions& opt, const TimeControls& tc);

}  // namespace movers::fv1d
