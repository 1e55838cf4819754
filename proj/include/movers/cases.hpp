#pragma once

// Registry of benchmark cases: initial conditions, geometry, boundary
// conditions, final times, plotting hints, and the per-case diagnostics
// computed after a run.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "movers/errors.hpp"
#include "movers/fv1d.hpp"
#include "movers/fv2d.hpp"
#include "movers/riemann.hpp"

namespace movers::cases {

class UnknownCaseError : public ConfigError {
public:
    explicit UnknownCaseError(const std::string& name) : ConfigError("unknown case: " + name) {}
};

/// Contour levels as written in a figure caption plus their normalized
/// (start, end, step) reading.
struct ContourHint {
    std::string caption;   ///< e.g. "2.0:0.05:3.0"
    std::string variable;  ///< column of field.csv
    double start = 0.0;
    double end = 0.0;
    double step = 0.0;
};

/// Reads "a:b:c". Captions use both start:step:end and start:end:step; the
/// step is whichever of b and c is the smaller one.
ContourHint parse_contour_hint(std::string_view caption, std::string variable);

/// Number of levels start, start+step, ..., end.
int contour_level_count(const ContourHint& h);

struct RiemannSetup {
    Primitive left;
    Primitive right;
    double x0 = 0.5;
};

struct CaseSpec {
    std::string name;
    std::string description;
    int dimension = 1;
    int default_nx = 100;
    int default_ny = 0;
    double cfl = 0.8;
    double t_final = 0.0;
    /// 2D steady cases run to a residual drop instead of a final time.
    bool steady = false;
    double steady_rel_tol = 1e-6;
    long max_steps = 1'000'000;

    // 1D
    double x_min = 0.0;
    double x_max = 1.0;
    std::function<Primitive(double)> ic1;
    fv1d::BoundaryPair bc1;
    std::optional<RiemannSetup> riemann;

    // 2D
    std::function<fv2d::StructuredGrid2D(int nx, int ny)> grid2;
    std::function<Primitive(double, double)> ic2;
    fv2d::BoundarySet bc2;
    std::optional<ContourHint> contour;
    /// Grids shown for this case, as (nx, ny).
    std::vector<std::pair<int, int>> reference_grids;
};

/// All cases, in registry order.
const std::vector<CaseSpec>& registry();
std::vector<std::string> case_names();
/// Throws UnknownCaseError.
const CaseSpec& find_case(std::string_view name);

/// Values a run may override; unset fields take the case defaults.
struct RunOverrides {
    SchemeId scheme = SchemeId::MoversLE;
    int order = 1;
    std::optional<int> nx;
    std::optional<int> ny;
    std::optional<double> cfl;
    std::optional<double> t_final;
    std::optional<long> max_steps;
    SwitchParams sw{};
    std::optional<simd::Isa> isa;
};

struct FanCheck {
    int cells = 0;               ///< cells with centres inside the oracle fan
    double max_rise = 0.0;       ///< largest rho_{j+1} - rho_j inside the fan
    double max_drop = 0.0;       ///< largest rho_j - rho_{j+1} inside the fan
    double total_drop = 0.0;     ///< oracle density drop across the fan
    double allowed_drop = 0.0;   ///< 2.5 * total_drop / cells
    bool monotone = false;       ///< max_rise <= 1e-12
    bool no_expansion_shock = false;
};

struct Diagnostics {
    std::string status;
    bool completed = false;
    long steps = 0;
    double final_time = 0.0;
    double min_rho = 0.0;
    double min_p = 0.0;
    /// max |U(t) - U(0)| over interior (fluid) cells and components
    double stationarity = 0.0;
    double max_conservation_defect = 0.0;
    std::optional<riemann::L1Error> l1;
    std::optional<FanCheck> fan;
    /// smallest step-to-step change of total entropy (negative = decrease)
    double min_entropy_increment = 0.0;
    double residual_first = 0.0;
    double residual_last = 0.0;
    double residual_drop_orders = 0.0;
    /// polar grids only: max |U(i,j) - mirror U(i,nj-1-j)| / max |U|
    std::optional<double> mirror_asymmetry;
    double wall_seconds = 0.0;
};

struct CaseRun {
    const CaseSpec* spec = nullptr;
    RunOverrides overrides;
    int nx = 0;
    int ny = 0;
    double cfl = 0.0;
    double t_final = 0.0;

    // 1D
    std::optional<fv1d::Field1D> initial1;
    std::optional<fv1d::RunResult> result1;
    std::optional<riemann::RiemannSolution> oracle;

    // 2D
    std::shared_ptr<fv2d::StructuredGrid2D> grid2;
    std::optional<fv2d::Field2D> initial2;
    std::optional<fv2d::RunResult2D> result2;

    double wall_seconds = 0.0;

    bool ok() const;
    const std::vector<fv1d::HistoryRow>& history() const;
};

fv1d::Field1D initial_field_1d(const CaseSpec& spec, int nx);
fv2d::Field2D initial_field_2d(const CaseSpec& spec, const fv2d::StructuredGrid2D& grid);

CaseRun run_case(const CaseSpec& spec, const RunOverrides& overrides = {});
inline CaseRun run_case(std::string_view name, const RunOverrides& overrides = {}) {
    return run_case(find_case(name), overrides);
}

Diagnostics diagnostics(const CaseRun& run);

/// Density-monotonicity check inside the oracle's left rarefaction fan.
FanCheck fan_check(const fv1d::Field1D& field, const riemann::RiemannSolution& oracle, double t, double x0,
                   const GasModel& gas = {});

/// For grids symmetric about y = 0 with j mirrored onto nj-1-j.
double mirror_asymmetry(const fv2d::Field2D& field, const fv2d::StructuredGrid2D& grid);

}  // namespace movers::cases
