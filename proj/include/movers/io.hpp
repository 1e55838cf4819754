#pragma once

// File emitters for run outputs. All numbers are written with 17 significant
// digits so the files round-trip to the exact doubles.
//
//   line.csv      x,rho,u,p,e,mach,entropy           (1D, one row per cell)
//   oracle.csv    x,rho,u,p                          (1D Riemann cases)
//   field.csv     i,j,xc,yc,rho,u,v,p,mach           (2D, fluid cells only)
//   field.meta    key=value lines                    (2D sidecar)
//   history.csv   step,t,dt,residual,total_mass,...  (per step)
//   summary.json  run configuration and diagnostics

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "movers/cases.hpp"

namespace movers::io {

inline constexpr const char* kLineHeader = "x,rho,u,p,e,mach,entropy";
inline constexpr const char* kOracleHeader = "x,rho,u,p";
inline constexpr const char* kFieldHeader = "i,j,xc,yc,rho,u,v,p,mach";
inline constexpr const char* kHistoryHeader =
    "step,t,dt,residual,total_mass,total_momentum_x,total_energy,total_entropy,min_rho,min_p";

/// Shortest "%.17g" rendering.
std::string fmt(double x);

void write_line_csv(const fv1d::Field1D& field, const std::filesystem::path& path, const GasModel& gas = {});

/// Samples the oracle at `samples` evenly spaced points of [x_min, x_max] at time t.
void write_oracle_csv(const riemann::RiemannSolution& oracle, double x_min, double x_max, double x0, double t,
                      const std::filesystem::path& path, int samples = 1000);

struct FieldMeta {
    std::string case_name;
    std::string scheme;
    int order = 1;
    double time = 0.0;
    long steps = 0;
    std::optional<cases::ContourHint> contour;
};

/// Writes the data file and, next to it, the sidecar with the extension
/// replaced by ".meta".
void write_field_csv(const fv2d::Field2D& field, const fv2d::StructuredGrid2D& grid, const FieldMeta& meta,
                     const std::filesystem::path& path, const GasModel& gas = {});

std::map<std::string, std::string> read_meta(const std::filesystem::path& path);

void write_history(const std::vector<fv1d::HistoryRow>& history, const std::filesystem::path& path);

std::string summary_json(const cases::CaseRun& run, const cases::Diagnostics& d);

/// Writes every file that applies to the run into `dir` (created if missing).
void write_run(const cases::CaseRun& run, const cases::Diagnostics& d, const std::filesystem::path& dir);

}  // namespace movers::io
