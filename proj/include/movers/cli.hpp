#pragma once

// Command-line front end.
//
//   movers list
//   movers run   --case NAME [--scheme S] [--order 1|2] [--nx N] [--ny N] [--cfl C]
//                [--tfinal T] [--max-steps K] [--eps0 E] [--delta0 D] [--isa scalar|avx2]
//                [--out DIR]
//   movers sweep --case NAME --grids 100,200,400 [run flags] [--out DIR]
//
// Exit codes: 0 success, 1 the run failed (positivity loss or I/O), 2 usage.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "movers/cases.hpp"

namespace movers::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRunFailure = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
    std::string case_name;
    SchemeId scheme = SchemeId::MoversLE;
    int order = 1;
    std::optional<int> nx;
    std::optional<int> ny;
    std::optional<double> cfl;
    std::optional<double> t_final;
    std::optional<long> max_steps;
    SwitchParams sw{};
    std::optional<simd::Isa> isa;
    std::string out_dir;

    cases::RunOverrides overrides() const;
};

struct ListCommand {};
struct RunCommand {
    RunConfig config;
};
struct GridSize {
    int nx = 0;
    std::optional<int> ny;
};
struct SweepCommand {
    RunConfig config;
    std::vector<GridSize> grids;
};
/// Parsing stopped early: help text or a usage error, with the exit code.
struct ParseExit {
    int code = kExitOk;
    std::string message;
};

using Command = std::variant<ListCommand, RunCommand, SweepCommand, ParseExit>;

Command parse_args(const std::vector<std::string>& args);

int execute(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_args + execute on argv[1..].
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace movers::cli
