#pragma once

#include <cmath>
#include <random>

#include "movers/euler.hpp"
#include "movers/fv1d.hpp"

namespace testing_support {

inline constexpr int kPropertySamples = 10000;

inline bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// Random valid states over several decades of density and pressure.
class StateGen {
public:
    explicit StateGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

    movers::Primitive primitive1() { return {log_uniform(1e-2, 1e2), uniform(-5.0, 5.0), log_uniform(1e-2, 1e3)}; }
    movers::Primitive primitive2() {
        return {log_uniform(1e-2, 1e2), uniform(-5.0, 5.0), uniform(-5.0, 5.0), log_uniform(1e-2, 1e3)};
    }
    /// Velocity bounded by `mach` times the sound speed, so that the internal
    /// energy is not swamped by round-off in the kinetic part.
    movers::Primitive primitive2_mach(double mach, double gamma = 1.4) {
        movers::Primitive w{log_uniform(1e-2, 1e2), 0.0, 0.0, log_uniform(1e-2, 1e3)};
        const double a = std::sqrt(gamma * w.p / w.rho);
        w.u = uniform(-mach, mach) * a / std::sqrt(2.0);
        w.v = uniform(-mach, mach) * a / std::sqrt(2.0);
        return w;
    }
    movers::Normal normal() {
        const double t = uniform(0.0, 2.0 * 3.14159265358979323846);
        return {std::cos(t), std::sin(t)};
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Density wave rho = 1 + 0.2 sin(2 pi x), u = 1, p = 1 on a
/// periodic unit interval; the exact solution is the translated profile.
inline double smooth_wave_rho(double x) { return 1.0 + 0.2 * std::sin(2.0 * 3.14159265358979323846 * x); }

/// L1 density error after advecting the wave to t_final.
inline double smooth_wave_error(movers::SchemeId scheme, int order, int n, double t_final = 1.0) {
    using namespace movers;
    const GasModel gas;
    fv1d::Grid1D grid{0.0, 1.0, n};
    fv1d::Field1D f(grid);
    // cell averages of the profile by 4-point Gauss quadrature
    const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526};
    const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538};
    auto average = [&](int j, double shift) {
        double s = 0.0;
        for (int q = 0; q < 4; ++q) s += 0.5 * gw[q] * smooth_wave_rho(grid.center(j) + 0.5 * grid.dx() * gx[q] - shift);
        return s;
    };
    for (int j = 0; j < n; ++j) f(j) = primitive_to_conserved<1>({average(j, 0.0), 1.0, 1.0}, gas);
    fv1d::SolverOptions opt;
    opt.scheme = scheme;
    opt.order = order;
    fv1d::TimeControls tc;
    tc.cfl = 0.5;
    tc.t_final = t_final;
    const auto r = fv1d::run(f, {fv1d::Periodic{}, fv1d::Periodic{}}, opt, tc);
    if (!r.ok()) return INFINITY;
    double err = 0.0;
    for (int j = 0; j < n; ++j) err += grid.dx() * std::abs(r.field(j)[0] - average(j, t_final));
    return err;
}

}  // namespace testing_support
