#include "movers/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace movers::riemann {
namespace {

struct Side {
    double rho, u, p, a;
};

// Toro's f_K(p) and its derivative.
void pressure_function(double p, const Side& s, double gamma, double& f, double& df) {
    if (p > s.p) {
        const double A = 2.0 / ((gamma + 1.0) * s.rho);
        const double B = (gamma - 1.0) / (gamma + 1.0) * s.p;
        const double q = std::sqrt(A / (p + B));
        f = (p - s.p) * q;
        df = q * (1.0 - 0.5 * (p - s.p) / (B + p));
    } else {
        const double ratio = p / s.p;
        f = 2.0 * s.a / (gamma - 1.0) * (std::pow(ratio, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
        df = 1.0 / (s.rho * s.a) * std::pow(ratio, -(gamma + 1.0) / (2.0 * gamma));
    }
}

Side side(const Primitive& w, const GasModel& gas) { return {w.rho, w.u, w.p, sound_speed(w, gas)}; }

}  // namespace

RiemannSolution exact_riemann(const Primitive& left, const Primitive& right, const GasModel& gas) {
    require_valid(left);
    require_valid(right);
    const double g = gas.gamma;
    const Side L = side(left, gas);
    const Side R = side(right, gas);
    const double du = R.u - L.u;
    if (2.0 / (g - 1.0) * (L.a + R.a) <= du) {
        throw InvalidStateError("Riemann data generate vacuum");
    }

    auto residual = [&](double p, double& df) {
        double fl, dfl, fr, dfr;
        pressure_function(p, L, g, fl, dfl);
        pressure_function(p, R, g, fr, dfr);
        df = dfl + dfr;
        return fl + fr + du;
    };

    // two-rarefaction guess
    const double z = (g - 1.0) / (2.0 * g);
    double p = std::pow((L.a + R.a - 0.5 * (g - 1.0) * du) / (L.a / std::pow(L.p, z) + R.a / std::pow(R.p, z)),
                        1.0 / z);
    p = std::max(p, 1e-14 * std::min(L.p, R.p));

    // bracket [lo, hi] with f(lo) < 0 < f(hi); f is increasing in p
    double lo = 0.0;
    double hi = std::max({L.p, R.p, p});
    double tmp;
    while (residual(hi, tmp) < 0.0) hi *= 2.0;

    RiemannSolution sol;
    int it = 0;
    for (; it < 100; ++it) {
        double df;
        const double f = residual(p, df);
        if (f == 0.0) break;
        if (f < 0.0) {
            lo = p;
        } else {
            hi = p;
        }
        double next = p - f / df;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double change = std::abs(next - p) / (0.5 * (next + p));
        p = next;
        if (change < 1e-15) break;
    }
    sol.iterations = it;

    double fl, dfl, fr, dfr;
    pressure_function(p, L, g, fl, dfl);
    pressure_function(p, R, g, fr, dfr);

    sol.left = left;
    sol.right = right;
    sol.gas = gas;
    sol.p_star = p;
    sol.u_star = 0.5 * (L.u + R.u) + 0.5 * (fr - fl);

    const double gr = (g - 1.0) / (g + 1.0);
    if (p > L.p) {
        sol.left_wave = WaveKind::Shock;
        const double ratio = p / L.p;
        sol.rho_star_left = L.rho * (ratio + gr) / (gr * ratio + 1.0);
        const double s = L.u - L.a * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
        sol.left_head = sol.left_tail = s;
    } else {
        sol.left_wave = WaveKind::Rarefaction;
        sol.rho_star_left = L.rho * std::pow(p / L.p, 1.0 / g);
        const double a_star = L.a * std::pow(p / L.p, z);
        sol.left_head = L.u - L.a;
        sol.left_tail = sol.u_star - a_star;
    }
    if (p > R.p) {
        sol.right_wave = WaveKind::Shock;
        const double ratio = p / R.p;
        sol.rho_star_right = R.rho * (ratio + gr) / (gr * ratio + 1.0);
        const double s = R.u + R.a * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
        sol.right_head = sol.right_tail = s;
    } else {
        sol.right_wave = WaveKind::Rarefaction;
        sol.rho_star_right = R.rho * std::pow(p / R.p, 1.0 / g);
        const double a_star = R.a * std::pow(p / R.p, z);
        sol.right_head = R.u + R.a;
        sol.right_tail = sol.u_star + a_star;
    }
    return sol;
}

double RiemannSolution::pressure_residual() const {
    const Side L = side(left, gas);
    const Side R = side(right, gas);
    double fl, dfl, fr, dfr;
    pressure_function(p_star, L, gas.gamma, fl, dfl);
    pressure_function(p_star, R, gas.gamma, fr, dfr);
    return fl + fr + (R.u - L.u);
}

Primitive RiemannSolution::sample(double xi) const {
    const double g = gas.gamma;
    if (xi <= u_star) {
        if (left_wave == WaveKind::Shock) {
            return xi < left_head ? left : Primitive{rho_star_left, u_star, p_star};
        }
        if (xi <= left_head) return left;
        if (xi >= left_tail) return Primitive{rho_star_left, u_star, p_star};
        const double a_l = sound_speed(left, gas);
        const double c = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * a_l) * (left.u - xi);
        return Primitive{left.rho * std::pow(c, 2.0 / (g - 1.0)),
                         2.0 / (g + 1.0) * (a_l + 0.5 * (g - 1.0) * left.u + xi),
                         left.p * std::pow(c, 2.0 * g / (g - 1.0))};
    }
    if (right_wave == WaveKind::Shock) {
        return xi > right_head ? right : Primitive{rho_star_right, u_star, p_star};
    }
    if (xi >= right_head) return right;
    if (xi <= right_tail) return Primitive{rho_star_right, u_star, p_star};
    const double a_r = sound_speed(right, gas);
    const double c = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * a_r) * (right.u - xi);
    return Primitive{right.rho * std::pow(c, 2.0 / (g - 1.0)),
                     2.0 / (g + 1.0) * (-a_r + 0.5 * (g - 1.0) * right.u + xi),
                     right.p * std::pow(c, 2.0 * g / (g - 1.0))};
}

Primitive normal_shock_from_mach(double mach, const Primitive& upstream, const GasModel& gas) {
    require_valid(upstream);
    if (!(mach >= 1.0)) throw ConfigError("normal shock needs upstream Mach >= 1");
    const double g = gas.gamma;
    const double a1 = sound_speed(upstream, gas);
    const double dir = upstream.u < 0.0 ? -1.0 : 1.0;
    const double u1 = dir * mach * a1;
    const double m2 = mach * mach;
    const double density_ratio = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    const double pressure_ratio = 1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0);
    return Primitive{upstream.rho * density_ratio, u1 / density_ratio, upstream.v, upstream.p * pressure_ratio};
}

std::array<Primitive, 2> steady_shock_pair(double mach, double rho_up, double p_up, const GasModel& gas) {
    Primitive up{rho_up, 0.0, p_up};
    up.u = mach * sound_speed(up, gas);
    return {up, normal_shock_from_mach(mach, up, gas)};
}

Primitive moving_shock_state(double mach, const Primitive& ahead, const GasModel& gas) {
    require_valid(ahead);
    if (!(mach >= 1.0)) throw ConfigError("moving shock needs Mach >= 1");
    const double g = gas.gamma;
    const double a1 = sound_speed(ahead, gas);
    const double m2 = mach * mach;
    const double density_ratio = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    const double pressure_ratio = 1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0);
    const double shock_speed = ahead.u + mach * a1;
    // mass flux through the shock: rho1 (S - u1) = rho2 (S - u2)
    const double u2 = shock_speed - (shock_speed - ahead.u) / density_ratio;
    return Primitive{ahead.rho * density_ratio, u2, ahead.v, ahead.p * pressure_ratio};
}

double flow_angle(const Primitive& w) { return std::atan2(w.v, w.u); }

Primitive oblique_shock_state(const Primitive& upstream, double shock_angle, const GasModel& gas) {
    require_valid(upstream);
    const double g = gas.gamma;
    const double theta0 = flow_angle(upstream);
    const double sgn = shock_angle < 0.0 ? -1.0 : 1.0;
    // downstream-pointing shock normal, first in the flow-aligned frame then rotated
    const double nx_f = sgn * std::sin(shock_angle);
    const double ny_f = sgn * std::cos(shock_angle);
    const double nx = nx_f * std::cos(theta0) - ny_f * std::sin(theta0);
    const double ny = nx_f * std::sin(theta0) + ny_f * std::cos(theta0);
    const double wn = upstream.u * nx + upstream.v * ny;
    const double a1 = sound_speed(upstream, gas);
    const double mn = wn / a1;
    if (!(mn > 1.0)) throw ConfigError("oblique shock needs a supersonic normal Mach number");
    const double m2 = mn * mn;
    const double density_ratio = (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    const double pressure_ratio = 1.0 + 2.0 * g / (g + 1.0) * (m2 - 1.0);
    const double wn2 = wn / density_ratio;
    const double jump = wn - wn2;
    return Primitive{upstream.rho * density_ratio, upstream.u - jump * nx, upstream.v - jump * ny,
                     upstream.p * pressure_ratio};
}

double weak_shock_angle(const Primitive& upstream, double deflection, const GasModel& gas) {
    require_valid(upstream);
    if (!(deflection >= 0.0)) throw ConfigError("deflection must be >= 0");
    const double mach = mach_number(upstream, gas);
    if (!(mach > 1.0)) throw ConfigError("oblique shock needs supersonic upstream flow");
    const double mu = std::asin(1.0 / mach);
    const double target = flow_angle(upstream);
    // turning produced by a clockwise shock of angle beta, minus the requested deflection
    auto excess = [&](double beta) {
        const Primitive w = oblique_shock_state(upstream, beta, gas);
        return (target - flow_angle(w)) - deflection;
    };

    // weak branch: first sign change above the Mach angle
    const int scan = 4000;
    double lo = mu + 1e-9;
    double f_lo = excess(lo);
    if (f_lo >= 0.0) return lo;
    double hi = -1.0;
    for (int k = 1; k <= scan; ++k) {
        const double beta = mu + (0.5 * std::numbers::pi - mu) * k / scan;
        const double f = excess(beta);
        if (f >= 0.0) {
            hi = beta;
            break;
        }
        lo = beta;
        f_lo = f;
    }
    if (hi < 0.0) throw ConfigError("deflection exceeds the maximum for an attached shock");
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

RegularReflection regular_reflection(const Primitive& upstream, double incident_angle, const GasModel& gas) {
    RegularReflection r;
    r.upstream = upstream;
    r.incident_angle = incident_angle;
    r.behind_incident = oblique_shock_state(upstream, incident_angle, gas);
    r.deflection = std::abs(flow_angle(r.behind_incident) - flow_angle(upstream));

    // The reflected shock turns the flow back through the same angle in the
    // opposite sense. A counter-clockwise turn is the mirror image (v -> -v) of
    // a clockwise one with the same shock angle.
    const double sense = incident_angle < 0.0 ? 1.0 : -1.0;
    Primitive probe = r.behind_incident;
    if (sense < 0.0) probe.v = -probe.v;
    r.reflected_angle = weak_shock_angle(probe, r.deflection, gas);
    r.behind_reflected = oblique_shock_state(r.behind_incident, sense * r.reflected_angle, gas);
    return r;
}

L1Error l1_error(const fv1d::Field1D& field, const RiemannSolution& oracle, double t, double x0,
                 const GasModel& gas) {
    if (!(t > 0.0)) throw ConfigError("l1_error needs t > 0");
    L1Error e;
    const auto& grid = field.grid();
    const double dx = grid.dx();
    for (int j = 0; j < field.size(); ++j) {
        const Primitive w = conserved_to_primitive<1>(field(j), gas);
        const Primitive ex = oracle.sample((grid.center(j) - x0) / t);
        e.rho += std::abs(w.rho - ex.rho) * dx;
        e.u += std::abs(w.u - ex.u) * dx;
        e.p += std::abs(w.p - ex.p) * dx;
    }
    return e;
}

}  // namespace movers::riemann
