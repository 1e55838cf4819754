#pragma once

// Interface diffusion coefficients for the central-flux family
//
//   F_{j+1/2} = (F_L + F_R)/2 - alpha o (U_R - U_L)/2
//
// with alpha a per-conservation-law vector. Every function in `frame` works on
// states already rotated into the face-normal frame; the public wrappers do the
// rotation. These scalar routines are the reference for the batched kernels in
// movers/simd/face_kernel.hpp, which must reproduce them exactly.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "movers/euler.hpp"

namespace movers {

enum class SchemeId { Llf, MoversN, MoversE, MoversL, MoversLE };

inline constexpr std::array<SchemeId, 5> kAllSchemes = {SchemeId::Llf, SchemeId::MoversN, SchemeId::MoversE,
                                                       SchemeId::MoversL, SchemeId::MoversLE};

std::string_view to_string(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);

inline constexpr bool uses_limiter(SchemeId id) { return id == SchemeId::MoversL || id == SchemeId::MoversLE; }

/// How the limiter value is shared across the conservation laws.
enum class LimiterMode {
    PerComponent,  ///< one phi per conserved component
    Scalar,        ///< min over components, applied to all
};

/// What counts as a steady discontinuity in the zero-diffusion branch.
enum class SteadyTest {
    FluxVector,    ///< every flux component continuous across the face
    PerComponent,  ///< only the component being evaluated
};

struct SwitchParams {
    /// Relative threshold of the jump-condition degeneracy tests.
    double eps0 = 1e-8;
    /// Relative threshold guarding the limiter ratio denominators.
    double delta0 = 1e-6;
    LimiterMode limiter = LimiterMode::PerComponent;
    SteadyTest steady_test = SteadyTest::FluxVector;

    void validate() const {
        if (!(eps0 > 0.0 && eps0 <= 1e-4) || !(delta0 > 0.0 && delta0 <= 1e-4)) {
            throw ConfigError("eps0 and delta0 must lie in (0, 1e-4]");
        }
    }
};

struct DiffusionTag;
struct LimiterTag;

template <int Dim>
using DiffusionCoefficients = VarVector<Dim, DiffusionTag>;
template <int Dim>
using LimiterValues = VarVector<Dim, LimiterTag>;

/// Four consecutive cell averages j-1, j, j+1, j+2 around the face j+1/2.
template <int Dim>
using Stencil = std::array<Conserved<Dim>, 4>;

namespace frame {

/// Everything a face computation needs from one side, in the face frame.
template <int Dim>
struct SideState {
    Conserved<Dim> U;
    Primitive w;
    Flux<Dim> F;
    double a = 0.0;
};

template <int Dim>
inline SideState<Dim> side_state(const Conserved<Dim>& U, const GasModel& gas) {
    SideState<Dim> s;
    s.U = U;
    s.w = detail::recover<Dim>(U, gas);
    s.F = detail::frame_flux<Dim>(U, s.w);
    s.a = std::sqrt(gas.gamma * s.w.p / s.w.rho);
    return s;
}

/// Eigenvalue-magnitude bounds across the face. lambda_min is the larger of the
/// two one-sided minima.
struct EigenBounds {
    double lambda_min;
    double lambda_max;
};

template <int Dim>
inline EigenBounds eigen_bounds(const SideState<Dim>& L, const SideState<Dim>& R) {
    auto one_side = [](const SideState<Dim>& s) {
        const double m1 = std::abs(s.w.u - s.a);
        const double m2 = std::abs(s.w.u);
        const double m3 = std::abs(s.w.u + s.a);
        return std::pair{std::min(std::min(m1, m2), m3), std::max(std::max(m1, m2), m3)};
    };
    const auto [lmin_l, lmax_l] = one_side(L);
    const auto [lmin_r, lmax_r] = one_side(R);
    return {std::max(lmin_l, lmin_r), std::max(lmax_l, lmax_r)};
}

template <int Dim>
inline DiffusionCoefficients<Dim> alpha_llf(const SideState<Dim>& L, const SideState<Dim>& R) {
    const double lam = std::max(std::abs(L.w.u) + L.a, std::abs(R.w.u) + R.a);
    DiffusionCoefficients<Dim> alpha;
    alpha.values.fill(lam);
    return alpha;
}

template <int Dim>
inline DiffusionCoefficients<Dim> alpha_llf_es(const SideState<Dim>& L, const SideState<Dim>& R) {
    const double lam = std::max(std::abs(L.w.u), std::abs(R.w.u));
    DiffusionCoefficients<Dim> alpha;
    alpha.values.fill(lam);
    return alpha;
}

/// Per-component discontinuity speed |dF/dU| with the degeneracy branches and
/// the eigen-spectrum clamp. A steady jump (dU != 0, dF = 0) yields an
/// unclamped zero.
template <int Dim>
inline DiffusionCoefficients<Dim> alpha_movers_n(const SideState<Dim>& L, const SideState<Dim>& R,
                                                 const SwitchParams& sw) {
    constexpr int N = Dim + 2;
    const EigenBounds eb = eigen_bounds(L, R);
    std::array<bool, N> flux_equal{};
    bool all_equal = true;
    for (int i = 0; i < N; ++i) {
        const double dF = R.F[i] - L.F[i];
        const double tol_f = sw.eps0 * std::max(1.0, std::max(std::abs(L.F[i]), std::abs(R.F[i])));
        flux_equal[i] = std::abs(dF) < tol_f;
        all_equal = all_equal && flux_equal[i];
    }
    DiffusionCoefficients<Dim> alpha;
    for (int i = 0; i < N; ++i) {
        const double dU = R.U[i] - L.U[i];
        const double dF = R.F[i] - L.F[i];
        const double tol_u = sw.eps0 * std::max(1.0, std::max(std::abs(L.U[i]), std::abs(R.U[i])));
        const bool steady = sw.steady_test == SteadyTest::FluxVector ? all_equal : flux_equal[i];
        double s;
        if (std::abs(dU) < tol_u) {
            s = eb.lambda_min;
        } else if (steady) {
            s = 0.0;
        } else {
            s = std::min(std::max(std::abs(dF / dU), eb.lambda_min), eb.lambda_max);
        }
        alpha[i] = s;
    }
    return alpha;
}

/// minmod(1, r+, r-) for one component; the first argument pins phi to [0, 1].
inline double limiter_component(double s0, double s1, double s2, double s3, double delta0) {
    const double d0 = s1 - s0;
    const double d1 = s2 - s1;
    const double d2 = s3 - s2;
    const double delta = delta0 * std::max(1.0, std::max(std::abs(s1), std::abs(s2)));
    double rp;
    double rm;
    if (std::abs(d1) < delta) {
        const double sgn = d1 > 0.0 ? 1.0 : (d1 < 0.0 ? -1.0 : 0.0);
        rp = (sgn * d0) / delta;
        rm = (sgn * d2) / delta;
    } else {
        rp = d0 / d1;
        rm = d2 / d1;
    }
    return (rp > 0.0 && rm > 0.0) ? std::min(1.0, std::min(rp, rm)) : 0.0;
}

template <int Dim>
inline LimiterValues<Dim> limiter_phi(const Stencil<Dim>& st, const SwitchParams& sw) {
    LimiterValues<Dim> phi;
    for (int i = 0; i < Dim + 2; ++i) {
        phi[i] = limiter_component(st[0][i], st[1][i], st[2][i], st[3][i], sw.delta0);
    }
    if (sw.limiter == LimiterMode::Scalar) {
        double m = phi[0];
        for (int i = 1; i < Dim + 2; ++i) m = std::min(m, phi[i]);
        phi.values.fill(m);
    }
    return phi;
}

/// (1 - phi) * a + phi * b, clamped into the closed interval spanned by a and b.
template <int Dim>
inline DiffusionCoefficients<Dim> blend(const DiffusionCoefficients<Dim>& a, const DiffusionCoefficients<Dim>& b,
                                        const LimiterValues<Dim>& phi) {
    DiffusionCoefficients<Dim> r;
    for (int i = 0; i < Dim + 2; ++i) {
        const double mixed = (1.0 - phi[i]) * a[i] + phi[i] * b[i];
        r[i] = std::min(std::max(mixed, std::min(a[i], b[i])), std::max(a[i], b[i]));
    }
    return r;
}

/// Diffusion vector for any scheme. `phi` is only read by the limiter schemes.
template <int Dim>
inline DiffusionCoefficients<Dim> alpha(SchemeId id, const SideState<Dim>& L, const SideState<Dim>& R,
                                        const LimiterValues<Dim>& phi, const SwitchParams& sw) {
    switch (id) {
        case SchemeId::Llf:
            return alpha_llf(L, R);
        case SchemeId::MoversN:
            return alpha_movers_n(L, R, sw);
        case SchemeId::MoversE:
            return alpha_llf_es(L, R);
        case SchemeId::MoversL:
            return blend(alpha_movers_n(L, R, sw), alpha_llf(L, R), phi);
        case SchemeId::MoversLE:
            return blend(alpha_movers_n(L, R, sw), alpha_llf_es(L, R), phi);
    }
    return alpha_llf(L, R);
}

template <int Dim>
inline Flux<Dim> interface_flux(const SideState<Dim>& L, const SideState<Dim>& R,
                                const DiffusionCoefficients<Dim>& alpha) {
    Flux<Dim> F;
    for (int i = 0; i < Dim + 2; ++i) {
        F[i] = 0.5 * (L.F[i] + R.F[i]) - 0.5 * (alpha[i] * (R.U[i] - L.U[i]));
    }
    return F;
}

}  // namespace frame

namespace detail {

template <int Dim>
inline std::pair<frame::SideState<Dim>, frame::SideState<Dim>> face_states(const Conserved<Dim>& UL,
                                                                           const Conserved<Dim>& UR,
                                                                           const GasModel& gas, Normal n) {
    require_unit(n);
    const auto L = to_face_frame(UL, n);
    const auto R = to_face_frame(UR, n);
    conserved_to_primitive<Dim>(L, gas);
    conserved_to_primitive<Dim>(R, gas);
    return {frame::side_state<Dim>(L, gas), frame::side_state<Dim>(R, gas)};
}

template <int Dim>
inline Stencil<Dim> rotate_stencil(const Stencil<Dim>& st, Normal n) {
    Stencil<Dim> r;
    for (std::size_t k = 0; k < 4; ++k) r[k] = to_face_frame(st[k], n);
    return r;
}

}  // namespace detail

// Public per-interface API. Coefficients are expressed in the face-normal
// frame of `n`; in 1D with the default normal that is the plain x-frame.

template <int Dim>
DiffusionCoefficients<Dim> alpha_llf(const Conserved<Dim>& UL, const Conserved<Dim>& UR, const GasModel& gas,
                                     Normal n = {}) {
    const auto [L, R] = detail::face_states(UL, UR, gas, n);
    return frame::alpha_llf(L, R);
}

template <int Dim>
DiffusionCoefficients<Dim> alpha_llf_es(const Conserved<Dim>& UL, const Conserved<Dim>& UR, const GasModel& gas,
                                        Normal n = {}) {
    const auto [L, R] = detail::face_states(UL, UR, gas, n);
    return frame::alpha_llf_es(L, R);
}

template <int Dim>
DiffusionCoefficients<Dim> alpha_movers_n(const Conserved<Dim>& UL, const Conserved<Dim>& UR, const GasModel& gas,
                                          Normal n = {}, const SwitchParams& sw = {}) {
    const auto [L, R] = detail::face_states(UL, UR, gas, n);
    return frame::alpha_movers_n(L, R, sw);
}

/// Limiter values of the stencil around face j+1/2 (components in the face frame).
template <int Dim>
LimiterValues<Dim> limiter_phi(const Stencil<Dim>& stencil, const SwitchParams& sw = {}, Normal n = {}) {
    return frame::limiter_phi(detail::rotate_stencil(stencil, n), sw);
}

/// Limiter-blended coefficient toward the LLF value in smooth regions. The
/// face states are the stencil's middle pair.
template <int Dim>
DiffusionCoefficients<Dim> alpha_movers_l(const Stencil<Dim>& stencil, const GasModel& gas, Normal n = {},
                                          const SwitchParams& sw = {}) {
    const auto [L, R] = detail::face_states(stencil[1], stencil[2], gas, n);
    return frame::blend(frame::alpha_movers_n(L, R, sw), frame::alpha_llf(L, R), limiter_phi(stencil, sw, n));
}

/// Limiter-blended coefficient toward the entropy-equation LLF value.
template <int Dim>
DiffusionCoefficients<Dim> alpha_movers_le(const Stencil<Dim>& stencil, const GasModel& gas, Normal n = {},
                                           const SwitchParams& sw = {}) {
    const auto [L, R] = detail::face_states(stencil[1], stencil[2], gas, n);
    return frame::blend(frame::alpha_movers_n(L, R, sw), frame::alpha_llf_es(L, R), limiter_phi(stencil, sw, n));
}

/// Central flux plus componentwise diffusion, returned in the global frame.
template <int Dim>
Flux<Dim> interface_flux(const Conserved<Dim>& UL, const Conserved<Dim>& UR, const DiffusionCoefficients<Dim>& alpha,
                         const GasModel& gas, Normal n = {}) {
    for (double a : alpha) {
        if (!(a >= 0.0)) throw InvalidStateError("diffusion coefficients must be non-negative");
    }
    const auto [L, R] = detail::face_states(UL, UR, gas, n);
    return from_face_frame(frame::interface_flux(L, R, alpha), n);
}

/// Full numerical flux for one face. Without a stencil the limiter falls back
/// to phi = 1 (the smooth-region coefficient).
template <int Dim>
Flux<Dim> numerical_flux(SchemeId id, const Conserved<Dim>& UL, const Conserved<Dim>& UR,
                         const Stencil<Dim>* stencil, const GasModel& gas, Normal n = {},
                         const SwitchParams& sw = {}) {
    const auto [L, R] = detail::face_states(UL, UR, gas, n);
    LimiterValues<Dim> phi;
    phi.values.fill(1.0);
    if (stencil != nullptr && uses_limiter(id)) phi = limiter_phi(*stencil, sw, n);
    return from_face_frame(frame::interface_flux(L, R, frame::alpha(id, L, R, phi, sw)), n);
}

}  // namespace movers
