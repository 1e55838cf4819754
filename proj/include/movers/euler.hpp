#pragma once

// Calorically perfect gas primitives for the 1D and 2D Euler equations.
//
// Conserved layout: (rho, rho*u, E) in 1D and (rho, rho*u, rho*v, E) in 2D,
// where E = rho*e + rho*|v|^2/2 is the total energy per unit volume.
//
// All 2D directional quantities are evaluated in a face-normal frame: the
// momentum is rotated to (normal, tangential) components, the 1D-style
// x-direction formula is applied, and vector components are rotated back.
// Axis-aligned normals make the rotation exact.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <string>

#include "movers/errors.hpp"

namespace movers {

struct GasModel {
    double gamma = 1.4;
    /// Specific heat at constant volume; only enters the entropy functional.
    double cv = 2.5;

    void validate() const {
        if (!(gamma > 1.0) || !(cv > 0.0)) {
            throw ConfigError("GasModel requires gamma > 1 and cv > 0");
        }
    }
};

/// Pointwise primitive state. In 1D the v component is ignored and left zero.
struct Primitive {
    double rho = 1.0;
    double u = 0.0;
    double v = 0.0;
    double p = 1.0;

    constexpr Primitive() = default;
    constexpr Primitive(double rho_, double u_, double p_) : rho(rho_), u(u_), v(0.0), p(p_) {}
    constexpr Primitive(double rho_, double u_, double v_, double p_) : rho(rho_), u(u_), v(v_), p(p_) {}

    friend constexpr bool operator==(const Primitive&, const Primitive&) = default;
};

/// Fixed-size vector over the conservation laws. The tag keeps conserved
/// states, fluxes and diffusion coefficients from being mixed up.
template <int Dim, class Tag>
struct VarVector {
    static_assert(Dim == 1 || Dim == 2);
    static constexpr int kVars = Dim + 2;

    std::array<double, kVars> values{};

    constexpr double& operator[](std::size_t i) { return values[i]; }
    constexpr double operator[](std::size_t i) const { return values[i]; }
    static constexpr std::size_t size() { return kVars; }

    constexpr auto begin() { return values.begin(); }
    constexpr auto end() { return values.end(); }
    constexpr auto begin() const { return values.begin(); }
    constexpr auto end() const { return values.end(); }

    friend constexpr bool operator==(const VarVector&, const VarVector&) = default;
};

struct ConservedTag;
struct FluxTag;

template <int Dim>
using Conserved = VarVector<Dim, ConservedTag>;
template <int Dim>
using Flux = VarVector<Dim, FluxTag>;

template <int Dim>
constexpr int energy_index = Dim + 1;

/// Unit direction. In 1D only nx = +1 or -1 is meaningful.
struct Normal {
    double nx = 1.0;
    double ny = 0.0;

    constexpr Normal operator-() const { return {-nx, -ny}; }
    friend constexpr bool operator==(const Normal&, const Normal&) = default;
};

inline void require_unit(Normal n) {
    const double len2 = n.nx * n.nx + n.ny * n.ny;
    if (!(std::abs(len2 - 1.0) <= 1e-12)) {
        throw ConfigError("normal must have unit length");
    }
}

/// Sorted characteristic speeds along a direction: (un-a, un, un+a) in 1D and
/// (un-a, un, un, un+a) in 2D.
template <int Dim>
using WaveSpeeds = std::array<double, Dim + 2>;

inline void require_valid(const Primitive& w) {
    if (!std::isfinite(w.rho) || !std::isfinite(w.u) || !std::isfinite(w.v) || !std::isfinite(w.p)) {
        throw InvalidStateError("non-finite primitive state");
    }
    if (!(w.rho > 0.0)) throw InvalidStateError("density must be positive, got " + std::to_string(w.rho));
    if (!(w.p > 0.0)) throw InvalidStateError("pressure must be positive, got " + std::to_string(w.p));
}

template <int Dim>
Conserved<Dim> primitive_to_conserved(const Primitive& w, const GasModel& gas) {
    require_valid(w);
    Conserved<Dim> U;
    U[0] = w.rho;
    U[1] = w.rho * w.u;
    if constexpr (Dim == 2) {
        U[2] = w.rho * w.v;
        U[3] = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v);
    } else {
        U[2] = w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u);
    }
    return U;
}

namespace detail {

// Unchecked inversion; the arithmetic here is mirrored by the SIMD kernels.
template <int Dim>
inline Primitive recover(const Conserved<Dim>& U, const GasModel& gas) {
    Primitive w;
    w.rho = U[0];
    w.u = U[1] / w.rho;
    if constexpr (Dim == 2) {
        w.v = U[2] / w.rho;
        const double kinetic = 0.5 * (U[1] * w.u + U[2] * w.v);
        w.p = (gas.gamma - 1.0) * (U[3] - kinetic);
    } else {
        const double kinetic = 0.5 * (U[1] * w.u);
        w.p = (gas.gamma - 1.0) * (U[2] - kinetic);
    }
    return w;
}

// x-direction flux of a state already expressed in the face frame.
template <int Dim>
inline Flux<Dim> frame_flux(const Conserved<Dim>& U, const Primitive& w) {
    Flux<Dim> F;
    F[0] = U[1];
    F[1] = U[1] * w.u + w.p;
    if constexpr (Dim == 2) {
        F[2] = U[1] * w.v;
    }
    F[energy_index<Dim>] = w.u * (U[energy_index<Dim>] + w.p);
    return F;
}

}  // namespace detail

/// Inverse of primitive_to_conserved. Throws InvalidStateError when the
/// recovered density or pressure is not positive.
template <int Dim>
Primitive conserved_to_primitive(const Conserved<Dim>& U, const GasModel& gas) {
    for (double q : U) {
        if (!std::isfinite(q)) throw InvalidStateError("non-finite conserved state");
    }
    if (!(U[0] > 0.0)) throw InvalidStateError("density must be positive, got " + std::to_string(U[0]));
    Primitive w = detail::recover<Dim>(U, gas);
    if (!(w.p > 0.0)) throw InvalidStateError("pressure must be positive, got " + std::to_string(w.p));
    return w;
}

/// Rotate momentum into the (normal, tangential) frame of `n`.
template <int Dim, class Tag>
VarVector<Dim, Tag> to_face_frame(const VarVector<Dim, Tag>& q, Normal n) {
    VarVector<Dim, Tag> r = q;
    if constexpr (Dim == 2) {
        r[1] = q[1] * n.nx + q[2] * n.ny;
        r[2] = q[2] * n.nx - q[1] * n.ny;
    } else {
        r[1] = q[1] * n.nx;
    }
    return r;
}

/// Inverse rotation of to_face_frame.
template <int Dim, class Tag>
VarVector<Dim, Tag> from_face_frame(const VarVector<Dim, Tag>& q, Normal n) {
    VarVector<Dim, Tag> r = q;
    if constexpr (Dim == 2) {
        r[1] = q[1] * n.nx - q[2] * n.ny;
        r[2] = q[1] * n.ny + q[2] * n.nx;
    } else {
        r[1] = q[1] * n.nx;
    }
    return r;
}

inline double normal_velocity(const Primitive& w, Normal n) { return w.u * n.nx + w.v * n.ny; }

/// Flux through a surface with unit normal `n` (the x-flux for the default normal).
template <int Dim>
Flux<Dim> physical_flux(const Conserved<Dim>& U, const GasModel& gas, Normal n = {}) {
    const auto Uf = to_face_frame(U, n);
    const Primitive w = conserved_to_primitive<Dim>(Uf, gas);
    return from_face_frame(detail::frame_flux<Dim>(Uf, w), n);
}

inline double sound_speed(const Primitive& w, const GasModel& gas) {
    require_valid(w);
    return std::sqrt(gas.gamma * w.p / w.rho);
}

template <int Dim>
WaveSpeeds<Dim> eigenvalues(const Primitive& w, const GasModel& gas, Normal n = {}) {
    const double a = sound_speed(w, gas);
    const double un = normal_velocity(w, n);
    if constexpr (Dim == 2) {
        return {un - a, un, un, un + a};
    } else {
        return {un - a, un, un + a};
    }
}

inline double spectral_radius(const Primitive& w, const GasModel& gas, Normal n = {}) {
    return std::abs(normal_velocity(w, n)) + sound_speed(w, gas);
}

/// Specific entropy S = cv * log(p / rho^gamma) with the additive constant
/// set to zero. Physical entropy: it does not decrease across shocks.
inline double specific_entropy(const Primitive& w, const GasModel& gas) {
    require_valid(w);
    return gas.cv * std::log(w.p / std::pow(w.rho, gas.gamma));
}

/// rho*S. Mathematical (convex) entropy is the negative of this.
inline double entropy_density(const Primitive& w, const GasModel& gas) {
    return w.rho * specific_entropy(w, gas);
}

inline double mach_number(const Primitive& w, const GasModel& gas) {
    return std::sqrt(w.u * w.u + w.v * w.v) / sound_speed(w, gas);
}

inline double specific_internal_energy(const Primitive& w, const GasModel& gas) {
    return w.p / ((gas.gamma - 1.0) * w.rho);
}

}  // namespace movers
