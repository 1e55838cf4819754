#pragma once

// Batched face-flux kernels.
//
// The solvers gather the face-frame states of many faces into structure-of-arrays
// buffers and evaluate them in one call. Two implementations exist:
//
//   * scalar: a loop over the per-interface reference routines in schemes.hpp
//   * avx2:   four faces per instruction, same operation order, no FMA
//
// The AVX2 variant is compiled in its own translation unit with -mavx2 and
// selected at runtime when the CPU reports support. Both produce identical
// doubles for identical inputs (signed zeros aside); tests/test_face_kernel.cpp
// enforces this.
//
// This header is deliberately free of inline library code so it can be included
// by the AVX2 translation unit without leaking AVX2-compiled inline functions.

#include <cstddef>
#include <cstdint>

namespace movers::simd {

enum class Isa { Scalar, Avx2 };

/// Scheme selector mirrored from SchemeId so this header stays self-contained.
enum class KernelScheme : int { Llf = 0, MoversN = 1, MoversE = 2, MoversL = 3, MoversLE = 4 };

struct KernelParams {
    KernelScheme scheme = KernelScheme::MoversLE;
    double gamma = 1.4;
    double eps0 = 1e-8;
    double delta0 = 1e-6;
    bool scalar_limiter = false;
    /// Zero-diffusion branch tests each flux component on its own.
    bool per_component_steady = false;
};

/// One batch of faces, all quantities in their own face-normal frame.
/// Component c of face f lives at left[c][f] etc.
template <int Dim>
struct FaceBatch {
    static constexpr int kVars = Dim + 2;

    std::size_t count = 0;
    const double* left[kVars] = {};
    const double* right[kVars] = {};
    /// Cell averages j-1, j, j+1, j+2; read only by the limiter schemes.
    const double* stencil[4][kVars] = {};
    /// Per-face flag; 0 means the stencil is incomplete and phi = 1 is used.
    /// A null pointer means every stencil is complete.
    const std::uint8_t* full_stencil = nullptr;

    double* flux[kVars] = {};
    /// Optional diffusion-coefficient output (all null to skip).
    double* alpha[kVars] = {};
};

void face_fluxes_scalar(const FaceBatch<1>& batch, const KernelParams& params);
void face_fluxes_scalar(const FaceBatch<2>& batch, const KernelParams& params);

/// Available only when the build includes the AVX2 translation unit. Calling
/// it on a CPU without AVX2 is undefined.
void face_fluxes_avx2(const FaceBatch<1>& batch, const KernelParams& params);
void face_fluxes_avx2(const FaceBatch<2>& batch, const KernelParams& params);

/// True when this build carries an AVX2 kernel and the CPU supports it.
bool isa_available(Isa isa);

/// Kernel used by default. Chosen once: the best available ISA, unless the
/// MOVERS_ISA environment variable is "scalar" or "avx2".
Isa active_isa();

/// Override the default for the rest of the process. Throws if unavailable.
void set_active_isa(Isa isa);

const char* isa_name(Isa isa);

void face_fluxes(const FaceBatch<1>& batch, const KernelParams& params, Isa isa);
void face_fluxes(const FaceBatch<2>& batch, const KernelParams& params, Isa isa);

inline void face_fluxes(const FaceBatch<1>& batch, const KernelParams& params) {
    face_fluxes(batch, params, active_isa());
}
inline void face_fluxes(const FaceBatch<2>& batch, const KernelParams& params) {
    face_fluxes(batch, params, active_isa());
}

}  // namespace movers::simd
