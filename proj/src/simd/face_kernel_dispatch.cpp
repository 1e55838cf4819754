#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "movers/simd/face_kernel.hpp"

namespace movers::simd {
namespace {

bool cpu_has_avx2() {
#if MOVERS_HAVE_AVX2_KERNEL && (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

Isa pick_default() {
    if (const char* env = std::getenv("MOVERS_ISA")) {
        const std::string_view want(env);
        if (want == "scalar") return Isa::Scalar;
        if (want == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{pick_default()};
    return isa;
}

}  // namespace

bool isa_available(Isa isa) {
    if (isa == Isa::Scalar) return true;
    static const bool avx2 = cpu_has_avx2();
    return avx2;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_available(isa)) throw std::runtime_error(std::string("ISA not available: ") + isa_name(isa));
    active().store(isa, std::memory_order_relaxed);
}

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

#if !MOVERS_HAVE_AVX2_KERNEL
void face_fluxes_avx2(const FaceBatch<1>& batch, const KernelParams& params) { face_fluxes_scalar(batch, params); }
void face_fluxes_avx2(const FaceBatch<2>& batch, const KernelParams& params) { face_fluxes_scalar(batch, params); }
#endif

void face_fluxes(const FaceBatch<1>& batch, const KernelParams& params, Isa isa) {
    if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
        face_fluxes_avx2(batch, params);
    } else {
        face_fluxes_scalar(batch, params);
    }
}

void face_fluxes(const FaceBatch<2>& batch, const KernelParams& params, Isa isa) {
    if (isa == Isa::Avx2 && isa_available(Isa::Avx2)) {
        face_fluxes_avx2(batch, params);
    } else {
        face_fluxes_scalar(batch, params);
    }
}

}  // namespace movers::simd
