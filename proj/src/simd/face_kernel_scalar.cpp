#include "movers/schemes.hpp"
#include "movers/simd/face_kernel.hpp"

namespace movers::simd {
namespace {

SchemeId to_scheme(KernelScheme s) { return static_cast<SchemeId>(static_cast<int>(s)); }

template <int Dim>
void run_scalar(const FaceBatch<Dim>& b, const KernelParams& kp) {
    constexpr int N = Dim + 2;
    const GasModel gas{kp.gamma, 1.0 / (kp.gamma - 1.0)};
    const SwitchParams sw{kp.eps0, kp.delta0, kp.scalar_limiter ? LimiterMode::Scalar : LimiterMode::PerComponent,
                          kp.per_component_steady ? SteadyTest::PerComponent : SteadyTest::FluxVector};
    const SchemeId scheme = to_scheme(kp.scheme);
    const bool limited = uses_limiter(scheme);
    const bool want_alpha = b.alpha[0] != nullptr;

    for (std::size_t f = 0; f < b.count; ++f) {
        Conserved<Dim> UL;
        Conserved<Dim> UR;
        for (int c = 0; c < N; ++c) {
            UL[c] = b.left[c][f];
            UR[c] = b.right[c][f];
        }
        const auto L = frame::side_state<Dim>(UL, gas);
        const auto R = frame::side_state<Dim>(UR, gas);

        LimiterValues<Dim> phi;
        phi.values.fill(1.0);
        if (limited && (b.full_stencil == nullptr || b.full_stencil[f] != 0)) {
            Stencil<Dim> st;
            for (int k = 0; k < 4; ++k) {
                for (int c = 0; c < N; ++c) st[k][c] = b.stencil[k][c][f];
            }
            phi = frame::limiter_phi<Dim>(st, sw);
        }

        const auto alpha = frame::alpha<Dim>(scheme, L, R, phi, sw);
        const auto F = frame::interface_flux<Dim>(L, R, alpha);
        for (int c = 0; c < N; ++c) {
            b.flux[c][f] = F[c];
            if (want_alpha) b.alpha[c][f] = alpha[c];
        }
    }
}

}  // namespace

void face_fluxes_scalar(const FaceBatch<1>& batch, const KernelParams& params) { run_scalar<1>(batch, params); }
void face_fluxes_scalar(const FaceBatch<2>& batch, const KernelParams& params) { run_scalar<2>(batch, params); }

}  // namespace movers::simd
