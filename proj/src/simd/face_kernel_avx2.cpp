// AVX2 variant of the batched face-flux kernel. Built with -mavx2 (no FMA).
//
// Every helper has internal linkage and no library headers besides the
// intrinsics are pulled in, so no AVX2-encoded inline function can be picked up
// by the linker for other translation units.
//
// The arithmetic follows frame:: in schemes.hpp operation by operation. std::max
// and std::min are reproduced with compare+blend so that even equal operands of
// different sign resolve the same way.

#include <immintrin.h>

#include "movers/simd/face_kernel.hpp"

namespace movers::simd {
namespace {

using V = __m256d;
constexpr int kLanes = 4;

inline V splat(double x) { return _mm256_set1_pd(x); }
inline V vabs(V x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }
// std::max(a, b) == (a < b) ? b : a
inline V vmax(V a, V b) { return _mm256_blendv_pd(a, b, _mm256_cmp_pd(a, b, _CMP_LT_OQ)); }
// std::min(a, b) == (b < a) ? b : a
inline V vmin(V a, V b) { return _mm256_blendv_pd(a, b, _mm256_cmp_pd(b, a, _CMP_LT_OQ)); }
inline V select(V mask, V if_true, V if_false) { return _mm256_blendv_pd(if_false, if_true, mask); }
inline V less(V a, V b) { return _mm256_cmp_pd(a, b, _CMP_LT_OQ); }

template <int Dim>
struct Side {
    V U[Dim + 2];
    V F[Dim + 2];
    V u;
    V a;
};

template <int Dim>
inline void side_state(Side<Dim>& s, V gamma, V gm1) {
    constexpr int E = Dim + 1;
    const V half = splat(0.5);
    const V rho = s.U[0];
    const V u = _mm256_div_pd(s.U[1], rho);
    V p;
    V v = splat(0.0);
    if constexpr (Dim == 2) {
        v = _mm256_div_pd(s.U[2], rho);
        const V kinetic = _mm256_mul_pd(half, _mm256_add_pd(_mm256_mul_pd(s.U[1], u), _mm256_mul_pd(s.U[2], v)));
        p = _mm256_mul_pd(gm1, _mm256_sub_pd(s.U[3], kinetic));
    } else {
        const V kinetic = _mm256_mul_pd(half, _mm256_mul_pd(s.U[1], u));
        p = _mm256_mul_pd(gm1, _mm256_sub_pd(s.U[2], kinetic));
    }
    s.F[0] = s.U[1];
    s.F[1] = _mm256_add_pd(_mm256_mul_pd(s.U[1], u), p);
    if constexpr (Dim == 2) {
        s.F[2] = _mm256_mul_pd(s.U[1], v);
    }
    s.F[E] = _mm256_mul_pd(u, _mm256_add_pd(s.U[E], p));
    s.u = u;
    s.a = _mm256_sqrt_pd(_mm256_div_pd(_mm256_mul_pd(gamma, p), rho));
}

template <int Dim>
inline void eigen_bounds(const Side<Dim>& L, const Side<Dim>& R, V& lmin, V& lmax) {
    auto one_side = [](const Side<Dim>& s, V& mn, V& mx) {
        const V m1 = vabs(_mm256_sub_pd(s.u, s.a));
        const V m2 = vabs(s.u);
        const V m3 = vabs(_mm256_add_pd(s.u, s.a));
        mn = vmin(vmin(m1, m2), m3);
        mx = vmax(vmax(m1, m2), m3);
    };
    V mn_l, mx_l, mn_r, mx_r;
    one_side(L, mn_l, mx_l);
    one_side(R, mn_r, mx_r);
    lmin = vmax(mn_l, mn_r);
    lmax = vmax(mx_l, mx_r);
}

inline V limiter_component(V s0, V s1, V s2, V s3, V delta0) {
    const V zero = splat(0.0);
    const V one = splat(1.0);
    const V d0 = _mm256_sub_pd(s1, s0);
    const V d1 = _mm256_sub_pd(s2, s1);
    const V d2 = _mm256_sub_pd(s3, s2);
    const V delta = _mm256_mul_pd(delta0, vmax(one, vmax(vabs(s1), vabs(s2))));
    const V sgn = select(_mm256_cmp_pd(d1, zero, _CMP_GT_OQ), one,
                         select(_mm256_cmp_pd(d1, zero, _CMP_LT_OQ), splat(-1.0), zero));
    const V rp_guard = _mm256_div_pd(_mm256_mul_pd(sgn, d0), delta);
    const V rm_guard = _mm256_div_pd(_mm256_mul_pd(sgn, d2), delta);
    const V rp_plain = _mm256_div_pd(d0, d1);
    const V rm_plain = _mm256_div_pd(d2, d1);
    const V small = less(vabs(d1), delta);
    const V rp = select(small, rp_guard, rp_plain);
    const V rm = select(small, rm_guard, rm_plain);
    const V positive = _mm256_and_pd(_mm256_cmp_pd(rp, zero, _CMP_GT_OQ), _mm256_cmp_pd(rm, zero, _CMP_GT_OQ));
    return _mm256_and_pd(positive, vmin(one, vmin(rp, rm)));
}

inline V blend(V a, V b, V phi) {
    const V mixed = _mm256_add_pd(_mm256_mul_pd(_mm256_sub_pd(splat(1.0), phi), a), _mm256_mul_pd(phi, b));
    return vmin(vmax(mixed, vmin(a, b)), vmax(a, b));
}

template <int Dim>
struct Lanes {
    V left[Dim + 2];
    V right[Dim + 2];
    V stencil[4][Dim + 2];
    V full;  // all-ones where the stencil is complete
};

template <int Dim>
inline void compute(const Lanes<Dim>& in, const KernelParams& kp, V flux[Dim + 2], V alpha_out[Dim + 2]) {
    constexpr int N = Dim + 2;
    const V gamma = splat(kp.gamma);
    const V gm1 = splat(kp.gamma - 1.0);
    const V half = splat(0.5);
    const V one = splat(1.0);
    const V zero = splat(0.0);

    Side<Dim> L;
    Side<Dim> R;
    for (int c = 0; c < N; ++c) {
        L.U[c] = in.left[c];
        R.U[c] = in.right[c];
    }
    side_state<Dim>(L, gamma, gm1);
    side_state<Dim>(R, gamma, gm1);

    const KernelScheme scheme = kp.scheme;
    const bool need_movers = scheme == KernelScheme::MoversN || scheme == KernelScheme::MoversL ||
                             scheme == KernelScheme::MoversLE;

    V movers[N];
    if (need_movers) {
        V lmin, lmax;
        eigen_bounds<Dim>(L, R, lmin, lmax);
        const V eps0 = splat(kp.eps0);
        V flux_equal[N];
        V all_equal = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
        for (int c = 0; c < N; ++c) {
            const V dF = _mm256_sub_pd(R.F[c], L.F[c]);
            const V tol_f = _mm256_mul_pd(eps0, vmax(one, vmax(vabs(L.F[c]), vabs(R.F[c]))));
            flux_equal[c] = less(vabs(dF), tol_f);
            all_equal = _mm256_and_pd(all_equal, flux_equal[c]);
        }
        for (int c = 0; c < N; ++c) {
            const V dU = _mm256_sub_pd(R.U[c], L.U[c]);
            const V dF = _mm256_sub_pd(R.F[c], L.F[c]);
            const V tol_u = _mm256_mul_pd(eps0, vmax(one, vmax(vabs(L.U[c]), vabs(R.U[c]))));
            const V general = vmin(vmax(vabs(_mm256_div_pd(dF, dU)), lmin), lmax);
            const V steady = kp.per_component_steady ? flux_equal[c] : all_equal;
            const V s = select(steady, zero, general);
            movers[c] = select(less(vabs(dU), tol_u), lmin, s);
        }
    }

    V base = zero;
    if (scheme == KernelScheme::Llf || scheme == KernelScheme::MoversL) {
        base = vmax(_mm256_add_pd(vabs(L.u), L.a), _mm256_add_pd(vabs(R.u), R.a));
    } else if (scheme == KernelScheme::MoversE || scheme == KernelScheme::MoversLE) {
        base = vmax(vabs(L.u), vabs(R.u));
    }

    V alpha[N];
    if (scheme == KernelScheme::Llf || scheme == KernelScheme::MoversE) {
        for (int c = 0; c < N; ++c) alpha[c] = base;
    } else if (scheme == KernelScheme::MoversN) {
        for (int c = 0; c < N; ++c) alpha[c] = movers[c];
    } else {
        const V delta0 = splat(kp.delta0);
        V phi[N];
        for (int c = 0; c < N; ++c) {
            phi[c] = limiter_component(in.stencil[0][c], in.stencil[1][c], in.stencil[2][c], in.stencil[3][c], delta0);
        }
        if (kp.scalar_limiter) {
            V m = phi[0];
            for (int c = 1; c < N; ++c) m = vmin(m, phi[c]);
            for (int c = 0; c < N; ++c) phi[c] = m;
        }
        for (int c = 0; c < N; ++c) {
            phi[c] = select(in.full, phi[c], one);
            alpha[c] = blend(movers[c], base, phi[c]);
        }
    }

    for (int c = 0; c < N; ++c) {
        const V avg = _mm256_mul_pd(half, _mm256_add_pd(L.F[c], R.F[c]));
        const V diff = _mm256_mul_pd(half, _mm256_mul_pd(alpha[c], _mm256_sub_pd(R.U[c], L.U[c])));
        flux[c] = _mm256_sub_pd(avg, diff);
        alpha_out[c] = alpha[c];
    }
}

inline V full_mask(const std::uint8_t* flags, std::size_t f, std::size_t n) {
    if (flags == nullptr) return _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    long long m[kLanes];
    for (int l = 0; l < kLanes; ++l) {
        const std::size_t k = f + static_cast<std::size_t>(l) < n ? f + static_cast<std::size_t>(l) : f;
        m[l] = flags[k] != 0 ? -1 : 0;
    }
    return _mm256_castsi256_pd(_mm256_set_epi64x(m[3], m[2], m[1], m[0]));
}

// Loads four lanes starting at f; lanes past n repeat face f.
inline V load(const double* p, std::size_t f, std::size_t n) {
    if (f + kLanes <= n) return _mm256_loadu_pd(p + f);
    double tmp[kLanes];
    for (int l = 0; l < kLanes; ++l) {
        const std::size_t k = f + static_cast<std::size_t>(l);
        tmp[l] = k < n ? p[k] : p[f];
    }
    return _mm256_loadu_pd(tmp);
}

inline void store(double* p, std::size_t f, std::size_t n, V x) {
    if (f + kLanes <= n) {
        _mm256_storeu_pd(p + f, x);
        return;
    }
    double tmp[kLanes];
    _mm256_storeu_pd(tmp, x);
    for (int l = 0; l < kLanes && f + static_cast<std::size_t>(l) < n; ++l) p[f + static_cast<std::size_t>(l)] = tmp[l];
}

template <int Dim>
void run_avx2(const FaceBatch<Dim>& b, const KernelParams& kp) {
    constexpr int N = Dim + 2;
    const bool limited = kp.scheme == KernelScheme::MoversL || kp.scheme == KernelScheme::MoversLE;
    const bool want_alpha = b.alpha[0] != nullptr;
    const std::size_t n = b.count;

    for (std::size_t f = 0; f < n; f += kLanes) {
        Lanes<Dim> in;
        for (int c = 0; c < N; ++c) {
            in.left[c] = load(b.left[c], f, n);
            in.right[c] = load(b.right[c], f, n);
        }
        if (limited) {
            for (int k = 0; k < 4; ++k) {
                for (int c = 0; c < N; ++c) in.stencil[k][c] = load(b.stencil[k][c], f, n);
            }
            in.full = full_mask(b.full_stencil, f, n);
        }
        V flux[N];
        V alpha[N];
        compute<Dim>(in, kp, flux, alpha);
        for (int c = 0; c < N; ++c) {
            store(b.flux[c], f, n, flux[c]);
            if (want_alpha) store(b.alpha[c], f, n, alpha[c]);
        }
    }
}

}  // namespace

void face_fluxes_avx2(const FaceBatch<1>& batch, const KernelParams& params) { run_avx2<1>(batch, params); }
void face_fluxes_avx2(const FaceBatch<2>& batch, const KernelParams& params) { run_avx2<2>(batch, params); }

}  // namespace movers::simd
