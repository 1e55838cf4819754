#include <cmath>
#include <vector>

#include "doctest.h"
#include "movers/cases.hpp"
#include "movers/fv1d.hpp"
#include "movers/fv2d.hpp"
#include "movers/simd/face_kernel.hpp"
#include "support.hpp"

using namespace movers;
using testing_support::kPropertySamples;

namespace {

const GasModel gas{};

template <int Dim>
struct Buffers {
    static constexpr int N = Dim + 2;
    std::vector<double> left[N], right[N], st[4][N];
    std::vector<std::uint8_t> full;
    std::vector<double> flux[N], alpha[N];

    explicit Buffers(std::size_t n) {
        for (int c = 0; c < N; ++c) {
            left[c].resize(n);
            right[c].resize(n);
            flux[c].assign(n, 0.0);
            alpha[c].assign(n, 0.0);
            for (auto& s : st) s[c].resize(n);
        }
        full.resize(n);
    }

    simd::FaceBatch<Dim> batch() {
        simd::FaceBatch<Dim> b;
        b.count = full.size();
        for (int c = 0; c < N; ++c) {
            b.left[c] = left[c].data();
            b.right[c] = right[c].data();
            b.flux[c] = flux[c].data();
            b.alpha[c] = alpha[c].data();
            for (int k = 0; k < 4; ++k) b.stencil[k][c] = st[k][c].data();
        }
        b.full_stencil = full.data();
        return b;
    }
};

Primitive random_state(testing_support::StateGen& gen, int dim) {
    return dim == 1 ? gen.primitive1() : gen.primitive2();
}

/// Random faces mixing generic pairs with the special cases that drive the
/// switches: equal states, contacts, steady shocks, flat limiter centres.
template <int Dim>
Buffers<Dim> random_faces(std::uint64_t seed, std::size_t n) {
    testing_support::StateGen gen(seed);
    Buffers<Dim> buf(n);
    for (std::size_t f = 0; f < n; ++f) {
        Conserved<Dim> s[4];
        for (auto& u : s) u = primitive_to_conserved<Dim>(random_state(gen, Dim), gas);
        switch (f % 6) {
            case 0:
                s[2] = s[1];
                break;
            case 1: {
                Primitive w = conserved_to_primitive<Dim>(s[1], gas);
                w.u = 0.0;
                s[1] = primitive_to_conserved<Dim>(w, gas);
                w.rho *= 2.3;
                s[2] = primitive_to_conserved<Dim>(w, gas);
                break;
            }
            case 2: {
                const auto pair = riemann::steady_shock_pair(gen.uniform(1.1, 8.0), gen.log_uniform(0.1, 10.0),
                                                             gen.log_uniform(0.1, 10.0));
                s[1] = primitive_to_conserved<Dim>(pair[0], gas);
                s[2] = primitive_to_conserved<Dim>(pair[1], gas);
                s[0] = s[1];
                s[3] = s[2];
                break;
            }
            case 3:
                s[0] = s[1];
                break;
            default:
                break;
        }
        for (int c = 0; c < Dim + 2; ++c) {
            buf.left[c][f] = s[1][static_cast<std::size_t>(c)];
            buf.right[c][f] = s[2][static_cast<std::size_t>(c)];
            for (int k = 0; k < 4; ++k) buf.st[k][c][f] = s[k][static_cast<std::size_t>(c)];
        }
        buf.full[f] = static_cast<std::uint8_t>(gen.integer(0, 9) != 0);
    }
    return buf;
}

template <int Dim>
int count_mismatches(const Buffers<Dim>& a, const Buffers<Dim>& b) {
    int bad = 0;
    for (int c = 0; c < Dim + 2; ++c) {
        for (std::size_t f = 0; f < a.full.size(); ++f) {
            // equal as values; a zero may differ in sign
            if (!(a.flux[c][f] == b.flux[c][f]) || !(a.alpha[c][f] == b.alpha[c][f])) ++bad;
        }
    }
    return bad;
}

template <int Dim>
void check_equivalence(std::uint64_t seed, bool scalar_limiter, bool per_component) {
    for (int s = 0; s < 5; ++s) {
        simd::KernelParams kp;
        kp.scheme = static_cast<simd::KernelScheme>(s);
        kp.scalar_limiter = scalar_limiter;
        kp.per_component_steady = per_component;
        // odd count exercises the remainder lanes
        auto a = random_faces<Dim>(seed + static_cast<std::uint64_t>(s), kPropertySamples + 3);
        auto b = a;
        simd::face_fluxes_scalar(a.batch(), kp);
        simd::face_fluxes_avx2(b.batch(), kp);
        INFO("scheme " << s);
        CHECK(count_mismatches(a, b) == 0);
    }
}

template <class State>
bool same_values(const std::vector<State>& a, const std::vector<State>& b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        for (std::size_t c = 0; c < a[k].size(); ++c) {
            if (!(a[k][c] == b[k][c])) return false;
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("face_kernel") {

TEST_CASE("scalar kernel matches the reference per-interface routines") {
    constexpr std::size_t n = 1000;
    auto buf = random_faces<2>(31, n);
    for (SchemeId id : kAllSchemes) {
        simd::KernelParams kp;
        kp.scheme = static_cast<simd::KernelScheme>(static_cast<int>(id));
        simd::face_fluxes_scalar(buf.batch(), kp);
        int bad = 0;
        for (std::size_t f = 0; f < n; ++f) {
            Stencil<2> st;
            Conserved<2> L;
            Conserved<2> R;
            for (std::size_t c = 0; c < 4; ++c) {
                L[c] = buf.left[c][f];
                R[c] = buf.right[c][f];
                for (std::size_t k = 0; k < 4; ++k) st[k][c] = buf.st[k][c][f];
            }
            const auto F = numerical_flux<2>(id, L, R, buf.full[f] ? &st : nullptr, gas, Normal{});
            for (std::size_t c = 0; c < 4; ++c) {
                if (!(F[c] == buf.flux[c][f])) ++bad;
            }
        }
        INFO(to_string(id));
        CHECK(bad == 0);
    }
}

TEST_CASE("scalar and avx2 kernels agree exactly on random faces") {
    if (!simd::isa_available(simd::Isa::Avx2)) {
        MESSAGE("avx2 kernel unavailable; skipped");
        return;
    }
    check_equivalence<1>(100, false, false);
    check_equivalence<2>(200, false, false);
    check_equivalence<1>(300, true, false);
    check_equivalence<2>(400, true, false);
    check_equivalence<1>(500, false, true);
    check_equivalence<2>(600, false, true);
}

TEST_CASE("solvers give identical fields with either kernel") {
    if (!simd::isa_available(simd::Isa::Avx2)) {
        MESSAGE("avx2 kernel unavailable; skipped");
        return;
    }
    for (SchemeId id : kAllSchemes) {
        for (int order : {1, 2}) {
            cases::RunOverrides o;
            o.scheme = id;
            o.order = order;
            o.t_final = 0.05;
            o.isa = simd::Isa::Scalar;
            const auto a = cases::run_case("sod-modified-sonic", o);
            o.isa = simd::Isa::Avx2;
            const auto b = cases::run_case("sod-modified-sonic", o);
            REQUIRE(a.result1->field.storage().size() == b.result1->field.storage().size());
            CHECK(same_values(a.result1->field.storage(), b.result1->field.storage()));

            cases::RunOverrides o2 = o;
            o2.t_final.reset();
            o2.max_steps = 20;
            o2.nx = 40;
            o2.ny = 40;
            o2.isa = simd::Isa::Scalar;
            const auto c = cases::run_case("half-cylinder-m6", o2);
            o2.isa = simd::Isa::Avx2;
            const auto d = cases::run_case("half-cylinder-m6", o2);
            const auto& fc = c.result2->field.storage();
            const auto& fd = d.result2->field.storage();
            REQUIRE(fc.size() == fd.size());
            CHECK(same_values(fc, fd));
        }
    }
}

TEST_CASE("isa names and availability") {
    CHECK(std::string(simd::isa_name(simd::Isa::Scalar)) == "scalar");
    CHECK(std::string(simd::isa_name(simd::Isa::Avx2)) == "avx2");
    CHECK(simd::isa_available(simd::Isa::Scalar));
    CHECK(simd::isa_available(simd::active_isa()));
}

}  // TEST_SUITE
