#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "iontrap/kernels.hpp"

using namespace iontrap;

namespace {

std::vector<double> random_positions(std::mt19937& rng, std::size_t n,
                                    double spread) {
    std::uniform_real_distribution<double> dist(-spread, spread);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

bool close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * (1.0 + std::max(std::abs(a), std::abs(b)));
}

}  // namespace

TEST_CASE("dispatch table is bound to a supported instruction set") {
    const kern::Isa isa = kern::active_isa();
    CHECK((isa == kern::Isa::scalar || isa == kern::Isa::avx2));
    CHECK(kern::axial_potential != nullptr);
    CHECK(kern::axial_gradient != nullptr);
    CHECK(kern::full_potential != nullptr);
    CHECK(kern::full_gradient != nullptr);
    CHECK(kern::isa_name(isa) != nullptr);
}

TEST_CASE("force_isa rebinds and restores") {
    const kern::Isa original = kern::active_isa();
    kern::force_isa(kern::Isa::scalar);
    CHECK(kern::active_isa() == kern::Isa::scalar);
    CHECK(kern::axial_potential == &kern::scalar::axial_potential);
    kern::force_isa(original);
    CHECK(kern::active_isa() == original);
}

#if defined(IONTRAP_HAVE_AVX2_KERNELS)

TEST_CASE("scalar and avx2 kernels agree on random inputs") {
    if (kern::detect_isa() != kern::Isa::avx2) {
        MESSAGE("avx2 not supported on this CPU; skipping equivalence");
        return;
    }
    std::mt19937 rng(20210915);
    // Sizes straddle the 4-lane boundaries to exercise remainder handling.
    for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 65u, 130u}) {
        for (int rep = 0; rep < 20; ++rep) {
            const auto u = random_positions(rng, n, 10.0);

            const double vs = kern::scalar::axial_potential(u.data(), n);
            const double va = kern::avx2::axial_potential(u.data(), n);
            CHECK(close(vs, va, 1e-12));

            std::vector<double> gs(n), ga(n);
            kern::scalar::axial_gradient(u.data(), n, gs.data());
            kern::avx2::axial_gradient(u.data(), n, ga.data());
            for (std::size_t i = 0; i < n; ++i) CHECK(close(gs[i], ga[i], 1e-11));

            const auto x = random_positions(rng, n, 5.0);
            const auto y = random_positions(rng, n, 5.0);
            const auto z = random_positions(rng, n, 10.0);
            const double inv_alpha = 1.0 / 0.37;

            const double fs =
                kern::scalar::full_potential(x.data(), y.data(), z.data(), n,
                                             inv_alpha);
            const double fa = kern::avx2::full_potential(x.data(), y.data(),
                                                         z.data(), n, inv_alpha);
            CHECK(close(fs, fa, 1e-12));

            std::vector<double> gxs(n), gys(n), gzs(n), gxa(n), gya(n), gza(n);
            kern::scalar::full_gradient(x.data(), y.data(), z.data(), n,
                                        inv_alpha, gxs.data(), gys.data(),
                                        gzs.data());
            kern::avx2::full_gradient(x.data(), y.data(), z.data(), n,
                                      inv_alpha, gxa.data(), gya.data(),
                                      gza.data());
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(close(gxs[i], gxa[i], 1e-11));
                CHECK(close(gys[i], gya[i], 1e-11));
                CHECK(close(gzs[i], gza[i], 1e-11));
            }
        }
    }
}

#endif  // IONTRAP_HAVE_AVX2_KERNELS
