#include "iontrap/kernels.hpp"

#include <stdexcept>

namespace iontrap::kern {

const char* isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

Isa detect_isa() noexcept {
#if defined(IONTRAP_HAVE_AVX2_KERNELS) && defined(__GNUC__)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return Isa::avx2;
#endif
    return Isa::scalar;
}

namespace {
Isa g_active = detect_isa();
}

AxialPotentialFn axial_potential = nullptr;
AxialGradientFn axial_gradient = nullptr;
FullPotentialFn full_potential = nullptr;
FullGradientFn full_gradient = nullptr;

namespace {

void bind(Isa isa) {
    switch (isa) {
#if defined(IONTRAP_HAVE_AVX2_KERNELS)
        case Isa::avx2:
            axial_potential = &avx2::axial_potential;
            axial_gradient = &avx2::axial_gradient;
            full_potential = &avx2::full_potential;
            full_gradient = &avx2::full_gradient;
            return;
#endif
        default:
            axial_potential = &scalar::axial_potential;
            axial_gradient = &scalar::axial_gradient;
            full_potential = &scalar::full_potential;
            full_gradient = &scalar::full_gradient;
            return;
    }
}

const bool g_bound = [] {
    bind(g_active);
    return true;
}();

}  // namespace

Isa active_isa() noexcept { return g_active; }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && detect_isa() != Isa::avx2)
        throw std::invalid_argument(
            "kernel isa 'avx2' not supported on this CPU");
    g_active = isa;
    bind(isa);
}

}  // namespace iontrap::kern
