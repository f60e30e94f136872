#ifndef IONTRAP_KERNELS_HPP
#define IONTRAP_KERNELS_HPP

#include <cstddef>

// Pairwise Coulomb arithmetic kernels. These are the inner loops of every
// solver in the library: the axial pair sums drive the chain equilibrium
// Newton iteration, the 3D pair sums drive the zigzag minimization oracle.
//
// Two implementations share one contract: a scalar reference (compensated
// summation, accuracy-first) and an AVX2 variant. A function-pointer table
// is bound once at startup to the best instruction set the CPU supports;
// force_isa() rebinds it, which the CLI exposes and the equivalence tests
// use. Both variants are required to agree to tight relative tolerance on
// random inputs (tests/test_kernels.cpp).
//
// Conventions, positions in units of the trap length scale:
//   axial_potential  V(u)    = sum_i u_i^2           + sum_{i != j} 1/|u_i - u_j|
//   axial_gradient   g_i     = 2 u_i - 2 sum_{j != i} sign(u_i - u_j)/(u_i - u_j)^2
//   full_potential   V(r)    = sum_i [z_i^2 + (x_i^2 + y_i^2) * inv_alpha]
//                              + sum_{i != j} 1/|r_i - r_j|
//   full_gradient    gz_i    = 2 z_i           - 2 sum_{j != i} (z_i - z_j)/r_ij^3
//                    gx_i    = 2 inv_alpha x_i - 2 sum_{j != i} (x_i - x_j)/r_ij^3   (gy alike)
//
// The i != j double sum counts each pair twice, which is exactly the
// Coulomb coefficient of the dimensionless potential (2 per unordered
// pair). Kernels assume distinct positions; coincident ions produce inf,
// callers validate.

namespace iontrap::kern {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;

// Best instruction set this CPU supports.
Isa detect_isa() noexcept;

// Instruction set the dispatch table is currently bound to.
Isa active_isa() noexcept;

// Rebind the dispatch table. Throws std::invalid_argument if this CPU
// does not support the requested set.
void force_isa(Isa isa);

using AxialPotentialFn = double (*)(const double* u, std::size_t n);
using AxialGradientFn = void (*)(const double* u, std::size_t n, double* g);
using FullPotentialFn = double (*)(const double* x, const double* y,
                                   const double* z, std::size_t n,
                                   double inv_alpha);
using FullGradientFn = void (*)(const double* x, const double* y,
                                const double* z, std::size_t n,
                                double inv_alpha, double* gx, double* gy,
                                double* gz);

extern AxialPotentialFn axial_potential;
extern AxialGradientFn axial_gradient;
extern FullPotentialFn full_potential;
extern FullGradientFn full_gradient;

namespace scalar {
double axial_potential(const double* u, std::size_t n);
void axial_gradient(const double* u, std::size_t n, double* g);
double full_potential(const double* x, const double* y, const double* z,
                      std::size_t n, double inv_alpha);
void full_gradient(const double* x, const double* y, const double* z,
                   std::size_t n, double inv_alpha, double* gx, double* gy,
                   double* gz);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define IONTRAP_HAVE_AVX2_KERNELS 1
namespace avx2 {
double axial_potential(const double* u, std::size_t n);
void axial_gradient(const double* u, std::size_t n, double* g);
double full_potential(const double* x, const double* y, const double* z,
                      std::size_t n, double inv_alpha);
void full_gradient(const double* x, const double* y, const double* z,
                   std::size_t n, double inv_alpha, double* gx, double* gy,
                   double* gz);
}  // namespace avx2
#endif

}  // namespace iontrap::kern

#endif
