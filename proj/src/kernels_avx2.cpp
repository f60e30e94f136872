#include "iontrap/kernels.hpp"

#if defined(IONTRAP_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <cmath>

// AVX2 variants, 4 doubles per vector, FMA for the 3D distance math.
// The self-interaction lane (j == i) is handled by blending the
// denominator to 1 and zeroing the lane's contribution, so the j loop
// needs no peeling around i. Each of the four lanes carries its own
// compensated accumulator; the lanes are only combined at the end, which
// keeps the summation noise floor close to the scalar reference.

namespace iontrap::kern::avx2 {

namespace {

// Locals, not namespace-scope __m256d: this TU is compiled with -mavx2,
// and namespace-scope vector constants would run AVX instructions during
// static init even when dispatch never selects this variant.
inline __m256d sign_mask() { return _mm256_set1_pd(-0.0); }
inline __m256d ones() { return _mm256_set1_pd(1.0); }
inline __m256d lane_step() { return _mm256_set1_pd(4.0); }

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Four-lane Kahan accumulator.
struct KahanVec {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();

    inline void add(__m256d v) {
        const __m256d y = _mm256_sub_pd(v, comp);
        const __m256d t = _mm256_add_pd(sum, y);
        comp = _mm256_sub_pd(_mm256_sub_pd(t, sum), y);
        sum = t;
    }

    inline double total() const { return hsum(sum) + hsum(comp); }
};

}  // namespace

double axial_potential(const double* u, std::size_t n) {
    double harmonic = 0.0, hcomp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = u[i] * u[i] - hcomp;
        const double t = harmonic + y;
        hcomp = (t - harmonic) - y;
        harmonic = t;
    }
    double coulomb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d ui = _mm256_set1_pd(u[i]);
        const __m256d iv = _mm256_set1_pd(static_cast<double>(i));
        __m256d jv = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
        KahanVec acc;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d d = _mm256_sub_pd(ui, _mm256_loadu_pd(u + j));
            const __m256d self = _mm256_cmp_pd(jv, iv, _CMP_EQ_OQ);
            const __m256d ad =
                _mm256_blendv_pd(_mm256_andnot_pd(sign_mask(), d), ones(), self);
            acc.add(_mm256_andnot_pd(self, _mm256_div_pd(ones(), ad)));
            jv = _mm256_add_pd(jv, lane_step());
        }
        double tail = 0.0;
        for (; j < n; ++j)
            if (j != i) tail += 1.0 / std::abs(u[i] - u[j]);
        coulomb += acc.total() + tail;
    }
    return harmonic + coulomb;
}

void axial_gradient(const double* u, std::size_t n, double* g) {
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d ui = _mm256_set1_pd(u[i]);
        const __m256d iv = _mm256_set1_pd(static_cast<double>(i));
        __m256d jv = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
        KahanVec acc;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d d = _mm256_sub_pd(ui, _mm256_loadu_pd(u + j));
            const __m256d self = _mm256_cmp_pd(jv, iv, _CMP_EQ_OQ);
            // d*|d| = sign(d) d^2; self lane blended to a safe denominator
            const __m256d da = _mm256_blendv_pd(
                _mm256_mul_pd(d, _mm256_andnot_pd(sign_mask(), d)), ones(), self);
            acc.add(_mm256_andnot_pd(self, _mm256_div_pd(ones(), da)));
            jv = _mm256_add_pd(jv, lane_step());
        }
        double tail = 0.0;
        for (; j < n; ++j) {
            if (j == i) continue;
            const double d = u[i] - u[j];
            tail += 1.0 / (d * std::abs(d));
        }
        g[i] = 2.0 * u[i] - 2.0 * (acc.total() + tail);
    }
}

double full_potential(const double* x, const double* y, const double* z,
                      std::size_t n, double inv_alpha) {
    double harmonic = 0.0, hcomp = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = z[i] * z[i] + (x[i] * x[i] + y[i] * y[i]) * inv_alpha;
        const double yk = v - hcomp;
        const double t = harmonic + yk;
        hcomp = (t - harmonic) - yk;
        harmonic = t;
    }
    double coulomb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d xi = _mm256_set1_pd(x[i]);
        const __m256d yi = _mm256_set1_pd(y[i]);
        const __m256d zi = _mm256_set1_pd(z[i]);
        const __m256d iv = _mm256_set1_pd(static_cast<double>(i));
        __m256d jv = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
        KahanVec acc;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(x + j));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(y + j));
            const __m256d dz = _mm256_sub_pd(zi, _mm256_loadu_pd(z + j));
            __m256d r2 = _mm256_fmadd_pd(
                dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
            const __m256d self = _mm256_cmp_pd(jv, iv, _CMP_EQ_OQ);
            r2 = _mm256_blendv_pd(r2, ones(), self);
            acc.add(_mm256_andnot_pd(
                self, _mm256_div_pd(ones(), _mm256_sqrt_pd(r2))));
            jv = _mm256_add_pd(jv, lane_step());
        }
        double tail = 0.0;
        for (; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double dz = z[i] - z[j];
            tail += 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
        }
        coulomb += acc.total() + tail;
    }
    return harmonic + coulomb;
}

void full_gradient(const double* x, const double* y, const double* z,
                   std::size_t n, double inv_alpha, double* gx, double* gy,
                   double* gz) {
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d xi = _mm256_set1_pd(x[i]);
        const __m256d yi = _mm256_set1_pd(y[i]);
        const __m256d zi = _mm256_set1_pd(z[i]);
        const __m256d iv = _mm256_set1_pd(static_cast<double>(i));
        __m256d jv = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
        KahanVec ax, ay, az;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d dx = _mm256_sub_pd(xi, _mm256_loadu_pd(x + j));
            const __m256d dy = _mm256_sub_pd(yi, _mm256_loadu_pd(y + j));
            const __m256d dz = _mm256_sub_pd(zi, _mm256_loadu_pd(z + j));
            __m256d r2 = _mm256_fmadd_pd(
                dx, dx, _mm256_fmadd_pd(dy, dy, _mm256_mul_pd(dz, dz)));
            const __m256d self = _mm256_cmp_pd(jv, iv, _CMP_EQ_OQ);
            r2 = _mm256_blendv_pd(r2, ones(), self);
            // w = 1/r^3
            const __m256d w = _mm256_andnot_pd(
                self, _mm256_div_pd(
                          ones(), _mm256_mul_pd(r2, _mm256_sqrt_pd(r2))));
            ax.add(_mm256_mul_pd(dx, w));
            ay.add(_mm256_mul_pd(dy, w));
            az.add(_mm256_mul_pd(dz, w));
            jv = _mm256_add_pd(jv, lane_step());
        }
        double tx = 0.0, ty = 0.0, tz = 0.0;
        for (; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double dz = z[i] - z[j];
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double w = 1.0 / (r2 * std::sqrt(r2));
            tx += dx * w;
            ty += dy * w;
            tz += dz * w;
        }
        gx[i] = 2.0 * inv_alpha * x[i] - 2.0 * (ax.total() + tx);
        gy[i] = 2.0 * inv_alpha * y[i] - 2.0 * (ay.total() + ty);
        gz[i] = 2.0 * z[i] - 2.0 * (az.total() + tz);
    }
}

}  // namespace iontrap::kern::avx2

#endif  // IONTRAP_HAVE_AVX2_KERNELS
