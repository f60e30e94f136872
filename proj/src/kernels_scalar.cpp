#include "iontrap/kernels.hpp"

#include <cmath>

// Reference kernels. Compensated (Kahan) accumulation keeps the gradient
// noise floor near eps * |sum| instead of n * eps * |sum|; without it the
// equilibrium residual for chains of several hundred ions bottoms out
// above the 1e-12 solver target.

namespace iontrap::kern::scalar {

namespace {

struct Kahan {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double axial_potential(const double* u, std::size_t n) {
    Kahan harmonic;
    for (std::size_t i = 0; i < n; ++i) harmonic.add(u[i] * u[i]);
    Kahan coulomb;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            coulomb.add(1.0 / std::abs(u[i] - u[j]));
        }
    }
    return harmonic.sum + coulomb.sum;
}

void axial_gradient(const double* u, std::size_t n, double* g) {
    for (std::size_t i = 0; i < n; ++i) {
        Kahan acc;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = u[i] - u[j];
            // sign(d)/d^2 written division-free of branches
            acc.add(1.0 / (d * std::abs(d)));
        }
        g[i] = 2.0 * u[i] - 2.0 * acc.sum;
    }
}

double full_potential(const double* x, const double* y, const double* z,
                      std::size_t n, double inv_alpha) {
    Kahan harmonic;
    for (std::size_t i = 0; i < n; ++i)
        harmonic.add(z[i] * z[i] + (x[i] * x[i] + y[i] * y[i]) * inv_alpha);
    Kahan coulomb;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double dz = z[i] - z[j];
            coulomb.add(1.0 / std::sqrt(dx * dx + dy * dy + dz * dz));
        }
    }
    return harmonic.sum + coulomb.sum;
}

void full_gradient(const double* x, const double* y, const double* z,
                   std::size_t n, double inv_alpha, double* gx, double* gy,
                   double* gz) {
    for (std::size_t i = 0; i < n; ++i) {
        Kahan ax, ay, az;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dx = x[i] - x[j];
            const double dy = y[i] - y[j];
            const double dz = z[i] - z[j];
            const double r2 = dx * dx + dy * dy + dz * dz;
            const double w = 1.0 / (r2 * std::sqrt(r2));  // 1/r^3
            ax.add(dx * w);
            ay.add(dy * w);
            az.add(dz * w);
        }
        gx[i] = 2.0 * inv_alpha * x[i] - 2.0 * ax.sum;
        gy[i] = 2.0 * inv_alpha * y[i] - 2.0 * ay.sum;
        gz[i] = 2.0 * z[i] - 2.0 * az.sum;
    }
}

}  // namespace iontrap::kern::scalar
