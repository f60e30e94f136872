#include "iontrap/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iontrap/errors.hpp"
#include "iontrap/kernels.hpp"

namespace iontrap {

namespace {

void require_distinct(std::span<const double> positions) {
    std::vector<double> sorted(positions.begin(), positions.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw DomainError("coincident ion positions (Coulomb singularity)");
}

bool strictly_increasing(const std::vector<double>& u) {
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] <= u[i - 1]) return false;
    return true;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

double dimensionless_potential(std::span<const double> positions) {
    require_distinct(positions);
    return kern::axial_potential(positions.data(), positions.size());
}

std::vector<double> potential_gradient(std::span<const double> positions) {
    require_distinct(positions);
    std::vector<double> g(positions.size());
    kern::axial_gradient(positions.data(), positions.size(), g.data());
    return g;
}

Eigen::MatrixXd potential_hessian(std::span<const double> positions) {
    require_distinct(positions);
    const auto n = static_cast<Eigen::Index>(positions.size());
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double diag = 2.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = std::abs(positions[i] - positions[j]);
            const double w = 4.0 / (d * d * d);
            h(i, j) = -w;
            diag += w;
        }
        h(i, i) = diag;
    }
    return h;
}

ChainEquilibrium solve_equilibrium(int n_ions) {
    if (n_ions < 1) throw DomainError("n_ions must be >= 1");
    if (n_ions == 1) return ChainEquilibrium{1, {0.0}, 0.0};

    const auto n = static_cast<std::size_t>(n_ions);
    const double half_span = std::pow(static_cast<double>(n_ions), 0.56);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i)
        u[i] = -half_span +
               2.0 * half_span * static_cast<double>(i) /
                   static_cast<double>(n - 1);

    constexpr double kTargetTol = 1e-12;
    constexpr double kAcceptTol = 1e-10;
    constexpr int kMaxIter = 200;

    std::vector<double> g(n), best_u = u, trial(n);
    double best_res = std::numeric_limits<double>::infinity();
    int stagnant = 0;

    for (int iter = 0; iter < kMaxIter; ++iter) {
        kern::axial_gradient(u.data(), n, g.data());
        const double res = max_abs(g);
        if (res < best_res) {
            best_res = res;
            best_u = u;
            stagnant = 0;
        } else if (++stagnant >= 5) {
            // Residual has hit the floating-point floor of the gradient
            // sums (several-hundred-ion chains land above 1e-12).
            break;
        }
        if (res <= kTargetTol) break;

        const Eigen::MatrixXd h = potential_hessian(u);
        const Eigen::Map<const Eigen::VectorXd> gv(g.data(),
                                                   static_cast<Eigen::Index>(n));
        const Eigen::VectorXd step = h.llt().solve(-gv);

        // Halve the step until the ordering survives; a crossing would put
        // the iterate on the wrong side of the Coulomb singularity.
        double t = 1.0;
        for (;;) {
            for (std::size_t i = 0; i < n; ++i)
                trial[i] = u[i] + t * step[static_cast<Eigen::Index>(i)];
            if (strictly_increasing(trial)) break;
            t *= 0.5;
            if (t < 1e-12)
                throw ConvergenceError(
                    "equilibrium step collapsed while preserving ion ordering",
                    res);
        }
        u = trial;
    }

    if (!(best_res <= kAcceptTol))
        throw ConvergenceError("equilibrium solve did not reach residual 1e-10",
                               best_res);

    return ChainEquilibrium{n_ions, std::move(best_u), best_res};
}

}  // namespace iontrap
