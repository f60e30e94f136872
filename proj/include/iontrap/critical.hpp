#ifndef IONTRAP_CRITICAL_HPP
#define IONTRAP_CRITICAL_HPP

#include <vector>

namespace iontrap {

// Exact critical anisotropy for the linear-to-zigzag transition:
// alpha_crit = 2/(mu_max - 1), where mu_max is the largest eigenvalue of
// the axial coupling matrix. Below alpha_crit the chain is stable; above
// it the softest radial mode has negative frequency squared.
struct CriticalPoint {
    int n_ions = 0;
    double alpha_crit = 0.0;
    double mu_max = 0.0;
};

struct CriticalCurve {
    std::vector<CriticalPoint> points;
};

// Throws DomainError for n_ions < 2 (a single ion has no zigzag
// transition and mu_max = 1 makes the formula singular).
CriticalPoint alpha_crit(int n_ions);

// One point per N in [n_min, n_max]; requires 2 <= n_min <= n_max <= 1000.
CriticalCurve critical_curve(int n_min, int n_max);

// Slope of the critical line in the (nu_z, nu_r) plane:
// nu_r/nu_z = alpha_crit^{-1/2}; increases with N.
double critical_slope(int n_ions);

}  // namespace iontrap

#endif
