#include "iontrap/critical.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "iontrap/chain.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/modes.hpp"

namespace iontrap {

namespace {

// Per-N memo shared by curve scans and repeated point queries; the
// equilibrium/eigensolve pipeline is deterministic, so caching cannot
// change results.
CriticalPoint compute_point(int n_ions) {
    static std::mutex mutex;
    static std::map<int, CriticalPoint> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n_ions); it != cache.end()) return it->second;
    }
    const ChainEquilibrium eq = solve_equilibrium(n_ions);
    const ModeSpectrum spectrum = axial_spectrum(coupling_matrix_axial(eq));
    const double mu_max = spectrum.eigenvalues.back();
    const CriticalPoint point{n_ions, 2.0 / (mu_max - 1.0), mu_max};
    std::lock_guard lock(mutex);
    cache.emplace(n_ions, point);
    return point;
}

}  // namespace

CriticalPoint alpha_crit(int n_ions) {
    if (n_ions < 2)
        throw DomainError("alpha_crit requires n_ions >= 2");
    return compute_point(n_ions);
}

CriticalCurve critical_curve(int n_min, int n_max) {
    if (n_min < 2 || n_min > n_max || n_max > 1000)
        throw DomainError("critical_curve requires 2 <= n_min <= n_max <= 1000");
    CriticalCurve curve;
    curve.points.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) curve.points.push_back(compute_point(n));
    return curve;
}

double critical_slope(int n_ions) {
    return 1.0 / std::sqrt(alpha_crit(n_ions).alpha_crit);
}

}  // namespace iontrap
