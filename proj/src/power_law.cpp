#include "iontrap/power_law.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "iontrap/errors.hpp"

namespace iontrap {

PowerLawFit fit_power_law(std::span<const AlphaPoint> points,
                          std::span<const double> weights) {
    const std::size_t n = points.size();
    if (n < 2) throw DomainError("power-law fit requires at least 2 points");
    if (!weights.empty() && weights.size() != n)
        throw DomainError("weights must match points in length");

    std::set<int> seen;
    for (const AlphaPoint& p : points) {
        if (!(p.alpha > 0.0))
            throw DomainError("power-law fit requires positive alpha values");
        if (p.n_ions <= 0)
            throw DomainError("power-law fit requires positive ion counts");
        if (!seen.insert(p.n_ions).second)
            throw DomainError("power-law fit requires distinct ion counts");
    }
    for (double w : weights)
        if (!(w > 0.0)) throw DomainError("weights must be positive");

    // Weighted normal equations for y = a + b x with x = ln N, y = ln alpha.
    double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        const double x = std::log(static_cast<double>(points[i].n_ions));
        const double y = std::log(points[i].alpha);
        sw += w;
        sx += w * x;
        sy += w * y;
        sxx += w * x * x;
        sxy += w * x * y;
    }
    const double det = sw * sxx - sx * sx;
    const double b = (sw * sxy - sx * sy) / det;
    const double a = (sy - b * sx) / sw;

    PowerLawFit fit;
    fit.c = std::exp(a);
    fit.beta = b;
    fit.n_points = static_cast<int>(n);
    fit.n_min = std::min_element(points.begin(), points.end(),
                                 [](const AlphaPoint& l, const AlphaPoint& r) {
                                     return l.n_ions < r.n_ions;
                                 })
                    ->n_ions;
    fit.n_max = std::max_element(points.begin(), points.end(),
                                 [](const AlphaPoint& l, const AlphaPoint& r) {
                                     return l.n_ions < r.n_ions;
                                 })
                    ->n_ions;

    if (n >= 3) {
        double var_a, var_b;
        if (weights.empty()) {
            // Residual-based OLS errors.
            double ssr = 0.0;
            for (const AlphaPoint& p : points) {
                const double r = std::log(p.alpha) - a -
                                 b * std::log(static_cast<double>(p.n_ions));
                ssr += r * r;
            }
            const double s2 = ssr / static_cast<double>(n - 2);
            var_b = s2 * sw / det;
            var_a = s2 * sxx / det;
        } else {
            // Weights are absolute (1/sigma^2 of ln alpha): the parameter
            // covariance is the inverse of the weighted normal matrix,
            // not rescaled by the residuals.
            var_b = sw / det;
            var_a = sxx / det;
        }
        fit.beta_stderr = std::sqrt(var_b);
        fit.c_stderr = fit.c * std::sqrt(var_a);
    }
    return fit;
}

double evaluate(const PowerLawFit& fit, double n_ions) {
    if (!(n_ions > 0.0)) throw DomainError("evaluate requires n_ions > 0");
    return fit.c * std::pow(n_ions, fit.beta);
}

FitComparison compare_fits(const PowerLawFit& a, const PowerLawFit& b) {
    FitComparison cmp;
    cmp.delta_c = a.c - b.c;
    cmp.delta_beta = a.beta - b.beta;
    const double c_halfwidth = a.c_stderr.value_or(0.0) + b.c_stderr.value_or(0.0);
    const double beta_halfwidth =
        a.beta_stderr.value_or(0.0) + b.beta_stderr.value_or(0.0);
    cmp.c_overlap = std::abs(cmp.delta_c) <= c_halfwidth;
    cmp.beta_overlap = std::abs(cmp.delta_beta) <= beta_halfwidth;
    return cmp;
}

}  // namespace iontrap
