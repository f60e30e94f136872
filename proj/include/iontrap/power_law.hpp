#ifndef IONTRAP_POWER_LAW_HPP
#define IONTRAP_POWER_LAW_HPP

#include <optional>
#include <span>

namespace iontrap {

// alpha = c * N^beta fitted by linear regression of ln(alpha) on ln(N).
// c_stderr comes from the intercept's standard error by the first-order
// delta method; standard errors are absent for two-point fits.
struct PowerLawFit {
    double c = 0.0;
    double beta = 0.0;
    std::optional<double> c_stderr;
    std::optional<double> beta_stderr;
    int n_min = 0;
    int n_max = 0;
    int n_points = 0;
};

struct AlphaPoint {
    int n_ions = 0;
    double alpha = 0.0;
};

// Ordinary least squares in log-log space, or weighted when `weights` is
// nonempty (one positive weight per point, treated as 1/sigma^2 of
// ln alpha; parameter errors then come from the unscaled weighted normal
// equations). Requires >= 2 points with distinct N and positive alpha.
PowerLawFit fit_power_law(std::span<const AlphaPoint> points,
                          std::span<const double> weights = {});

// c * n^beta for real n > 0.
double evaluate(const PowerLawFit& fit, double n_ions);

// Pairwise comparison of two fitted laws; an interval with no standard
// error is treated as zero-width.
struct FitComparison {
    double delta_c = 0.0;     // a.c - b.c
    double delta_beta = 0.0;  // a.beta - b.beta
    bool c_overlap = false;
    bool beta_overlap = false;
};

FitComparison compare_fits(const PowerLawFit& a, const PowerLawFit& b);

}  // namespace iontrap

#endif
