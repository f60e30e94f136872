#ifndef IONTRAP_MEASUREMENTS_HPP
#define IONTRAP_MEASUREMENTS_HPP

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "iontrap/power_law.hpp"

namespace iontrap {

// One observed transition: frequency pair and resolutions at the onset of
// the zigzag instability.
struct MeasurementRecord {
    int n_ions = 0;
    double nu_r_hz = 0.0;
    double nu_r_err_hz = 0.0;
    double nu_z_hz = 0.0;
    double nu_z_err_hz = 0.0;
    std::string label;
};

struct LoadResult {
    std::vector<MeasurementRecord> records;
    std::vector<std::string> warnings;
};

// CSV schema (UTF-8, '#' starts a comment line):
//   n_ions,nu_r_hz,nu_r_err_hz,nu_z_hz,nu_z_err_hz,label
// Malformed rows raise ParseError, nonpositive values ValidationError,
// both carrying the line number. nu_z >= nu_r only warns (not a
// linear-phase observation).
LoadResult load_measurements(std::istream& in);

struct AlphaEstimate {
    double alpha = 0.0;
    double sigma = 0.0;
};

// alpha = (nu_z/nu_r)^2 with first-order error propagation:
//   sigma/alpha = 2 sqrt((nu_z_err/nu_z)^2 + (nu_r_err/nu_r)^2)
AlphaEstimate alpha_with_error(const MeasurementRecord& record);

struct AveragedCriticalPoint {
    int n_ions = 0;
    double alpha_mean = 0.0;
    double alpha_err = 0.0;
    int n_samples = 0;
};

// Per-N weighted mean with weights 1/sigma^2. The error bar is the
// weighted mean of the individual sigmas, not the standard error of the
// mean: the sigmas represent detection resolution, and repeating a
// measurement does not shrink them. Any sigma = 0 raises DomainError
// telling the caller to assign a floor error.
std::vector<AveragedCriticalPoint> weighted_average_per_n(
    std::span<const MeasurementRecord> records);

// Weighted log-log fit of the averaged points with weights
// 1/sigma_ln^2, sigma_ln = alpha_err/alpha_mean. Requires >= 3 distinct N.
PowerLawFit fit_experimental(std::span<const AveragedCriticalPoint> points);

// Scenario helper: scale every averaged alpha (and its error, keeping
// relative errors fixed) by 1 + shift; shift = -0.05 reproduces the
// detection-threshold systematic.
std::vector<AveragedCriticalPoint> apply_relative_shift(
    std::span<const AveragedCriticalPoint> points, double shift);

}  // namespace iontrap

#endif
