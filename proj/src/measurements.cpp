#include "iontrap/measurements.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "iontrap/errors.hpp"

namespace iontrap {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw, const char* what,
                    std::size_t lineno) {
    const std::string s = trim(raw);
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("cannot parse ") + what + " '" + s + "'",
                         lineno);
    }
}

}  // namespace

LoadResult load_measurements(std::istream& in) {
    LoadResult result;
    std::string line;
    std::size_t lineno = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (stripped.rfind("n_ions", 0) == 0) continue;  // header row
        }
        const auto fields = split_csv(stripped);
        if (fields.size() != 6)
            throw ParseError("expected 6 fields "
                             "(n_ions,nu_r_hz,nu_r_err_hz,nu_z_hz,nu_z_err_hz,"
                             "label), got " + std::to_string(fields.size()),
                             lineno);
        MeasurementRecord rec;
        const double n_raw = parse_number(fields[0], "n_ions", lineno);
        rec.n_ions = static_cast<int>(n_raw);
        if (rec.n_ions <= 0 || static_cast<double>(rec.n_ions) != n_raw)
            throw ValidationError("n_ions must be a positive integer", lineno);
        rec.nu_r_hz = parse_number(fields[1], "nu_r_hz", lineno);
        rec.nu_r_err_hz = parse_number(fields[2], "nu_r_err_hz", lineno);
        rec.nu_z_hz = parse_number(fields[3], "nu_z_hz", lineno);
        rec.nu_z_err_hz = parse_number(fields[4], "nu_z_err_hz", lineno);
        rec.label = trim(fields[5]);
        if (!(rec.nu_r_hz > 0.0) || !(rec.nu_z_hz > 0.0))
            throw ValidationError("frequencies must be positive", lineno);
        if (!(rec.nu_r_err_hz > 0.0) || !(rec.nu_z_err_hz > 0.0))
            throw ValidationError("frequency errors must be positive", lineno);
        if (rec.nu_z_hz >= rec.nu_r_hz)
            result.warnings.push_back(
                "line " + std::to_string(lineno) +
                ": nu_z >= nu_r, not a linear-phase observation");
        result.records.push_back(std::move(rec));
    }
    return result;
}

AlphaEstimate alpha_with_error(const MeasurementRecord& record) {
    const double ratio = record.nu_z_hz / record.nu_r_hz;
    const double alpha = ratio * ratio;
    const double rel_z = record.nu_z_err_hz / record.nu_z_hz;
    const double rel_r = record.nu_r_err_hz / record.nu_r_hz;
    const double sigma = alpha * 2.0 * std::sqrt(rel_z * rel_z + rel_r * rel_r);
    return {alpha, sigma};
}

std::vector<AveragedCriticalPoint> weighted_average_per_n(
    std::span<const MeasurementRecord> records) {
    std::map<int, std::vector<AlphaEstimate>> grouped;
    for (const MeasurementRecord& rec : records) {
        const AlphaEstimate est = alpha_with_error(rec);
        if (!(est.sigma > 0.0))
            throw DomainError(
                "record with zero alpha error cannot be weighted; assign a "
                "floor error first");
        grouped[rec.n_ions].push_back(est);
    }
    std::vector<AveragedCriticalPoint> out;
    out.reserve(grouped.size());
    for (const auto& [n, estimates] : grouped) {
        double wsum = 0.0, wa = 0.0, ws = 0.0;
        for (const AlphaEstimate& est : estimates) {
            const double w = 1.0 / (est.sigma * est.sigma);
            wsum += w;
            wa += w * est.alpha;
            ws += w * est.sigma;
        }
        out.push_back(AveragedCriticalPoint{n, wa / wsum, ws / wsum,
                                            static_cast<int>(estimates.size())});
    }
    return out;
}

PowerLawFit fit_experimental(std::span<const AveragedCriticalPoint> points) {
    if (points.size() < 3)
        throw DomainError("experimental fit requires >= 3 averaged points");
    std::vector<AlphaPoint> alpha_points;
    std::vector<double> weights;
    alpha_points.reserve(points.size());
    weights.reserve(points.size());
    for (const AveragedCriticalPoint& p : points) {
        alpha_points.push_back(AlphaPoint{p.n_ions, p.alpha_mean});
        const double sigma_ln = p.alpha_err / p.alpha_mean;
        weights.push_back(1.0 / (sigma_ln * sigma_ln));
    }
    return fit_power_law(alpha_points, weights);
}

std::vector<AveragedCriticalPoint> apply_relative_shift(
    std::span<const AveragedCriticalPoint> points, double shift) {
    if (!(1.0 + shift > 0.0))
        throw DomainError("shift must keep alphas positive");
    std::vector<AveragedCriticalPoint> out(points.begin(), points.end());
    for (AveragedCriticalPoint& p : out) {
        p.alpha_mean *= 1.0 + shift;
        p.alpha_err *= 1.0 + shift;
    }
    return out;
}

}  // namespace iontrap
