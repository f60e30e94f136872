#include "iontrap/trap.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "iontrap/errors.hpp"

namespace iontrap {

double anisotropy(const TrapParameters& params) {
    if (!(params.nu_z_hz > 0.0) || !(params.nu_r_hz > 0.0))
        throw DomainError("trap frequencies must be positive");
    const double r = params.nu_z_hz / params.nu_r_hz;
    return r * r;
}

std::vector<std::string> validate(const TrapParameters& params) {
    std::vector<std::string> warnings;
    if (params.nu_z_hz > 0.0 && params.nu_r_hz > 0.0 &&
        anisotropy(params) >= 1.0)
        warnings.push_back(
            "alpha >= 1: outside linear-phase operation (nu_z >= nu_r)");
    return warnings;
}

double length_scale(double mass_kg, double charge_c, double nu_z_hz,
                    const PhysicalConstants& constants) {
    if (!(mass_kg > 0.0) || !(charge_c > 0.0) || !(nu_z_hz > 0.0))
        throw DomainError("length_scale requires positive mass, charge, nu_z");
    const double omega = 2.0 * std::numbers::pi * nu_z_hz;
    return std::cbrt(charge_c * charge_c /
                     (4.0 * std::numbers::pi * constants.vacuum_permittivity *
                      mass_kg * omega * omega));
}

double n_crit(const TrapParameters& params, const PowerLawFit& fit) {
    if (!(fit.beta < 0.0)) throw DomainError("n_crit requires fit.beta < 0");
    const double base = params.nu_z_hz / (std::sqrt(fit.c) * params.nu_r_hz);
    if (!(base > 0.0)) throw DomainError("trap frequencies must be positive");
    return std::pow(base, 2.0 / fit.beta);
}

std::vector<double> physical_positions(const ChainEquilibrium& eq,
                                       const TrapParameters& params,
                                       const PhysicalConstants& constants) {
    const double l =
        length_scale(params.mass_kg, params.charge_c, params.nu_z_hz, constants);
    std::vector<double> z;
    z.reserve(eq.positions.size());
    for (double u : eq.positions) z.push_back(l * u);
    return z;
}

std::pair<double, double> frequencies_from_voltages(
    double rf_volts, double endcap_volts,
    const std::optional<Calibration>& calibration) {
    if (!calibration)
        throw ConfigError("no calibration constants configured");
    if (!(rf_volts > 0.0) || !(endcap_volts > 0.0))
        throw DomainError("voltages must be positive");
    return {calibration->radial_hz_per_volt * rf_volts,
            calibration->axial_hz_per_sqrt_volt * std::sqrt(endcap_volts)};
}

TrapConfig default_config() {
    TrapConfig config;
    const double u = config.constants.atomic_mass_unit;
    const double e = config.constants.elementary_charge;
    config.ions["ca40"] = IonSpecies{"ca40", 40.0 * u, e};
    return config;
}

TrapConfig load_config(std::istream& in) {
    TrapConfig config = default_config();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e2 = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{}
                                          : s.substr(b, e2 - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value_str = trim(line.substr(eq + 1));
        double value = 0.0;
        try {
            std::size_t used = 0;
            value = std::stod(value_str, &used);
            if (used != value_str.size()) throw std::invalid_argument(value_str);
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": cannot parse value '" + value_str + "'");
        }

        if (key == "constants.vacuum_permittivity_f_per_m") {
            config.constants.vacuum_permittivity = value;
        } else if (key == "constants.elementary_charge_c") {
            config.constants.elementary_charge = value;
        } else if (key == "constants.atomic_mass_unit_kg") {
            config.constants.atomic_mass_unit = value;
        } else if (key == "calibration.radial_hz_per_volt") {
            if (!config.calibration) config.calibration = Calibration{};
            config.calibration->radial_hz_per_volt = value;
        } else if (key == "calibration.axial_hz_per_sqrt_volt") {
            if (!config.calibration) config.calibration = Calibration{};
            config.calibration->axial_hz_per_sqrt_volt = value;
        } else if (key.rfind("ion.", 0) == 0) {
            const auto second_dot = key.find('.', 4);
            if (second_dot == std::string::npos || second_dot == 4)
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": expected ion.<name>.mass_kg or "
                                  "ion.<name>.charge_c");
            const std::string name = key.substr(4, second_dot - 4);
            const std::string field = key.substr(second_dot + 1);
            auto& ion = config.ions[name];
            ion.name = name;
            if (field == "mass_kg")
                ion.mass_kg = value;
            else if (field == "charge_c")
                ion.charge_c = value;
            else
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unknown ion field '" + field + "'");
        } else {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    return config;
}

}  // namespace iontrap
