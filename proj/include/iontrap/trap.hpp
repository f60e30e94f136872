#ifndef IONTRAP_TRAP_HPP
#define IONTRAP_TRAP_HPP

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iontrap/chain.hpp"
#include "iontrap/power_law.hpp"

namespace iontrap {

// CODATA 2018 values; the single source of truth for unit conversions.
struct PhysicalConstants {
    double vacuum_permittivity = 8.8541878128e-12;  // F/m
    double elementary_charge = 1.602176634e-19;     // C
    double atomic_mass_unit = 1.66053906660e-27;    // kg
};

struct Calibration {
    double radial_hz_per_volt = 0.0;       // nu_r = k_r * V_rf
    double axial_hz_per_sqrt_volt = 0.0;   // nu_z = k_z * sqrt(V_endcap)
};

struct TrapParameters {
    double nu_z_hz = 0.0;   // axial secular frequency
    double nu_r_hz = 0.0;   // weak-axis radial secular frequency
    double mass_kg = 0.0;
    double charge_c = 0.0;
    std::optional<double> rf_drive_hz;
    std::optional<Calibration> calibration;
};

struct IonSpecies {
    std::string name;
    double mass_kg = 0.0;
    double charge_c = 0.0;
};

// Anisotropy alpha = (nu_z/nu_r)^2.
double anisotropy(const TrapParameters& params);

// Out-of-range conditions that are worth flagging but not rejecting
// (e.g. alpha >= 1, outside linear-phase operation).
std::vector<std::string> validate(const TrapParameters& params);

// Natural inter-ion distance l = [q^2 / (4 pi eps0 m (2 pi nu_z)^2)]^{1/3}.
double length_scale(double mass_kg, double charge_c, double nu_z_hz,
                    const PhysicalConstants& constants = {});

// Largest real-valued ion count sustaining a linear chain at the given
// frequencies, (nu_z/(sqrt(c) nu_r))^{2/beta}; flooring to an integer
// register size is left to the caller. Requires fit.beta < 0.
double n_crit(const TrapParameters& params, const PowerLawFit& fit);

// z_n = l * u_n, in meters.
std::vector<double> physical_positions(const ChainEquilibrium& eq,
                                       const TrapParameters& params,
                                       const PhysicalConstants& constants = {});

// (nu_r, nu_z) from drive voltages; throws ConfigError when no
// calibration constants are present.
std::pair<double, double> frequencies_from_voltages(
    double rf_volts, double endcap_volts,
    const std::optional<Calibration>& calibration);

// Constants and ion presets, overridable from a key-value file:
//   # comment
//   constants.vacuum_permittivity_f_per_m = 8.8541878128e-12
//   constants.elementary_charge_c        = 1.602176634e-19
//   constants.atomic_mass_unit_kg        = 1.66053906660e-27
//   ion.<name>.mass_kg                   = 6.6421562664e-26
//   ion.<name>.charge_c                  = 1.602176634e-19
//   calibration.radial_hz_per_volt       = 3500.0
//   calibration.axial_hz_per_sqrt_volt   = 27600.0
struct TrapConfig {
    PhysicalConstants constants;
    std::map<std::string, IonSpecies> ions;
    std::optional<Calibration> calibration;
};

// Built-in defaults: CODATA constants plus the ca40 preset (40 u, +1e).
TrapConfig default_config();

// Parse a config stream and merge it over the defaults. Unknown keys or
// malformed lines raise ConfigError.
TrapConfig load_config(std::istream& in);

}  // namespace iontrap

#endif
