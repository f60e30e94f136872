#ifndef IONTRAP_ORACLE_HPP
#define IONTRAP_ORACLE_HPP

#include <array>
#include <span>
#include <vector>

namespace iontrap {

// A locally minimized 3D crystal configuration, coordinates in units of
// the trap length scale.
struct CrystalConfiguration {
    int n_ions = 0;
    std::vector<double> x, y, z;
    double alpha = 0.0;
    double energy = 0.0;
    double gradient_norm = 0.0;  // max-norm at the solution
};

enum class Phase { linear, zigzag };

// Dimensionless 3D potential
//   V = sum_n [z_n^2 + (x_n^2 + y_n^2)/alpha] + 2 sum_{n<m} 1/|r_n - r_m|;
// reduces to the axial potential when all transverse coordinates vanish.
double full_potential(std::span<const double> x, std::span<const double> y,
                      std::span<const double> z, double alpha);

// Gradient of full_potential, returned as {d/dx, d/dy, d/dz}.
std::array<std::vector<double>, 3> full_potential_gradient(
    std::span<const double> x, std::span<const double> y,
    std::span<const double> z, double alpha);

struct MinimizeOptions {
    double gradient_tol = 1e-9;
    int max_iterations = 100000;
};

// L-BFGS minimization of the full potential, started from the linear
// equilibrium with an alternating-sign transverse kick of the given scale
// along x (one plane picked to break the azimuthal degeneracy). Throws
// ConvergenceError if the gradient max-norm cannot reach the tolerance.
CrystalConfiguration minimize_full(int n_ions, double alpha,
                                   double perturbation_scale = 1e-3,
                                   const MinimizeOptions& options = {});

// zigzag iff any ion's transverse excursion sqrt(x^2+y^2) exceeds the
// threshold.
Phase classify_configuration(const CrystalConfiguration& config,
                             double threshold = 1e-6);

// Locate the phase boundary in alpha by bisecting on the classification
// of freshly minimized configurations. Requires linear at bracket_lo and
// zigzag at bracket_hi (BracketError otherwise); tol is absolute in alpha.
double bisect_transition(int n_ions, double bracket_lo, double bracket_hi,
                         double tol = 1e-7);

// Default bracket (alpha_lo, alpha_hi) around the expected transition,
// from the wide-range power-law constants.
std::array<double, 2> default_bracket(int n_ions);

}  // namespace iontrap

#endif
