#ifndef IONTRAP_CHAIN_HPP
#define IONTRAP_CHAIN_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace iontrap {

// Equilibrium of N ions on the trap axis. Positions are dimensionless
// (units of the trap length scale), strictly increasing, and antisymmetric
// about the origin; residual_norm is the max-norm of the dimensionless
// potential gradient at the solution.
struct ChainEquilibrium {
    int n_ions = 0;
    std::vector<double> positions;
    double residual_norm = 0.0;
};

// Dimensionless axial potential, energies in units of M (2 pi nu_z)^2 l^2 / 2:
//   V(u) = sum_n u_n^2 + 2 sum_{n<m} 1/|u_n - u_m|
// Throws DomainError on coincident positions.
double dimensionless_potential(std::span<const double> positions);

// Component n: 2 u_n - 2 sum_{m != n} sign(u_n - u_m)/(u_n - u_m)^2.
std::vector<double> potential_gradient(std::span<const double> positions);

// Hessian of the dimensionless potential; symmetric positive definite for
// any ordered chain (strictly diagonally dominant).
Eigen::MatrixXd potential_hessian(std::span<const double> positions);

// Damped Newton solve for the chain equilibrium. Deterministic; throws
// ConvergenceError if the residual cannot be brought under 1e-10.
ChainEquilibrium solve_equilibrium(int n_ions);

}  // namespace iontrap

#endif
