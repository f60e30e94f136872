#ifndef IONTRAP_MODES_HPP
#define IONTRAP_MODES_HPP

#include <Eigen/Dense>
#include <vector>

#include "iontrap/chain.hpp"

namespace iontrap {

// Dimensionless axial coupling matrix:
//   A_mm = 1 + 2 sum_{p != m} 1/|u_m - u_p|^3,   A_nm = -2/|u_m - u_n|^3
// Symmetric, strictly diagonally dominant, rows sum to 1.
struct CouplingMatrixAxial {
    int n_ions = 0;
    Eigen::MatrixXd entries;
};

// Axial normal modes: eigenvalues mu_1 <= ... <= mu_N (squared-frequency
// ratios, mu_1 = 1 for the center-of-mass mode) and orthonormal
// eigenvectors, column p paired with mu_p. Sign convention: first
// component of each eigenvector above 1e-8 in magnitude is positive.
struct ModeSpectrum {
    std::vector<double> eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

CouplingMatrixAxial coupling_matrix_axial(const ChainEquilibrium& eq);

ModeSpectrum axial_spectrum(const CouplingMatrixAxial& a);

// Radial eigenvalues 1/alpha + 1/2 - mu_p/2, in spectrum order (strictly
// decreasing in p). Throws DomainError unless alpha > 0.
std::vector<double> radial_eigenvalues(const ModeSpectrum& spectrum,
                                       double alpha);

// Radial coupling matrix B = (1/alpha + 1/2) I - A/2; same eigenvectors
// as A.
Eigen::MatrixXd coupling_matrix_radial(const CouplingMatrixAxial& a,
                                       double alpha);

}  // namespace iontrap

#endif
