#include "iontrap/modes.hpp"

#include <cmath>
#include <stdexcept>

#include "iontrap/errors.hpp"

namespace iontrap {

CouplingMatrixAxial coupling_matrix_axial(const ChainEquilibrium& eq) {
    const auto n = static_cast<Eigen::Index>(eq.positions.size());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
        double diag = 1.0;
        for (Eigen::Index p = 0; p < n; ++p) {
            if (p == m) continue;
            const double d = std::abs(eq.positions[static_cast<std::size_t>(m)] -
                                      eq.positions[static_cast<std::size_t>(p)]);
            const double w = 2.0 / (d * d * d);
            a(m, p) = -w;
            diag += w;
        }
        a(m, m) = diag;
    }
    return CouplingMatrixAxial{eq.n_ions, std::move(a)};
}

ModeSpectrum axial_spectrum(const CouplingMatrixAxial& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a.entries);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("axial eigendecomposition failed to converge");

    ModeSpectrum spectrum;
    const Eigen::Index n = a.entries.rows();
    spectrum.eigenvalues.assign(solver.eigenvalues().data(),
                                solver.eigenvalues().data() + n);
    spectrum.eigenvectors = solver.eigenvectors();

    // Deterministic sign: first component of magnitude > 1e-8 positive
    // (unit vectors, so the leading component is far larger than that).
    for (Eigen::Index p = 0; p < n; ++p) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double c = spectrum.eigenvectors(i, p);
            if (std::abs(c) > 1e-8) {
                if (c < 0.0) spectrum.eigenvectors.col(p) *= -1.0;
                break;
            }
        }
    }
    return spectrum;
}

std::vector<double> radial_eigenvalues(const ModeSpectrum& spectrum,
                                       double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    std::vector<double> out;
    out.reserve(spectrum.eigenvalues.size());
    for (double mu : spectrum.eigenvalues)
        out.push_back(1.0 / alpha + 0.5 - 0.5 * mu);
    return out;
}

Eigen::MatrixXd coupling_matrix_radial(const CouplingMatrixAxial& a,
                                       double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    Eigen::MatrixXd b = -0.5 * a.entries;
    b.diagonal().array() += 1.0 / alpha + 0.5;
    return b;
}

}  // namespace iontrap
