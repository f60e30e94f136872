#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "iontrap/chain.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/modes.hpp"

using namespace iontrap;

TEST_CASE("A matrix of the two-ion chain is [[2,-1],[-1,2]]") {
    // spacing d = 2^{1/3}, d^3 = 2: diagonal 1 + 2/2 = 2, off-diagonal -2/2 = -1
    const CouplingMatrixAxial a = coupling_matrix_axial(solve_equilibrium(2));
    CHECK(a.entries(0, 0) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(a.entries(1, 1) == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(a.entries(0, 1) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(a.entries(1, 0) == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("A matrix of a single ion is [[1]]") {
    const CouplingMatrixAxial a = coupling_matrix_axial(solve_equilibrium(1));
    REQUIRE(a.entries.rows() == 1);
    CHECK(a.entries(0, 0) == 1.0);
}

TEST_CASE("A matrix structure: symmetric, negative off-diagonal, unit row sums") {
    for (int n : {2, 3, 5, 10, 20, 30}) {
        CAPTURE(n);
        const CouplingMatrixAxial a = coupling_matrix_axial(solve_equilibrium(n));
        for (Eigen::Index i = 0; i < a.entries.rows(); ++i) {
            CHECK(a.entries(i, i) > 1.0);
            double row = 0.0;
            for (Eigen::Index j = 0; j < a.entries.cols(); ++j) {
                row += a.entries(i, j);
                CHECK(a.entries(i, j) == a.entries(j, i));
                if (i != j) CHECK(a.entries(i, j) < 0.0);
            }
            // Coulomb terms cancel row-wise: the uniform vector is an
            // eigenvector with eigenvalue 1.
            CHECK(std::abs(row - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("two-ion spectrum is {1, 3} with (1,1)/sqrt2 and (1,-1)/sqrt2") {
    const ModeSpectrum s =
        axial_spectrum(coupling_matrix_axial(solve_equilibrium(2)));
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
    const double isq2 = 1.0 / std::sqrt(2.0);
    CHECK(s.eigenvectors(0, 0) == doctest::Approx(isq2).epsilon(1e-10));
    CHECK(s.eigenvectors(1, 0) == doctest::Approx(isq2).epsilon(1e-10));
    CHECK(s.eigenvectors(0, 1) == doctest::Approx(isq2).epsilon(1e-10));
    CHECK(s.eigenvectors(1, 1) == doctest::Approx(-isq2).epsilon(1e-10));
}

TEST_CASE("three-ion spectrum is {1, 3, 29/5}") {
    const ModeSpectrum s =
        axial_spectrum(coupling_matrix_axial(solve_equilibrium(3)));
    REQUIRE(s.eigenvalues.size() == 3);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(s.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(s.eigenvalues[2] == doctest::Approx(29.0 / 5.0).epsilon(1e-10));
}

TEST_CASE("spectrum invariants for N up to 20") {
    for (int n = 1; n <= 20; ++n) {
        CAPTURE(n);
        const CouplingMatrixAxial a = coupling_matrix_axial(solve_equilibrium(n));
        const ModeSpectrum s = axial_spectrum(a);
        REQUIRE(static_cast<int>(s.eigenvalues.size()) == n);

        // sorted ascending, all >= 1, center-of-mass mode at exactly 1
        CHECK(std::abs(s.eigenvalues[0] - 1.0) <= 1e-9);
        for (int p = 1; p < n; ++p) {
            CHECK(s.eigenvalues[static_cast<std::size_t>(p)] >=
                  s.eigenvalues[static_cast<std::size_t>(p - 1)]);
        }
        // breathing mode at exactly 3
        if (n >= 2)
            CHECK(std::abs(s.eigenvalues[1] - 3.0) <= 1e-8);

        // uniform center-of-mass eigenvector
        const double isqn = 1.0 / std::sqrt(static_cast<double>(n));
        for (Eigen::Index i = 0; i < n; ++i)
            CHECK(s.eigenvectors(i, 0) == doctest::Approx(isqn).epsilon(1e-8));

        // orthonormality and the eigen relation A b = mu b
        const Eigen::MatrixXd gram =
            s.eigenvectors.transpose() * s.eigenvectors;
        CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <=
              1e-9);
        for (Eigen::Index p = 0; p < n; ++p) {
            const Eigen::VectorXd r =
                a.entries * s.eigenvectors.col(p) -
                s.eigenvalues[static_cast<std::size_t>(p)] * s.eigenvectors.col(p);
            CHECK(r.cwiseAbs().maxCoeff() <= 1e-8);
        }
    }
}

TEST_CASE("highest mode alternates sign across the chain (zigzag pattern)") {
    for (int n = 3; n <= 10; ++n) {
        CAPTURE(n);
        const ModeSpectrum s =
            axial_spectrum(coupling_matrix_axial(solve_equilibrium(n)));
        const Eigen::VectorXd b = s.eigenvectors.col(n - 1);
        for (int i = 1; i < n; ++i) CHECK(b(i) * b(i - 1) < 0.0);
    }
}

TEST_CASE("no eigenvalue degeneracies at chain equilibria up to N = 100") {
    for (int n : {2, 10, 40, 70, 100}) {
        CAPTURE(n);
        const ModeSpectrum s =
            axial_spectrum(coupling_matrix_axial(solve_equilibrium(n)));
        for (std::size_t p = 1; p < s.eigenvalues.size(); ++p)
            CHECK(s.eigenvalues[p] - s.eigenvalues[p - 1] > 1.0);
    }
}

TEST_CASE("A equals half the Hessian of the potential at equilibrium") {
    const ChainEquilibrium eq = solve_equilibrium(7);
    const CouplingMatrixAxial a = coupling_matrix_axial(eq);
    const double step = 1e-6;
    // finite differences of the gradient, independent of the closed form
    for (std::size_t k = 0; k < eq.positions.size(); ++k) {
        std::vector<double> up = eq.positions, dn = eq.positions;
        up[k] += step;
        dn[k] -= step;
        const auto gup = potential_gradient(up);
        const auto gdn = potential_gradient(dn);
        for (std::size_t i = 0; i < eq.positions.size(); ++i) {
            const double hess_ik = (gup[i] - gdn[i]) / (2.0 * step);
            const double a_ik = a.entries(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(k));
            CHECK(std::abs(2.0 * a_ik - hess_ik) <=
                  1e-6 * std::max(1.0, std::abs(hess_ik)));
        }
    }
}

TEST_CASE("radial eigenvalues: two ions at alpha = 1 give {1, 0}") {
    const ModeSpectrum s =
        axial_spectrum(coupling_matrix_axial(solve_equilibrium(2)));
    const auto lam = radial_eigenvalues(s, 1.0);
    REQUIRE(lam.size() == 2);
    CHECK(lam[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(lam[1]) <= 1e-10);
}

TEST_CASE("radial eigenvalues: three ions at alpha = 5/12 soften to zero") {
    const ModeSpectrum s =
        axial_spectrum(coupling_matrix_axial(solve_equilibrium(3)));
    const auto lam = radial_eigenvalues(s, 5.0 / 12.0);
    CHECK(std::abs(lam.back()) <= 1e-12);
}

TEST_CASE("radial eigenvalues: strong confinement keeps every mode positive") {
    const ModeSpectrum s =
        axial_spectrum(coupling_matrix_axial(solve_equilibrium(8)));
    const auto lam = radial_eigenvalues(s, 1e-3);
    for (std::size_t p = 0; p < lam.size(); ++p) {
        CHECK(lam[p] > 0.0);
        if (p > 0) CHECK(lam[p] < lam[p - 1]);  // strictly decreasing in p
    }
}

TEST_CASE("radial eigenvalues reject nonpositive alpha") {
    const ModeSpectrum s =
        axial_spectrum(coupling_matrix_axial(solve_equilibrium(2)));
    CHECK_THROWS_AS(radial_eigenvalues(s, 0.0), DomainError);
    CHECK_THROWS_AS(radial_eigenvalues(s, -1.0), DomainError);
}

TEST_CASE("B matrix examples") {
    const CouplingMatrixAxial a1 = coupling_matrix_axial(solve_equilibrium(1));
    const Eigen::MatrixXd b1 = coupling_matrix_radial(a1, 0.5);
    CHECK(b1(0, 0) == doctest::Approx(2.0).epsilon(1e-14));

    const CouplingMatrixAxial a2 = coupling_matrix_axial(solve_equilibrium(2));
    const Eigen::MatrixXd b2 = coupling_matrix_radial(a2, 1.0);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 2; ++j)
            CHECK(b2(i, j) == doctest::Approx(0.5).epsilon(1e-10));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b2);
    CHECK(std::abs(es.eigenvalues()(0)) <= 1e-10);
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("B spectrum equals the affine map of A's spectrum, same eigenvectors") {
    for (int n = 2; n <= 20; ++n) {
        for (double alpha : {0.1, 0.5, 1.0}) {
            CAPTURE(n);
            CAPTURE(alpha);
            const CouplingMatrixAxial a =
                coupling_matrix_axial(solve_equilibrium(n));
            const ModeSpectrum sa = axial_spectrum(a);
            const auto mapped = radial_eigenvalues(sa, alpha);

            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
                coupling_matrix_radial(a, alpha));
            REQUIRE(es.info() == Eigen::Success);
            // B's ascending order reverses A's (the map has slope -1/2)
            for (int p = 0; p < n; ++p) {
                const double direct = es.eigenvalues()(n - 1 - p);
                CHECK(std::abs(direct - mapped[static_cast<std::size_t>(p)]) <=
                      1e-8);
                // eigenvector match up to sign
                const Eigen::VectorXd va = sa.eigenvectors.col(p);
                const Eigen::VectorXd vb = es.eigenvectors().col(n - 1 - p);
                const double overlap = std::abs(va.dot(vb));
                CHECK(overlap == doctest::Approx(1.0).epsilon(1e-8));
            }
        }
    }
}
