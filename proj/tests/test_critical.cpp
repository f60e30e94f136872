#include <doctest.h>

#include <cmath>

#include "iontrap/chain.hpp"
#include "iontrap/critical.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/modes.hpp"

using namespace iontrap;

TEST_CASE("exact small-N critical anisotropies") {
    const CriticalPoint p2 = alpha_crit(2);
    CHECK(std::abs(p2.alpha_crit - 1.0) <= 1e-10);  // mu_max = 3
    CHECK(p2.mu_max == doctest::Approx(3.0).epsilon(1e-10));

    const CriticalPoint p3 = alpha_crit(3);
    CHECK(std::abs(p3.alpha_crit - 5.0 / 12.0) <= 1e-10);  // mu_max = 29/5
    CHECK(p3.mu_max == doctest::Approx(29.0 / 5.0).epsilon(1e-10));
}

TEST_CASE("alpha_crit is built from the largest axial eigenvalue") {
    for (int n : {2, 4, 9}) {
        const CriticalPoint p = alpha_crit(n);
        CHECK(p.alpha_crit == 2.0 / (p.mu_max - 1.0));
        const ModeSpectrum s =
            axial_spectrum(coupling_matrix_axial(solve_equilibrium(n)));
        CHECK(p.mu_max == doctest::Approx(s.eigenvalues.back()).epsilon(1e-12));
    }
}

TEST_CASE("fewer than two ions has no zigzag transition") {
    CHECK_THROWS_AS(alpha_crit(1), DomainError);
    CHECK_THROWS_AS(alpha_crit(0), DomainError);
    CHECK_THROWS_AS(critical_slope(1), DomainError);
}

TEST_CASE("alpha_crit(10) sits near the fitted power law") {
    // proximity, not equality: the exact curve is not a power law
    const double a10 = alpha_crit(10).alpha_crit;
    CHECK(std::abs(std::log(a10) - std::log(2.94 * std::pow(10.0, -1.80))) <=
          0.03);
}

TEST_CASE("critical curve: endpoints, ordering, monotonicity") {
    const CriticalCurve c = critical_curve(2, 3);
    REQUIRE(c.points.size() == 2);
    CHECK(c.points[0].n_ions == 2);
    CHECK(c.points[0].alpha_crit == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(c.points[1].alpha_crit ==
          doctest::Approx(5.0 / 12.0).epsilon(1e-10));

    const CriticalCurve wide = critical_curve(3, 10);
    REQUIRE(wide.points.size() == 8);
    for (std::size_t i = 1; i < wide.points.size(); ++i) {
        CHECK(wide.points[i].n_ions == wide.points[i - 1].n_ions + 1);
        CHECK(wide.points[i].alpha_crit < wide.points[i - 1].alpha_crit);
    }
}

TEST_CASE("critical curve rejects bad ranges") {
    CHECK_THROWS_AS(critical_curve(1, 5), DomainError);
    CHECK_THROWS_AS(critical_curve(5, 4), DomainError);
    CHECK_THROWS_AS(critical_curve(2, 1001), DomainError);
}

TEST_CASE("critical slopes reproduce the frequency-plane lines") {
    CHECK(critical_slope(2) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(critical_slope(3) ==
          doctest::Approx(std::sqrt(12.0 / 5.0)).epsilon(1e-10));
    double prev = 0.0;
    for (int n = 3; n <= 10; ++n) {
        const double s = critical_slope(n);
        CHECK(s > prev);
        prev = s;
    }
}

TEST_CASE("softest radial mode crosses zero exactly at alpha_crit") {
    for (int n = 2; n <= 20; ++n) {
        CAPTURE(n);
        const double ac = alpha_crit(n).alpha_crit;
        const ModeSpectrum s =
            axial_spectrum(coupling_matrix_axial(solve_equilibrium(n)));
        CHECK(std::abs(radial_eigenvalues(s, ac).back()) <= 1e-10);
        CHECK(radial_eigenvalues(s, 0.99 * ac).back() > 0.0);
        CHECK(radial_eigenvalues(s, 1.01 * ac).back() < 0.0);
    }
}

TEST_CASE("power-law proximity of the exact curve over N = 3..10") {
    for (int n = 3; n <= 10; ++n) {
        CAPTURE(n);
        const double exact = std::log(alpha_crit(n).alpha_crit);
        const double approx = std::log(2.94 * std::pow(n, -1.80));
        CHECK(std::abs(exact - approx) <= 0.03);
    }
}
