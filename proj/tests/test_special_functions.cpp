#include "sphcube/special_functions.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace sphcube;

TEST_CASE("harmonic dimensions: known values and both closed forms") {
    for (int n = 3; n <= 12; ++n) {
        CHECK(harmonic_dimension(n, 0) == 1);
        CHECK(harmonic_dimension(n, 1) == n);
    }
    CHECK(harmonic_dimension(3, 2) == 5);   // C(4,2) - C(2,0) = 6 - 1
    CHECK(harmonic_dimension(4, 2) == 9);
    CHECK(harmonic_dimension(3, 10) == 21); // 2l+1 on S_2

    // harmonic_dimension cross-checks its two closed forms internally; also
    // pin the values against an independent Pascal-triangle evaluation
    std::vector<std::vector<long long>> C(40, std::vector<long long>(40, 0));
    for (int a = 0; a < 40; ++a) {
        C[a][0] = 1;
        for (int b = 1; b <= a; ++b)
            C[a][b] = C[a - 1][b - 1] + (b <= a - 1 ? C[a - 1][b] : 0);
    }
    for (int n = 3; n <= 12; ++n) {
        for (int l = 0; l <= 10; ++l) {
            const long long expect = C[n + l - 1][l] - (l >= 2 ? C[n + l - 3][l - 2] : 0);
            CHECK(harmonic_dimension(n, l) == expect);
        }
    }

    CHECK_THROWS_AS(harmonic_dimension(2, 1), std::invalid_argument);

    for (int n : {3, 6, 11}) {
        for (int l : {0, 1, 5, 9}) {
            const double exact = std::log(static_cast<double>(harmonic_dimension(n, l)));
            CHECK(std::abs(log_harmonic_dimension(n, l) - exact) < 1e-10 * (1.0 + exact));
        }
    }
}

TEST_CASE("kravchuk: closed-form edges and the character-sum identity") {
    for (int n : {2, 5, 9}) {
        long long binom = 1;
        for (int h = 0; h <= n; ++h) {
            CHECK(kravchuk(n, 0, h) == binom);  // kappa_0(h) = C(n,h)
            binom = binom * (n - h) / (h + 1);
        }
        for (int k = 0; k <= n; ++k) CHECK(kravchuk(n, k, 0) == 1);
    }
    CHECK(kravchuk(2, 1, 1) == 0);

    // kappa_k(h) equals the sum of a weight-k character over the
    // weight-h points, exactly
    for (int n = 2; n <= 10; ++n)
        for (int k = 0; k <= n; ++k)
            for (int h = 0; h <= n; ++h)
                CHECK(kravchuk(n, k, h) == oracle::character_sum(n, k, h));

    CHECK_THROWS_AS(kravchuk(4, 5, 0), std::invalid_argument);
    CHECK_THROWS_AS(kravchuk(4, 0, -1), std::invalid_argument);
}

TEST_CASE("sphere surface areas") {
    CHECK(sphere_surface_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-13));
    CHECK(sphere_surface_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-13));
    CHECK(sphere_surface_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-13));
    for (int n : {3, 4, 7, 12})
        CHECK(sphere_band_factor(n) ==
              doctest::Approx(sphere_surface_area(n - 1) / sphere_surface_area(n))
                  .epsilon(1e-12));
    CHECK_THROWS_AS(sphere_surface_area(1), std::invalid_argument);
}

TEST_CASE("gegenbauer basis: normalization, poles, bounds") {
    for (int n : {3, 4, 6, 10}) {
        GegenbauerBasis basis(n, 12);
        for (double z : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
            CHECK(basis.eval(0, z) == 1.0);
            CHECK(basis.eval(1, z) ==
                  doctest::Approx(std::sqrt(double(n)) * z).epsilon(1e-14));
        }
        for (int l = 0; l <= 12; ++l) {
            const double pole = std::sqrt(static_cast<double>(harmonic_dimension(n, l)));
            CHECK(std::abs(basis.eval(l, 1.0) - pole) < 1e-10 * pole);
            CHECK(std::abs(std::abs(basis.eval(l, -1.0)) - pole) < 1e-10 * pole);
            for (int i = 0; i <= 200; ++i) {
                const double z = -1.0 + 2.0 * i / 200.0;
                CHECK(std::abs(basis.eval(l, z)) <= pole * (1.0 + 1e-12));
            }
        }
    }
    GegenbauerBasis b5(5, 3);
    CHECK_THROWS_AS(b5.eval(1, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(b5.eval(4, 0.0), std::invalid_argument);
}

TEST_CASE("gegenbauer recurrence matches the exact alternating sum") {
    // rational-arithmetic oracle for l <= 8, both parities of n
    for (int n : {3, 4, 5, 8, 12}) {
        GegenbauerBasis basis(n, 8);
        for (int l = 0; l <= 8; ++l) {
            for (auto [zn, zd] : std::vector<std::pair<long long, long long>>{
                     {0, 1}, {1, 3}, {-2, 5}, {7, 8}, {1, 1}, {-1, 1}}) {
                const double expect = oracle::gegenbauer_oracle(n, l, zn, zd);
                const double got = basis.eval(l, double(zn) / double(zd));
                CHECK(std::abs(got - expect) < 1e-12 * (1.0 + std::abs(expect)));
            }
        }
    }
}

TEST_CASE("gauss-jacobi rule: normalization, moments, orthonormality") {
    for (int n : {3, 4, 7, 10}) {
        for (int points : {5, 16, 64}) {
            const QuadratureRule rule = gauss_jacobi_rule(n, points);
            double wsum = 0.0;
            for (std::size_t i = 0; i < rule.weights.size(); ++i) {
                CHECK(rule.weights[i] > 0.0);
                CHECK(rule.nodes[i] > -1.0);
                CHECK(rule.nodes[i] < 1.0);
                wsum += rule.weights[i];
            }
            CHECK(wsum == doctest::Approx(1.0).epsilon(1e-13));

            // exact for monomials up to degree 2*points-1 (odd ones vanish)
            for (int m = 0; 2 * m + 1 <= 2 * points - 1; ++m) {
                const double got =
                    rule.integrate([m](double z) { return std::pow(z, 2 * m); });
                CHECK(got == doctest::Approx(oracle::zonal_even_moment(n, m)).epsilon(1e-12));
                const double odd =
                    rule.integrate([m](double z) { return std::pow(z, 2 * m + 1); });
                CHECK(std::abs(odd) < 1e-13);
            }
        }
    }

    for (int n : {3, 4, 6, 10}) {
        GegenbauerBasis basis(n, 8);
        const QuadratureRule rule = gauss_jacobi_rule(n, 64);
        for (int l = 0; l <= 8; ++l) {
            for (int m = l; m <= 8; ++m) {
                const double ip = rule.integrate(
                    [&](double z) { return basis.eval(l, z) * basis.eval(m, z); });
                if (l == m)
                    CHECK(ip == doctest::Approx(1.0).epsilon(1e-9));
                else
                    CHECK(std::abs(ip) < 1e-9);
            }
        }
        const double g12 =
            rule.integrate([&](double z) { return basis.eval(1, z) * basis.eval(2, z); });
        CHECK(std::abs(g12) < 1e-12);
        const double g33 =
            rule.integrate([&](double z) { return basis.eval(3, z) * basis.eval(3, z); });
        CHECK(std::abs(g33 - 1.0) < 1e-10);
    }

    CHECK_THROWS_AS(gauss_jacobi_rule(2, 8), std::invalid_argument);
    CHECK_THROWS_AS(gauss_jacobi_rule(5, 0), std::invalid_argument);
}

TEST_CASE("integrate_zonal doubles until agreement") {
    const double v = integrate_zonal(6, [](double z) { return std::exp(z); });
    const double ref =
        gauss_jacobi_rule(6, 512).integrate([](double z) { return std::exp(z); });
    CHECK(v == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("truncated dirac series stays essentially nonnegative") {
    // the heat kernel is a nonnegative density; truncation may dip only
    // within the tail tolerance
    for (int n : {4, 7}) {
        const int L = 120;
        GegenbauerBasis basis(n, L);
        const double t = 0.05;
        std::vector<double> gam(L + 1);
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double z = -1.0 + 2.0 * i / 2000.0;
            basis.eval_all(z, gam);
            double k = 0.0;
            for (int l = 0; l <= L; ++l)
                k += std::exp(-t * l * (n + l - 2.0) +
                              0.5 * log_harmonic_dimension(n, l)) *
                     gam[static_cast<std::size_t>(l)];
            worst = std::min(worst, k);
        }
        CHECK(worst >= -1e-8);
    }
}
