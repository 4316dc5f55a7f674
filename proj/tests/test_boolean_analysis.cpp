#include "sphcube/boolean_analysis.hpp"

#include "sphcube/sphere_processes.hpp"

#include "oracle_helpers.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

using namespace sphcube;

namespace {

TruthTable maj3_table() {
    // sgn(x1 + x2 + x3); bit = 0 means coordinate +1/sqrt(3)
    std::vector<double> v(8);
    for (std::uint32_t x = 0; x < 8; ++x)
        v[x] = (std::popcount(x) <= 1) ? 1.0 : -1.0;
    return TruthTable(3, std::move(v));
}

} // namespace

TEST_CASE("walsh-hadamard: dictator, parity, majority, round trip") {
    {
        // f = sgn(x_1): fhat at mask {1} is 1
        std::vector<double> v(16);
        for (std::uint32_t x = 0; x < 16; ++x) v[x] = (x & 1u) ? -1.0 : 1.0;
        const FourierSpectrum s = walsh_hadamard(TruthTable(4, std::move(v)));
        CHECK(s.is_sign_function);
        for (std::uint32_t k = 0; k < 16; ++k)
            CHECK(s.coeffs[k] == doctest::Approx(k == 1 ? 1.0 : 0.0).epsilon(1e-15));
    }
    {
        // parity: all the energy at the full mask
        std::vector<double> v(32);
        for (std::uint32_t x = 0; x < 32; ++x) v[x] = (std::popcount(x) % 2 == 0) ? 1.0 : -1.0;
        const FourierSpectrum s = walsh_hadamard(TruthTable(5, std::move(v)));
        CHECK(s.coeffs[31] == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(s.energy() == doctest::Approx(1.0).epsilon(1e-15));
    }
    {
        const FourierSpectrum s = walsh_hadamard(maj3_table());
        for (std::uint32_t k : {1u, 2u, 4u})
            CHECK(s.coeffs[k] == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(s.coeffs[7] == doctest::Approx(-0.5).epsilon(1e-15));
    }

    // round trip and Parseval on random tables
    Xoshiro256pp rng(2024);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.uniform01() * 13) % 13;  // 2..14
        const TruthTable t = oracle::random_real_table(n, rng);
        const FourierSpectrum s = walsh_hadamard(t);
        const TruthTable back = inverse_walsh_hadamard(s);
        double max_err = 0.0, dot = 0.0;
        for (std::size_t i = 0; i < t.values.size(); ++i) {
            max_err = std::max(max_err, std::abs(back.values[i] - t.values[i]));
            dot += t.values[i] * t.values[i];
        }
        dot /= static_cast<double>(t.values.size());
        CHECK(max_err < 1e-12);
        CHECK(std::abs(s.energy() - dot) < 1e-12 * (1.0 + dot));  // Parseval
    }

    // sign tables carry unit total energy
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 2 + rep;
        const FourierSpectrum s = walsh_hadamard(oracle::random_sign_table(n, rng));
        CHECK(s.is_sign_function);
        CHECK(std::abs(s.energy() - 1.0) < 1e-12);
    }
}

TEST_CASE("noise sensitivity: closed forms and the exhaustive oracle") {
    {
        std::vector<double> v(16);
        for (std::uint32_t x = 0; x < 16; ++x) v[x] = (x & 1u) ? -1.0 : 1.0;
        const FourierSpectrum dict = walsh_hadamard(TruthTable(4, std::move(v)));
        for (double eps : {0.0, 0.05, 0.3, 0.5})
            CHECK(noise_sensitivity_exact(dict, eps) == doctest::Approx(eps).epsilon(1e-14));
    }
    for (int n : {3, 6}) {
        std::vector<double> v(std::size_t{1} << n);
        for (std::uint32_t x = 0; x < v.size(); ++x)
            v[x] = (std::popcount(x) % 2 == 0) ? 1.0 : -1.0;
        const FourierSpectrum par = walsh_hadamard(TruthTable(n, std::move(v)));
        for (double eps : {0.1, 0.25})
            CHECK(noise_sensitivity_exact(par, eps) ==
                  doctest::Approx(0.5 * (1.0 - std::pow(1.0 - 2.0 * eps, n))).epsilon(1e-14));
    }
    {
        const FourierSpectrum maj = walsh_hadamard(maj3_table());
        // 1/2 (1 - 3 (1/4)(0.8) - (1/4)(0.8)^3) = 0.136
        CHECK(noise_sensitivity_exact(maj, 0.1) == doctest::Approx(0.136).epsilon(1e-13));
        CHECK(noise_sensitivity_exact(maj, 0.1) ==
              doctest::Approx(oracle::ns_exhaustive(maj3_table(), 0.1)).epsilon(1e-13));
    }

    // flip-probability definition, exhaustively, for random sign tables
    Xoshiro256pp rng(7);
    for (int rep = 0; rep < 12; ++rep) {
        const int n = 3 + rep % 6;  // 3..8
        const TruthTable t = oracle::random_sign_table(n, rng);
        const FourierSpectrum s = walsh_hadamard(t);
        for (double eps : {0.05, 0.1, 0.25}) {
            CHECK(noise_sensitivity_exact(s, eps) ==
                  doctest::Approx(oracle::ns_exhaustive(t, eps)).epsilon(1e-12));
        }
        // monotone in eps
        double prev = 0.0;
        for (int i = 0; i <= 20; ++i) {
            const double eps = 0.5 * i / 20.0;
            const double cur = noise_sensitivity_exact(s, eps);
            CHECK(cur >= prev - 1e-14);
            prev = cur;
        }
    }
    CHECK_THROWS_AS(noise_sensitivity_exact(walsh_hadamard(maj3_table()), 0.6),
                    std::invalid_argument);
}

TEST_CASE("average sensitivity: closed forms and the edge oracle") {
    {
        std::vector<double> v(16);
        for (std::uint32_t x = 0; x < 16; ++x) v[x] = (x & 1u) ? -1.0 : 1.0;
        CHECK(average_sensitivity_exact(walsh_hadamard(TruthTable(4, std::move(v)))) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    for (int n : {4, 7}) {
        std::vector<double> v(std::size_t{1} << n);
        for (std::uint32_t x = 0; x < v.size(); ++x)
            v[x] = (std::popcount(x) % 2 == 0) ? 1.0 : -1.0;
        CHECK(average_sensitivity_exact(walsh_hadamard(TruthTable(n, std::move(v)))) ==
              doctest::Approx(double(n)).epsilon(1e-14));
    }
    CHECK(average_sensitivity_exact(walsh_hadamard(maj3_table())) ==
          doctest::Approx(1.5).epsilon(1e-14));

    Xoshiro256pp rng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = 3 + rep % 8;  // 3..10
        const TruthTable t = oracle::random_sign_table(n, rng);
        CHECK(average_sensitivity_exact(walsh_hadamard(t)) ==
              doctest::Approx(oracle::as_edge_count(t)).epsilon(1e-12));
    }
}

TEST_CASE("eps' and the heat-time dictionary") {
    CHECK(eps_prime(0.0) == 0.0);
    CHECK(eps_prime(0.1) == doctest::Approx(0.5 * std::log(1.25)).epsilon(1e-15));
    CHECK(eps_prime(0.1) == doctest::Approx(0.11157177565710485).epsilon(1e-14));
    CHECK_THROWS_AS(eps_prime(0.5), std::invalid_argument);
    CHECK_THROWS_AS(eps_prime(-0.01), std::invalid_argument);

    CHECK(heat_time_from_eps(0.0, 5) == 0.0);
    CHECK(heat_time_from_eps(0.1, 8) == doctest::Approx(std::log(1.25) / 8.0).epsilon(1e-15));
    CHECK(heat_time_from_eps(0.1, 8) == doctest::Approx(0.027892943914276213).epsilon(1e-13));

    for (double eps : {0.0, 0.05, 0.2, 0.49}) {
        // eps <= eps' and the exact round trip exp(-2 eps') = 1 - 2 eps
        CHECK(eps_prime(eps) >= eps - 1e-15);
        CHECK(std::exp(-2.0 * eps_prime(eps)) == doctest::Approx(1.0 - 2.0 * eps).epsilon(1e-14));
        for (int n : {3, 9}) {
            CHECK(heat_time_from_eps(eps, n) * n ==
                  doctest::Approx(2.0 * eps_prime(eps)).epsilon(1e-14));
        }
    }
}

TEST_CASE("multilinearize imposes x_i^2 = 1/n") {
    const int n = 5;
    {
        std::vector<int> e(n, 0);
        e[0] = 2;
        const SparsePolynomial q = multilinearize(SparsePolynomial::monomial(n, e, 1.0), n);
        CHECK(q.degree() == 0);
        CHECK(q.coefficient(std::vector<int>(n, 0)) == doctest::Approx(1.0 / n).epsilon(1e-15));
    }
    {
        std::vector<int> e(n, 0);
        e[0] = 1;
        e[1] = 1;
        const SparsePolynomial p = SparsePolynomial::monomial(n, e, 2.5);
        const SparsePolynomial q = multilinearize(p, n);
        CHECK(q.coefficient(e) == 2.5);
        CHECK(q.term_count() == 1);
    }
    {
        std::vector<int> e(n, 0);
        e[0] = 3;
        e[1] = 1;
        const SparsePolynomial q = multilinearize(SparsePolynomial::monomial(n, e, 1.0), n);
        std::vector<int> want(n, 0);
        want[0] = 1;
        want[1] = 1;
        CHECK(q.coefficient(want) == doctest::Approx(1.0 / n).epsilon(1e-15));
    }

    // pointwise agreement on the cube
    Xoshiro256pp rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        const SparsePolynomial p = random_polynomial(4, 4, rng);
        const SparsePolynomial q = multilinearize(p, 4);
        const TruthTable tp = restrict_to_cube(p, 4);
        const TruthTable tq = restrict_to_cube(q, 4);
        for (std::size_t i = 0; i < tp.values.size(); ++i)
            CHECK(tp.values[i] == doctest::Approx(tq.values[i]).epsilon(1e-12));
    }
}

TEST_CASE("restrict_to_cube: patterns, thresholding, guards") {
    {
        const TruthTable t = restrict_to_cube(SparsePolynomial::constant(3, 1.0), 3);
        for (double v : t.values) CHECK(v == 1.0);
    }
    {
        const TruthTable t = restrict_to_cube(SparsePolynomial::coordinate(4, 0), 4);
        for (std::uint32_t x = 0; x < 16; ++x)
            CHECK(t.values[x] ==
                  doctest::Approx(((x & 1u) ? -1.0 : 1.0) / 2.0).epsilon(1e-15));
    }
    {
        SparsePolynomial sum3(3);
        for (int i = 0; i < 3; ++i) sum3 += SparsePolynomial::coordinate(3, i);
        const TruthTable t = restrict_to_cube(sum3, 3, /*threshold=*/true);
        const TruthTable maj = maj3_table();
        for (std::size_t i = 0; i < 8; ++i) CHECK(t.values[i] == maj.values[i]);
    }
    {
        // sgn(0) = +1
        const TruthTable t = restrict_to_cube(SparsePolynomial::constant(2, 0.0), 2, true);
        for (double v : t.values) CHECK(v == 1.0);
    }
    CHECK_THROWS_AS(restrict_to_cube(SparsePolynomial::constant(25, 1.0), 25),
                    std::invalid_argument);
}

TEST_CASE("rotated tabulation agrees with symbolic rotation") {
    Xoshiro256pp rng(17);
    for (int rep = 0; rep < 4; ++rep) {
        const int n = 4 + rep;
        const SparsePolynomial p = random_polynomial(n, 3, rng);
        const Rotation R = haar_rotation(n, rng);
        const TruthTable direct = CubeTabulator(p, n).tabulate(R);
        const TruthTable via_symbolic = restrict_to_cube(rotate_polynomial(p, R), n);
        for (std::size_t i = 0; i < direct.values.size(); ++i)
            CHECK(direct.values[i] == doctest::Approx(via_symbolic.values[i]).epsilon(1e-10));
    }
}

TEST_CASE("restricted harmonics have no energy above their degree") {
    // a degree-l harmonic multilinearizes to degree <= l: all energy sits at
    // |k| <= l (and generically some of it exactly at |k| = l)
    Xoshiro256pp rng(23);
    for (int n : {5, 8, 10}) {
        const SparsePolynomial p = random_polynomial(n, 4, rng);
        const HarmonicDecomposition dec = harmonic_decompose(p);
        for (std::size_t i = 0; i < dec.parts.size(); ++i) {
            const auto& [l, h] = dec.parts[i];
            const FourierSpectrum s = walsh_hadamard(restrict_to_cube(h, n));
            const double total = s.energy();
            if (total == 0.0) continue;
            CHECK(s.energy_above_weight(l) <= 1e-10 * total);
        }
    }
}

TEST_CASE("total cube energy of a rotated function averages to its sphere norm") {
    Xoshiro256pp rng(29);
    const int n = 6;
    const SparsePolynomial p = random_polynomial(n, 3, rng);
    const double target = sphere_norm_squared(p);

    const int rotations = 400;
    std::vector<double> vals(rotations);
    const CubeTabulator tab(p, n);
    for (int i = 0; i < rotations; ++i) {
        Xoshiro256pp r = Xoshiro256pp::stream(555, static_cast<std::uint64_t>(i));
        const Rotation R = haar_rotation(n, r);
        vals[static_cast<std::size_t>(i)] = walsh_hadamard(tab.tabulate(R)).energy();
    }
    const Estimate est = make_estimate(vals, 555);
    CHECK(std::abs(est.mean - target) <= 3.0 * est.std_error);
}
