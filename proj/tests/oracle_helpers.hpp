// Test-only oracles, kept independent of the library code paths they check.
#pragma once

#include "sphcube/boolean_analysis.hpp"
#include "sphcube/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---- exact rational arithmetic on __int128 (enough for small oracles) ----

struct Rat {
    __int128 num = 0;
    __int128 den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(__int128 n, __int128 d) : num(n), den(d) { normalize(); }

    static __int128 gcd128(__int128 a, __int128 b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    void normalize() {
        if (den == 0) throw std::domain_error("Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const __int128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
    Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
    Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
    Rat operator/(const Rat& o) const { return Rat(num * o.den, den * o.num); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// The classical Gegenbauer polynomial G_ell at parameter alpha = n/2 - 1 as
// the explicit alternating sum, evaluated at the rational z = zn/zd.  The
// Pochhammer-style ratio (ell-k+alpha-1)!/(alpha-1)! is the product
// prod_{j=0}^{ell-k-1} (alpha + j), rational for integer n.
inline Rat gegenbauer_sum_exact(int n, int ell, long long zn, long long zd) {
    Rat acc(0);
    for (int k = 0; k <= ell / 2; ++k) {
        Rat term(1);
        for (int j = 0; j < ell - k; ++j) term = term * Rat(n - 2 + 2 * j, 2);  // alpha + j
        long long kfact = 1;
        for (int i = 2; i <= k; ++i) kfact *= i;
        long long mfact = 1;
        for (int i = 2; i <= ell - 2 * k; ++i) mfact *= i;
        term = term / Rat(kfact) / Rat(mfact);
        for (int i = 0; i < ell - 2 * k; ++i) term = term * Rat(2 * zn, zd);
        if (k % 2 == 1) term = Rat(0) - term;
        acc = acc + term;
    }
    return acc;
}

// N_ell = (alpha/(alpha+ell)) C(2 alpha + ell - 1, ell), exact
inline Rat gegenbauer_norm_exact(int n, int ell) {
    Rat binom(1);
    for (int i = 1; i <= ell; ++i) binom = binom * Rat(n - 3 + i, i);
    return Rat(n - 2, n - 2 + 2 * ell) * binom;
}

inline double gegenbauer_oracle(int n, int ell, long long zn, long long zd) {
    const double g = gegenbauer_sum_exact(n, ell, zn, zd).to_double();
    return g / std::sqrt(gegenbauer_norm_exact(n, ell).to_double());
}

// ---- exhaustive Boolean definitions (independent of the transform) ----

// NS as the literal flip probability: sum over all (x, y) of
// eps^{d(x,y)} (1-eps)^{n-d(x,y)} [f(x) != f(y)] / 2^n
inline double ns_exhaustive(const sphcube::TruthTable& f, double eps) {
    const std::size_t N = f.values.size();
    const int n = f.n;
    std::vector<double> pw(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
        pw[static_cast<std::size_t>(d)] = std::pow(eps, d) * std::pow(1.0 - eps, n - d);
    double acc = 0.0;
    for (std::size_t x = 0; x < N; ++x) {
        for (std::size_t y = 0; y < N; ++y) {
            if (f.values[x] != f.values[y])
                acc += pw[static_cast<std::size_t>(std::popcount(x ^ y))];
        }
    }
    return acc / static_cast<double>(N);
}

// AS as n times the edge-boundary fraction
inline double as_edge_count(const sphcube::TruthTable& f) {
    const std::size_t N = f.values.size();
    double disagree = 0.0;
    for (std::size_t x = 0; x < N; ++x)
        for (int i = 0; i < f.n; ++i)
            if (f.values[x] != f.values[x ^ (std::size_t{1} << i)]) disagree += 1.0;
    return disagree / static_cast<double>(N);
}

// sum of the weight-k character over Hamming-weight-h points, brute force
inline long long character_sum(int n, int k_weight, int h) {
    const std::uint32_t mask = (1u << k_weight) - 1u;  // any fixed weight-k character
    long long acc = 0;
    for (std::uint32_t z = 0; z < (1u << n); ++z) {
        if (std::popcount(z) != h) continue;
        acc += (std::popcount(z & mask) % 2 == 0) ? 1 : -1;
    }
    return acc;
}

// ---- moments of the zonal weight, via the Beta-function identity ----
// E_w[z^{2m}] = prod_{j<m} (2j+1)/(n+2j)
inline double zonal_even_moment(int n, int m) {
    double r = 1.0;
    for (int j = 0; j < m; ++j) r *= (2.0 * j + 1.0) / (n + 2.0 * j);
    return r;
}

// ---- Kolmogorov-Smirnov ----

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double ks = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / static_cast<double>(a.size());
        const double fb = static_cast<double>(j) / static_cast<double>(b.size());
        ks = std::max(ks, std::abs(fa - fb));
    }
    return ks;
}

inline double ks_two_sample_critical_1pct(std::size_t m, std::size_t n) {
    return 1.628 * std::sqrt((static_cast<double>(m) + static_cast<double>(n)) /
                             (static_cast<double>(m) * static_cast<double>(n)));
}

// one-sample KS against a tabulated CDF (grid ascending, cdf in [0,1])
inline double ks_one_sample(std::vector<double> samples, const std::vector<double>& grid,
                            const std::vector<double>& cdf) {
    std::sort(samples.begin(), samples.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto it = std::lower_bound(grid.begin(), grid.end(), samples[i]);
        double F;
        if (it == grid.begin())
            F = 0.0;
        else if (it == grid.end())
            F = 1.0;
        else {
            const auto hi = static_cast<std::size_t>(it - grid.begin());
            const double span = grid[hi] - grid[hi - 1];
            const double frac = span > 0.0 ? (samples[i] - grid[hi - 1]) / span : 0.0;
            F = cdf[hi - 1] + frac * (cdf[hi] - cdf[hi - 1]);
        }
        const double lo = static_cast<double>(i) / static_cast<double>(samples.size());
        const double hi2 = static_cast<double>(i + 1) / static_cast<double>(samples.size());
        ks = std::max({ks, std::abs(F - lo), std::abs(F - hi2)});
    }
    return ks;
}

// deterministic random +-1 table
inline sphcube::TruthTable random_sign_table(int n, sphcube::Xoshiro256pp& rng) {
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = rng.uniform01() < 0.5 ? 1.0 : -1.0;
    return sphcube::TruthTable(n, std::move(v));
}

inline sphcube::TruthTable random_real_table(int n, sphcube::Xoshiro256pp& rng) {
    std::vector<double> v(std::size_t{1} << n);
    for (auto& x : v) x = rng.normal();
    return sphcube::TruthTable(n, std::move(v));
}

} // namespace oracle
