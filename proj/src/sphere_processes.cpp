#include "sphcube/sphere_processes.hpp"

#include "sphcube/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sphcube {

Rotation haar_rotation(int n, Xoshiro256pp& rng) {
    if (n < 2) throw std::invalid_argument("haar_rotation: requires n >= 2");
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::VectorXd diag = qr.matrixQR().diagonal();
    for (int j = 0; j < n; ++j)
        if (diag(j) < 0.0) Q.col(j) = -Q.col(j);
    if (Q.determinant() < 0.0) Q.col(n - 1) = -Q.col(n - 1);
    return Rotation(n, std::move(Q));
}

Eigen::VectorXd sample_uniform_sphere(int n, Xoshiro256pp& rng) {
    if (n < 1) throw std::invalid_argument("sample_uniform_sphere: requires n >= 1");
    Eigen::VectorXd g(n);
    double norm = 0.0;
    do {
        for (int i = 0; i < n; ++i) g(i) = rng.normal();
        norm = g.norm();
    } while (norm < 1e-100);
    return g / norm;
}

Eigen::VectorXd sample_unit_tangent(const Eigen::VectorXd& u, Xoshiro256pp& rng) {
    const auto n = u.size();
    Eigen::VectorXd g(n);
    double norm = 0.0;
    do {
        for (Eigen::Index i = 0; i < n; ++i) g(i) = rng.normal();
        g -= g.dot(u) * u;
        norm = g.norm();
    } while (norm < 1e-100);
    return g / norm;
}

namespace {

// Truncation point of the zonal heat series: smallest L with the remaining
// tail below tol, using |gamma_l| <= sqrt(d_l) so each term is bounded by
// exp(-t l (n+l-2)) d_l.  Returns L or kMaxSeriesTerms+1 when out of range.
int series_truncation(int n, double t, double tol) {
    double prev_term = 1e300;
    for (int l = 1; l <= HeatRadialDistribution::kMaxSeriesTerms + 1; ++l) {
        const double term =
            std::exp(-t * l * (n + l - 2.0) + log_harmonic_dimension(n, l));
        // once terms at least halve each step, the tail is below 2*term
        if (term < 0.5 * tol && term <= 0.5 * prev_term) return l;
        prev_term = term;
    }
    return HeatRadialDistribution::kMaxSeriesTerms + 1;
}

} // namespace

HeatRadialDistribution build_heat_distribution(int n, double t, double tol, int grid_points) {
    if (n < 3) throw std::invalid_argument("build_heat_distribution: requires n >= 3");
    if (t <= 0.0) throw std::invalid_argument("build_heat_distribution: requires t > 0");
    if (tol <= 0.0) throw std::invalid_argument("build_heat_distribution: requires tol > 0");
    if (grid_points < 4097) grid_points = 4097;

    const int L = series_truncation(n, t, tol);
    if (L > HeatRadialDistribution::kMaxSeriesTerms)
        throw std::domain_error(
            "build_heat_distribution: t = " + std::to_string(t) + " is below the series "
            "threshold t_min(n=" + std::to_string(n) + ") = " +
            std::to_string(heat_series_min_time(n, tol)) +
            "; use the SDE sampler (simulate_jacobi_angle)");

    HeatRadialDistribution dist;
    dist.n_ = n;
    dist.t_ = t;
    dist.mode_ = HeatRadialDistribution::Mode::Series;
    dist.truncation_L_ = L;

    GegenbauerBasis basis(n, L);
    std::vector<double> decay(static_cast<std::size_t>(L) + 1);
    for (int l = 0; l <= L; ++l)
        decay[static_cast<std::size_t>(l)] =
            std::exp(-t * l * (n + l - 2.0) + 0.5 * log_harmonic_dimension(n, l));

    const auto m = static_cast<std::size_t>(grid_points);
    dist.grid_.resize(m);
    dist.density_.resize(m);
    dist.min_kernel_ = 0.0;
    std::vector<double> gam(static_cast<std::size_t>(L) + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = M_PI * static_cast<double>(i) / static_cast<double>(m - 1);
        dist.grid_[i] = r;
        basis.eval_all(std::cos(r), gam);
        double kernel = 0.0;
        for (int l = 0; l <= L; ++l)
            kernel += decay[static_cast<std::size_t>(l)] * gam[static_cast<std::size_t>(l)];
        dist.min_kernel_ = std::min(dist.min_kernel_, kernel);
        dist.density_[i] = std::max(kernel, 0.0) * std::pow(std::sin(r), n - 2);
    }

    // trapezoid CDF, normalized
    dist.cdf_.resize(m);
    dist.cdf_[0] = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
        const double h = dist.grid_[i] - dist.grid_[i - 1];
        dist.cdf_[i] = dist.cdf_[i - 1] + 0.5 * h * (dist.density_[i] + dist.density_[i - 1]);
    }
    const double total = dist.cdf_.back();
    if (!(total > 0.0))
        throw std::runtime_error("build_heat_distribution: degenerate density");
    for (std::size_t i = 0; i < m; ++i) {
        dist.cdf_[i] /= total;
        dist.density_[i] /= total;
    }
    dist.cdf_.back() = 1.0;
    return dist;
}

double heat_series_min_time(int n, double tol) {
    double lo = 1e-9, hi = 1.0;
    if (series_truncation(n, lo, tol) <= HeatRadialDistribution::kMaxSeriesTerms) return lo;
    while (series_truncation(n, hi, tol) > HeatRadialDistribution::kMaxSeriesTerms) hi *= 2.0;
    for (int it = 0; it < 60 && hi / lo > 1.0 + 1e-6; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (series_truncation(n, mid, tol) <= HeatRadialDistribution::kMaxSeriesTerms)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double HeatRadialDistribution::sample(Xoshiro256pp& rng) const {
    const double u = rng.uniform01();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.begin()) return grid_.front();
    if (it == cdf_.end()) return grid_.back();
    const auto hi = static_cast<std::size_t>(it - cdf_.begin());
    const std::size_t lo = hi - 1;
    const double span = cdf_[hi] - cdf_[lo];
    const double frac = span > 0.0 ? (u - cdf_[lo]) / span : 0.0;
    return grid_[lo] + frac * (grid_[hi] - grid_[lo]);
}

namespace {

double trapezoid_mean(const std::vector<double>& grid, const std::vector<double>& dens,
                      const std::function<double(double)>& f) {
    double acc = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double h = grid[i] - grid[i - 1];
        acc += 0.5 * h * (dens[i] * f(grid[i]) + dens[i - 1] * f(grid[i - 1]));
    }
    return acc;
}

} // namespace

double HeatRadialDistribution::mean_r() const {
    return trapezoid_mean(grid_, density_, [](double r) { return r; });
}

double HeatRadialDistribution::mean_r_squared() const {
    return trapezoid_mean(grid_, density_, [](double r) { return r * r; });
}

double HeatRadialDistribution::mean_cos_r() const {
    return trapezoid_mean(grid_, density_, [](double r) { return std::cos(r); });
}

double sample_heat_angle(const HeatRadialDistribution& dist, Xoshiro256pp& rng) {
    return dist.sample(rng);
}

namespace {

double fold_to_0_pi(double x, int& escapes) {
    if (x < -M_PI || x > 2.0 * M_PI) ++escapes;
    x = std::abs(x);
    x = std::fmod(x, 2.0 * M_PI);
    return x > M_PI ? 2.0 * M_PI - x : x;
}

} // namespace

double simulate_jacobi_angle(int n, double t, double dt, Xoshiro256pp& rng) {
    if (n < 3) throw std::invalid_argument("simulate_jacobi_angle: requires n >= 3");
    if (t <= 0.0 || dt <= 0.0 || dt > t / 100.0)
        throw std::invalid_argument("simulate_jacobi_angle: requires 0 < dt <= t/100");

    const auto steps = static_cast<long long>(std::llround(t / dt));
    const double c = n - 2.0;
    const double sigma = std::sqrt(2.0 * dt);
    // below this the exact flat Bessel transition replaces the Euler step
    const double r_bessel = 5.0 * std::sqrt(2.0 * (n - 1.0) * dt);

    auto bessel_step = [&](double r) {
        // norm of an (n-1)-dim Gaussian step from distance r
        double s = 0.0;
        double z = rng.normal() + r / sigma;
        s += z * z;
        for (int i = 1; i < n - 1; ++i) {
            z = rng.normal();
            s += z * z;
        }
        return sigma * std::sqrt(s);
    };

    int escapes = 0;
    double r = bessel_step(0.0);
    for (long long k = 1; k < steps; ++k) {
        if (r < r_bessel) {
            r = bessel_step(r);
            continue;
        }
        const double dw = sigma * rng.normal();
        const double b0 = c / std::tan(r);
        double r_pred = fold_to_0_pi(r + b0 * dt + dw, escapes);
        r_pred = std::clamp(r_pred, 1e-9, M_PI - 1e-9);
        const double b1 = c / std::tan(r_pred);
        r = fold_to_0_pi(r + 0.5 * (b0 + b1) * dt + dw, escapes);
    }
    if (escapes > std::max<long long>(1, steps / 1000))
        throw std::runtime_error("simulate_jacobi_angle: step-size instability (" +
                                 std::to_string(escapes) + " boundary escapes in " +
                                 std::to_string(steps) + " steps); reduce dt");
    return r;
}

Estimate spherical_sensitivity_mc(const std::function<double(const Eigen::VectorXd&)>& value_fn,
                                  const HeatRadialDistribution& dist, long long trials,
                                  std::uint64_t seed) {
    if (trials < 100)
        throw std::invalid_argument("spherical_sensitivity_mc: requires trials >= 100");
    const int n = dist.dimension();
    std::vector<double> values(static_cast<std::size_t>(trials));
    for (long long i = 0; i < trials; ++i) {
        Xoshiro256pp rng = Xoshiro256pp::stream(seed, static_cast<std::uint64_t>(i));
        const Eigen::VectorXd u = sample_uniform_sphere(n, rng);
        const Eigen::VectorXd w = sample_unit_tangent(u, rng);
        const double r = dist.sample(rng);
        const Eigen::VectorXd v = std::cos(r) * u + std::sin(r) * w;
        const bool su = value_fn(u) >= 0.0;
        const bool sv = value_fn(v) >= 0.0;
        values[static_cast<std::size_t>(i)] = (su != sv) ? 1.0 : 0.0;
    }
    return make_estimate(values, seed);
}

Estimate spherical_sensitivity_mc(const std::function<double(const Eigen::VectorXd&)>& value_fn,
                                  int n, double t, long long trials, std::uint64_t seed) {
    if (trials < 100)
        throw std::invalid_argument("spherical_sensitivity_mc: requires trials >= 100");
    if (t < 0.0) throw std::invalid_argument("spherical_sensitivity_mc: requires t >= 0");
    if (t == 0.0) {
        // v = u exactly; the estimator is identically zero
        std::vector<double> zeros(static_cast<std::size_t>(trials), 0.0);
        return make_estimate(zeros, seed);
    }
    const HeatRadialDistribution dist = build_heat_distribution(n, t);
    return spherical_sensitivity_mc(value_fn, dist, trials, seed);
}

double spherical_sensitivity_exact(const HarmonicDecomposition& dec, double t) {
    if (t < 0.0) throw std::invalid_argument("spherical_sensitivity_exact: requires t >= 0");
    double acc = 0.0;
    for (std::size_t i = 0; i < dec.parts.size(); ++i) {
        const int l = dec.parts[i].first;
        acc += dec.norms[i] * (1.0 - std::exp(-t * l * (dec.n + l - 2.0)));
    }
    return 0.5 * acc;
}

std::pair<double, double> mean_angle_bounds(int n, double t) {
    if (n < 3) throw std::invalid_argument("mean_angle_bounds: requires n >= 3");
    if (t < 0.0) throw std::invalid_argument("mean_angle_bounds: requires t >= 0");
    const double crude = std::sqrt(2.0 * (n - 1.0) * t);
    const double chi =
        2.0 * std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1.0))) * std::sqrt(t);
    return {crude, chi};
}

} // namespace sphcube
