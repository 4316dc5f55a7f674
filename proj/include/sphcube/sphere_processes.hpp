#pragma once

#include "sphcube/estimate.hpp"
#include "sphcube/polynomial.hpp"
#include "sphcube/rng.hpp"
#include "sphcube/rotation.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace sphcube {

// Haar-uniform element of SO(n): QR of a Gaussian matrix with the diagonal
// sign correction (without it the distribution is not Haar), then one column
// negation when det = -1.
Rotation haar_rotation(int n, Xoshiro256pp& rng);

// Uniform point on S_{n-1} (normalized Gaussian vector).
Eigen::VectorXd sample_uniform_sphere(int n, Xoshiro256pp& rng);

// Uniform unit tangent at u: Gaussian vector projected orthogonal to u.
Eigen::VectorXd sample_unit_tangent(const Eigen::VectorXd& u, Xoshiro256pp& rng);

// Distribution of the angle r travelled by Brownian motion on S_{n-1} in
// time t.  Density on [0, pi] is proportional to
//   sin(r)^{n-2} * sum_{l<=L} exp(-t l (n+l-2)) sqrt(d_l) gamma_l(cos r),
// truncated where the neglected tail is below `tol` and tabulated as a CDF.
class HeatRadialDistribution {
public:
    enum class Mode { Series, Sde };

    static constexpr int kMaxSeriesTerms = 400;

    int dimension() const { return n_; }
    double time() const { return t_; }
    Mode mode() const { return mode_; }
    int truncation_terms() const { return truncation_L_; }

    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& density() const { return density_; }
    const std::vector<double>& cdf() const { return cdf_; }

    // most negative value of the zonal kernel seen on the grid, before the
    // density clamp; a correct truncation keeps this within -tol
    double min_kernel() const { return min_kernel_; }

    double sample(Xoshiro256pp& rng) const;  // inverse-CDF draw

    // grid quadrature of r, r^2, cos r under the tabulated density
    double mean_r() const;
    double mean_r_squared() const;
    double mean_cos_r() const;

    friend HeatRadialDistribution build_heat_distribution(int n, double t, double tol,
                                                          int grid_points);

private:
    HeatRadialDistribution() = default;

    int n_ = 0;
    double t_ = 0.0;
    Mode mode_ = Mode::Series;
    int truncation_L_ = 0;
    double min_kernel_ = 0.0;
    std::vector<double> grid_, density_, cdf_;
};

// Throws std::domain_error when t is below the series threshold (the
// truncation would need more than kMaxSeriesTerms terms); the SDE sampler
// simulate_jacobi_angle covers that regime.
HeatRadialDistribution build_heat_distribution(int n, double t, double tol = 1e-9,
                                               int grid_points = 4097);

// Smallest t for which the series truncation fits in kMaxSeriesTerms.
double heat_series_min_time(int n, double tol = 1e-9);

double sample_heat_angle(const HeatRadialDistribution& dist, Xoshiro256pp& rng);

// One path of the radial Jacobi process dr = (n-2) cot(r) dt + sqrt(2) dW
// started at r = 0, integrated to time t.  Near the origin the exact flat
// Bessel transition replaces the Euler step (the cot drift is singular
// there); elsewhere a drift-Heun step with reflection at 0 and pi.
// Independent oracle for build_heat_distribution.
double simulate_jacobi_angle(int n, double t, double dt, Xoshiro256pp& rng);

// Pr[sgn f(u) != sgn f(v)] where u is uniform and v is u moved along a
// uniform tangent by a heat-kernel angle; sgn(0) = +1.
Estimate spherical_sensitivity_mc(const std::function<double(const Eigen::VectorXd&)>& value_fn,
                                  int n, double t, long long trials, std::uint64_t seed);
Estimate spherical_sensitivity_mc(const std::function<double(const Eigen::VectorXd&)>& value_fn,
                                  const HeatRadialDistribution& dist, long long trials,
                                  std::uint64_t seed);

// SS_t of the raw (not thresholded) function: (1/2) sum_l ||f_l||^2
// (1 - exp(-t l (n+l-2))).
double spherical_sensitivity_exact(const HarmonicDecomposition& dec, double t);

// (sqrt(2(n-1)t), 2 Gamma(n/2)/Gamma((n-1)/2) sqrt(t)): the crude and the
// chi-refined upper bounds on E[r].
std::pair<double, double> mean_angle_bounds(int n, double t);

} // namespace sphcube
