#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sphcube {

// Dimension of the space of harmonic homogeneous polynomials of degree ell
// in n variables.  Exact integer arithmetic; both closed forms are computed
// and must agree.  Requires n >= 3.
std::int64_t harmonic_dimension(int n, int ell);

// log(d_ell); stays in range for large n, ell where the integer overflows.
double log_harmonic_dimension(int n, int ell);

// kappa_k(h) = sum_j (-1)^j C(k,j) C(n-k,h-j), exact.  Equals the sum of a
// weight-k character over the Hamming-weight-h points of the cube.
std::int64_t kravchuk(int n, int k, int h);

// Omega_{n-1} = 2 pi^{n/2} / Gamma(n/2), via log-Gamma.  Requires n >= 2.
double sphere_surface_area(int n);

// Omega_{n-2} / Omega_{n-1}: the normalization of the zonal weight so that
// the constant 1 integrates to 1.
double sphere_band_factor(int n);

// Normalized zonal (Gegenbauer) polynomials gamma_ell for S_{n-1}:
// gamma_ell = G_ell / sqrt(N_ell) with <gamma_ell, gamma_m>_S = delta.
// Evaluation is by three-term recurrence on the normalized family; the
// raw alternating sum cancels catastrophically for ell beyond ~20.
class GegenbauerBasis {
public:
    GegenbauerBasis(int n, int max_degree);

    int dimension() const { return n_; }
    double alpha() const { return alpha_; }
    int max_degree() const { return max_degree_; }

    // gamma_ell(z), |z| <= 1
    double eval(int ell, double z) const;

    // gamma_0(z) .. gamma_L(z) in one recurrence pass; out.size() == L+1
    void eval_all(double z, std::span<double> out) const;

    // N_ell = <G_ell, G_ell>_S for the classical (unnormalized) family
    double norm(int ell) const { return norms_[static_cast<std::size_t>(ell)]; }

    // recurrence triple (a,b,c): gamma_l = (a z + b) gamma_{l-1} + c gamma_{l-2}
    const std::array<double, 3>& recurrence(int ell) const {
        return rec_[static_cast<std::size_t>(ell)];
    }

private:
    int n_;
    double alpha_;
    int max_degree_;
    std::vector<std::array<double, 3>> rec_;
    std::vector<double> norms_;
};

// Nodes/weights for the zonal weight (1-z^2)^{alpha-1/2} on [-1,1],
// normalized so that integrate(1) == 1, i.e. the rule computes <.,.>_S for
// zonal functions.  Exact for polynomial integrands of degree <= 2*points-1.
struct QuadratureRule {
    std::vector<double> nodes;    // ascending, inside (-1,1)
    std::vector<double> weights;  // positive, sum to 1
    int n = 0;

    double integrate(const std::function<double(double)>& f) const;
};

QuadratureRule gauss_jacobi_rule(int n, int points);

// Doubles the node count from `initial_points` until two successive rules
// agree to `tol` on the integrand.  Throws if 8192 points is not enough.
double integrate_zonal(int n, const std::function<double(double)>& f,
                       double tol = 1e-11, int initial_points = 64);

} // namespace sphcube
