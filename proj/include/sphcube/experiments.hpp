#pragma once

#include "sphcube/boolean_analysis.hpp"
#include "sphcube/estimate.hpp"
#include "sphcube/polynomial.hpp"
#include "sphcube/report.hpp"
#include "sphcube/sphere_processes.hpp"

#include <cstdint>
#include <vector>

namespace sphcube {

inline constexpr int kMaxRotationBits = 14;  // exact WHT per rotation above this is too large

// Whether rotated-restriction experiments threshold to sgn(p) or keep the
// raw polynomial values (the sensitivity formulas apply to both).
enum class TransferMode { Raw, Sign };

// E_R NS_eps(Rp|_H) and E_R AS(Rp|_H) from one shared pass of rotations:
// per rotation the cube table of p(R^T x) is transformed once and every
// requested eps reads the same spectrum.
struct RotatedSensitivities {
    std::vector<Estimate> ns;  // aligned with the eps list
    Estimate as;
};

RotatedSensitivities expected_sensitivities_rotated(const SparsePolynomial& p,
                                                    std::span<const double> eps_list,
                                                    int rotations, std::uint64_t seed,
                                                    bool threshold = true);

Estimate expected_ns_rotated(const SparsePolynomial& p, double eps, int rotations,
                             std::uint64_t seed, bool threshold = true);

Estimate expected_as_rotated(const SparsePolynomial& p, int rotations, std::uint64_t seed,
                             bool threshold = true);

// Direct geometric estimator of the same expectation: n times the
// probability of a sign change across a uniformly random cube edge of a
// rotated copy.  No transform; one random edge per trial.
Estimate expected_as_edge_sampling(const SparsePolynomial& p, long long trials,
                                   std::uint64_t seed);

// E_R NS_eps(Rf|_H) <= SS_t(f) at t = log(1/(1-2 eps))/n.
// Raw mode compares against the exact spectral SS of p; sign mode against a
// Monte Carlo SS of sgn(p) (bound = ss_mean + 3 ss_se).
//
// Caveat: with t = log(1/(1-2 eps))/n the inequality is genuinely false for
// functions carrying degree-1 spherical energy -- the l = 1 eigenvalue is
// n-1 < n, so e^{-t(n-1)} > 1-2 eps.  See docs/transfer_note.md.  The check
// is reported honestly; expect raw-mode failures for such inputs.
BoundReport verify_transfer(const SparsePolynomial& p, double eps, int rotations,
                            std::uint64_t seed, TransferMode mode = TransferMode::Sign,
                            long long ss_trials = 100000);

// E_R AS(Rf|_H) <= (2n/(1-e^{-alpha})) SS_{alpha/n^2}(f), any alpha > 0.
BoundReport verify_transfer_as(const SparsePolynomial& p, double alpha, int rotations,
                               std::uint64_t seed, TransferMode mode = TransferMode::Sign,
                               long long ss_trials = 100000);

// Closed form for the expected cube energy of a rotated degree-ell zonal
// harmonic at any mask of weight k_weight:
//   (1/sqrt(d_ell)) 2^{-n} sum_h kappa_k(h) gamma_ell(1 - 2h/n).
double appendix_energy_closed_form(int n, int ell, int k_weight);

// Monte Carlo over rotations of |(Rf)^hat(k)|^2 for f = gamma_ell about a
// random pole (unit norm), against the closed form; two-sided at 4 SE.
BoundReport verify_appendix_energy(int n, int ell, std::uint32_t k_mask, int rotations,
                                   std::uint64_t seed);

// E over random bit-flip pairs of cos(angle(x, y)) equals 1 - 2 eps.
BoundReport verify_cos_remark(int n, double eps, long long trials, std::uint64_t seed);

struct SweepConfig {
    std::vector<int> degrees;
    std::vector<int> dims;
    std::vector<double> eps_list;
    std::vector<double> t_list;
    int rotations = 200;
    long long ss_trials = 100000;
    double ns_inflation = 1.0;  // display/pass factor (1 + C eps) on the NS bound
    std::uint64_t seed = 1;
};

// For one random degree-d polynomial per (d, n) cell:
//   gl-ns rows: E_R NS_eps(sgn(Rp))  vs (2/pi) d sqrt(eps) (1 + C eps)
//   gl-as rows: E_R AS(sgn(Rp))      vs (2/pi) d sqrt(n) (1 + 1/n)
//   gl-ss rows: MC SS_t(sgn p)       vs (d/pi) sqrt(2 n t)
std::vector<BoundReport> gotsman_linial_sweep(const SweepConfig& config);

} // namespace sphcube
