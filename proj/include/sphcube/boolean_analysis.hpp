#pragma once

#include "sphcube/polynomial.hpp"
#include "sphcube/rotation.hpp"

#include <cstdint>
#include <vector>

namespace sphcube {

// Values of a function on the hypercube H = {+-1/sqrt(n)}^n, indexed by the
// bit pattern of the point: bit i = 0 means coordinate i is +1/sqrt(n).
// With that convention the all-zero index is the corner (1,...,1)/sqrt(n).
struct TruthTable {
    int n = 0;
    std::vector<double> values;  // size 2^n

    TruthTable(int n_, std::vector<double> v);
    static TruthTable zeros(int n_);

    bool is_sign_table() const;  // every entry is exactly +1 or -1
};

inline constexpr int kMaxExactBits = 24;  // 2^n table memory guard

// Walsh coefficients fhat(k) = <f, chi_k>_H for every frequency mask k;
// |k| below always means the Hamming weight (popcount) of the mask.
struct FourierSpectrum {
    int n = 0;
    std::vector<double> coeffs;  // size 2^n, indexed by mask
    bool is_sign_function = false;

    double energy() const;                    // sum of squared coefficients
    double energy_above_weight(int ell) const;  // sum over |k| > ell
};

FourierSpectrum walsh_hadamard(const TruthTable& table);
TruthTable inverse_walsh_hadamard(const FourierSpectrum& spec);

// NS_eps(f) = 1/2 sum_k fhat(k)^2 (1 - (1-2 eps)^{|k|}); for sign functions
// this equals the probability that f flips under an eps-noisy input.
double noise_sensitivity_exact(const FourierSpectrum& spec, double eps);

// AS(f) = sum_k fhat(k)^2 |k|; for sign functions equals n * Pr[f(x) != f(x
// with one uniformly random bit flipped)].
double average_sensitivity_exact(const FourierSpectrum& spec);

// eps' = (1/2) log(1/(1-2 eps)): the continuous heat time on the cube whose
// semigroup matches one application of eps-flip noise.
double eps_prime(double eps);

// t = (1/n) log(1/(1-2 eps)): the spherical heat time matched to eps.
double heat_time_from_eps(double eps, int n);

// Replace x_i^2 by 1/n until every exponent is 0 or 1; agrees with the input
// at every point of H.
SparsePolynomial multilinearize(const SparsePolynomial& p, int n);

// Evaluate p at all 2^n cube points; with threshold, apply sgn with
// sgn(0) = +1.
TruthTable restrict_to_cube(const SparsePolynomial& p, int n, bool threshold = false);

// Tabulates p(R^T x) over the whole cube without symbolic rotation: the
// points are visited in Gray-code order and R^T x is updated incrementally,
// so a full table costs O(2^n (n + terms * degree)).
class CubeTabulator {
public:
    CubeTabulator(const SparsePolynomial& p, int n);

    TruthTable tabulate(bool threshold = false) const;                     // R = I
    TruthTable tabulate(const Rotation& R, bool threshold = false) const;  // p(R^T x)

    int bits() const { return n_; }

private:
    int n_;
    std::vector<double> coeffs_;          // per term
    std::vector<std::int32_t> var_idx_;   // flattened variable indices
    std::vector<std::int32_t> offsets_;   // term t uses var_idx_[offsets_[t]..offsets_[t+1])

    TruthTable tabulate_impl(const Eigen::MatrixXd* R, bool threshold) const;
};

} // namespace sphcube
