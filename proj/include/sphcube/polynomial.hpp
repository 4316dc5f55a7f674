#pragma once

#include "sphcube/rng.hpp"
#include "sphcube/rotation.hpp"

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sphcube {

// Sparse multivariate real polynomial: exponent vector -> coefficient.
// Canonical form: no stored zero coefficients; degree is cached.
class SparsePolynomial {
public:
    using Terms = std::map<std::vector<int>, double>;

    explicit SparsePolynomial(int n);

    static SparsePolynomial constant(int n, double c);
    static SparsePolynomial monomial(int n, std::vector<int> exps, double c);
    static SparsePolynomial coordinate(int n, int i);  // x_{i+1}
    static SparsePolynomial radius_squared(int n);     // |x|^2

    int variables() const { return n_; }
    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    void add_term(std::span<const int> exps, double c);
    double coefficient(std::span<const int> exps) const;

    SparsePolynomial& operator+=(const SparsePolynomial& o);
    SparsePolynomial& operator-=(const SparsePolynomial& o);
    SparsePolynomial& operator*=(double s);
    friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) {
        return a += b;
    }
    friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) {
        return a -= b;
    }
    friend SparsePolynomial operator*(SparsePolynomial a, double s) { return a *= s; }
    SparsePolynomial multiplied_by(const SparsePolynomial& o) const;

    double evaluate(std::span<const double> x) const;
    double evaluate(const Eigen::VectorXd& x) const;

    // drop terms with |c| <= tol * max|c|
    void prune_relative(double tol);

    // homogeneous component of the given total degree
    SparsePolynomial homogeneous_component(int total_degree) const;

    double max_abs_coefficient() const;

private:
    int n_;
    Terms terms_;
    int degree_ = 0;

    void recompute_degree();
};

SparsePolynomial laplacian(const SparsePolynomial& p);

// Rf(x) = f(R^-1 x) = f(R^T x), by exact symbolic substitution.  Degree is
// preserved.  Cost grows as C(n+d,d) n^d; oversized requests are rejected.
SparsePolynomial rotate_polynomial(const SparsePolynomial& p, const Rotation& R);

// f = sum_l f_l with each f_l a harmonic homogeneous polynomial of degree l;
// the sum agrees with f on the unit sphere.  norms[i] = ||f_l||_S^2.
struct HarmonicDecomposition {
    int n = 0;
    std::vector<std::pair<int, SparsePolynomial>> parts;  // (l, f_l), l ascending
    std::vector<double> norms;

    double total_norm_squared() const;
};

HarmonicDecomposition harmonic_decompose(const SparsePolynomial& p);

// E_{x in S_{n-1}}[ prod x_i^{e_i} ]: zero for any odd exponent, otherwise
// prod (e_i - 1)!! / prod_{j < E/2} (n + 2j).
double sphere_moment(std::span<const int> exponents, int n);

// E_{x in S_{n-1}}[ p(x)^2 ], exact via the moment formula.
double sphere_norm_squared(const SparsePolynomial& p);

// p restricted to the great circle theta -> u cos(theta) + w sin(theta).
struct CircleRestriction {
    Eigen::VectorXd u, w;
    int trig_degree = 0;   // d: the restriction is a trig polynomial of degree <= d
    // bivariate form in (c, s) = (cos theta, sin theta)
    std::map<std::pair<int, int>, double> cos_sin_terms;
    // Fourier form: coefficient of e^{i m theta} at index m + trig_degree
    std::vector<std::complex<double>> fourier;

    double eval_theta(double theta) const;
    double max_abs_fourier() const;
};

CircleRestriction restrict_to_great_circle(const SparsePolynomial& p,
                                           const Eigen::VectorXd& u,
                                           const Eigen::VectorXd& w);

struct CircleRootAnalysis {
    int count = 0;             // companion-matrix eigenvalues on the unit circle
    int grid_sign_changes = 0; // sign changes on a 4096-point scan
    bool consistent = true;    // scan never exceeds the eigenvalue count
    bool identically_zero = false;
};

CircleRootAnalysis analyze_circle_roots(const CircleRestriction& r, double tol = 1e-8);

// Number of zeros of the restriction on [0, 2pi), counted with multiplicity.
// Throws if the restriction is identically zero (max |fourier| <= tol); a
// scan/eigenvalue disagreement emits a diagnostic on stderr.
int count_circle_roots(const CircleRestriction& r, double tol = 1e-8);

// iid N(0,1) coefficient on every monomial of total degree <= degree
SparsePolynomial random_polynomial(int n, int degree, Xoshiro256pp& rng);

// JSON term format: [{"exponents": [e1..en], "coeff": c}, ...]
SparsePolynomial polynomial_from_json(const nlohmann::json& j, int expected_n = -1);
nlohmann::json polynomial_to_json(const SparsePolynomial& p);
SparsePolynomial load_polynomial_file(const std::string& path, int expected_n = -1);

// exponent vectors of total degree exactly m, in deterministic (lex) order
std::vector<std::vector<int>> homogeneous_exponents(int n, int m);

std::int64_t monomial_count(int n, int degree);  // C(n + d, d)

} // namespace sphcube
