#include "sphcube/special_functions.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sphcube {

namespace {

using int128 = __int128;

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();

// C(a, b) exactly; the running product is divisible at every step.
int128 binomial128(long long a, long long b) {
    if (b < 0 || b > a) return 0;
    if (b > a - b) b = a - b;
    int128 r = 1;
    for (long long i = 1; i <= b; ++i) {
        const int128 num = r * (a - b + i);
        if (num / (a - b + i) != r) throw std::overflow_error("binomial128: overflow");
        r = num / i;
    }
    return r;
}

std::int64_t to_int64(int128 v, const char* what) {
    if (v > static_cast<int128>(kInt64Max) || v < -static_cast<int128>(kInt64Max))
        throw std::overflow_error(std::string(what) + ": result exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

} // namespace

std::int64_t harmonic_dimension(int n, int ell) {
    if (n < 3) throw std::invalid_argument("harmonic_dimension: requires n >= 3");
    if (ell < 0) throw std::invalid_argument("harmonic_dimension: requires ell >= 0");
    const int128 form1 =
        binomial128(n + ell - 1, ell) - binomial128(n + ell - 3, ell - 2);
    // (n+2l-2)/(n-2) * C(n+l-3, l); the product is always divisible by n-2
    const int128 num = static_cast<int128>(n + 2 * ell - 2) * binomial128(n + ell - 3, ell);
    if (num % (n - 2) != 0)
        throw std::logic_error("harmonic_dimension: closed forms disagree (divisibility)");
    const int128 form2 = num / (n - 2);
    if (form1 != form2)
        throw std::logic_error("harmonic_dimension: the two closed forms disagree");
    return to_int64(form1, "harmonic_dimension");
}

double log_harmonic_dimension(int n, int ell) {
    if (n < 3) throw std::invalid_argument("log_harmonic_dimension: requires n >= 3");
    if (ell < 0) throw std::invalid_argument("log_harmonic_dimension: requires ell >= 0");
    if (ell == 0) return 0.0;
    const double alpha = 0.5 * n - 1.0;
    return std::log((alpha + ell) / alpha) + std::lgamma(2.0 * alpha + ell) -
           std::lgamma(ell + 1.0) - std::lgamma(2.0 * alpha);
}

std::int64_t kravchuk(int n, int k, int h) {
    if (k < 0 || k > n || h < 0 || h > n)
        throw std::invalid_argument("kravchuk: requires 0 <= k, h <= n");
    int128 acc = 0;
    for (int j = 0; j <= k; ++j) {
        if (h - j < 0 || h - j > n - k) continue;
        const int128 term = binomial128(k, j) * binomial128(n - k, h - j);
        acc += (j % 2 == 0) ? term : -term;
    }
    return to_int64(acc, "kravchuk");
}

double sphere_surface_area(int n) {
    if (n < 2) throw std::invalid_argument("sphere_surface_area: requires n >= 2");
    const double half_n = 0.5 * n;
    return 2.0 * std::exp(half_n * std::log(M_PI) - std::lgamma(half_n));
}

double sphere_band_factor(int n) {
    if (n < 3) throw std::invalid_argument("sphere_band_factor: requires n >= 3");
    // Omega_{n-2}/Omega_{n-1} = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2))
    return std::exp(std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1))) / std::sqrt(M_PI);
}

GegenbauerBasis::GegenbauerBasis(int n, int max_degree)
    : n_(n), alpha_(0.5 * n - 1.0), max_degree_(max_degree) {
    if (n < 3) throw std::invalid_argument("GegenbauerBasis: requires n >= 3");
    if (max_degree < 0) throw std::invalid_argument("GegenbauerBasis: max_degree < 0");
    const auto L = static_cast<std::size_t>(max_degree);
    norms_.resize(L + 1);
    rec_.resize(L + 1);
    norms_[0] = 1.0;
    rec_[0] = {0.0, 0.0, 0.0};
    // N_l / N_{l-1} = ((alpha+l-1)/(alpha+l)) ((2 alpha+l-1)/l), all small factors
    for (std::size_t l = 1; l <= L; ++l) {
        const double dl = static_cast<double>(l);
        norms_[l] = norms_[l - 1] * ((alpha_ + dl - 1.0) / (alpha_ + dl)) *
                    ((2.0 * alpha_ + dl - 1.0) / dl);
        const double A = 2.0 * (dl + alpha_ - 1.0) / dl * std::sqrt(norms_[l - 1] / norms_[l]);
        const double B = (l >= 2)
                             ? (dl + 2.0 * alpha_ - 2.0) / dl * std::sqrt(norms_[l - 2] / norms_[l])
                             : 0.0;
        rec_[l] = {A, 0.0, -B};
    }
}

double GegenbauerBasis::eval(int ell, double z) const {
    if (ell < 0 || ell > max_degree_)
        throw std::invalid_argument("GegenbauerBasis::eval: degree out of range");
    if (std::abs(z) > 1.0 + 1e-12)
        throw std::invalid_argument("GegenbauerBasis::eval: |z| > 1");
    z = std::clamp(z, -1.0, 1.0);
    double gm2 = 1.0;
    if (ell == 0) return gm2;
    double gm1 = std::sqrt(static_cast<double>(n_)) * z;
    for (int l = 2; l <= ell; ++l) {
        const auto& r = rec_[static_cast<std::size_t>(l)];
        const double g = (r[0] * z + r[1]) * gm1 + r[2] * gm2;
        gm2 = gm1;
        gm1 = g;
    }
    return gm1;
}

void GegenbauerBasis::eval_all(double z, std::span<double> out) const {
    const auto L = out.size() - 1;
    if (out.empty() || static_cast<int>(L) > max_degree_)
        throw std::invalid_argument("GegenbauerBasis::eval_all: bad output span");
    if (std::abs(z) > 1.0 + 1e-12)
        throw std::invalid_argument("GegenbauerBasis::eval_all: |z| > 1");
    z = std::clamp(z, -1.0, 1.0);
    out[0] = 1.0;
    if (L >= 1) out[1] = std::sqrt(static_cast<double>(n_)) * z;
    for (std::size_t l = 2; l <= L; ++l) {
        const auto& r = rec_[l];
        out[l] = (r[0] * z + r[1]) * out[l - 1] + r[2] * out[l - 2];
    }
}

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
}

QuadratureRule gauss_jacobi_rule(int n, int points) {
    if (n < 3) throw std::invalid_argument("gauss_jacobi_rule: requires n >= 3");
    if (points < 1) throw std::invalid_argument("gauss_jacobi_rule: requires points >= 1");

    // Golub-Welsch on the symmetric Jacobi matrix of the weight
    // (1-z^2)^{alpha-1/2} = Jacobi(A, A) with A = (n-3)/2:
    //   beta_k = k (k + n - 3) / ((2k + n - 3)^2 - 1)
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(points, points);
    for (int k = 1; k < points; ++k) {
        const double dk = k;
        const double beta = dk * (dk + n - 3.0) / ((2.0 * dk + n - 3.0) * (2.0 * dk + n - 3.0) - 1.0);
        const double b = std::sqrt(beta);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("gauss_jacobi_rule: eigensolver failed to converge (" +
                                 std::to_string(points) + " nodes)");

    QuadratureRule rule;
    rule.n = n;
    rule.nodes.resize(static_cast<std::size_t>(points));
    rule.weights.resize(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        rule.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        // eigenvector matrix is orthogonal, so these weights sum to 1 exactly:
        // the band factor Omega_{n-2}/Omega_{n-1} times total weight mu_0 is 1.
        const double q0 = es.eigenvectors()(0, i);
        rule.weights[static_cast<std::size_t>(i)] = q0 * q0;
    }
    return rule;
}

double integrate_zonal(int n, const std::function<double(double)>& f,
                       double tol, int initial_points) {
    int m = initial_points;
    double prev = gauss_jacobi_rule(n, m).integrate(f);
    int doublings = 0;
    while (m < 8192) {
        m *= 2;
        ++doublings;
        const double cur = gauss_jacobi_rule(n, m).integrate(f);
        if (std::abs(cur - prev) <= tol) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_zonal: no convergence to tol after " +
                             std::to_string(doublings) + " doublings (" +
                             std::to_string(m) + " nodes)");
}

} // namespace sphcube
