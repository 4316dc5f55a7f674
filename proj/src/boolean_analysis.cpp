#include "sphcube/boolean_analysis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sphcube {

TruthTable::TruthTable(int n_, std::vector<double> v) : n(n_), values(std::move(v)) {
    if (n < 1 || n > kMaxExactBits)
        throw std::invalid_argument("TruthTable: n out of range [1, 24]");
    if (values.size() != (std::size_t{1} << n))
        throw std::invalid_argument("TruthTable: values must have length 2^n");
}

TruthTable TruthTable::zeros(int n_) {
    return TruthTable(n_, std::vector<double>(std::size_t{1} << n_, 0.0));
}

bool TruthTable::is_sign_table() const {
    for (double v : values)
        if (v != 1.0 && v != -1.0) return false;
    return true;
}

double FourierSpectrum::energy() const {
    double s = 0.0;
    for (double c : coeffs) s += c * c;
    return s;
}

double FourierSpectrum::energy_above_weight(int ell) const {
    double s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (std::popcount(k) > ell) s += coeffs[k] * coeffs[k];
    return s;
}

namespace {

// in-place butterfly; H^2 = 2^n I
void hadamard_inplace(std::vector<double>& a) {
    const std::size_t N = a.size();
    for (std::size_t h = 1; h < N; h <<= 1) {
        for (std::size_t i = 0; i < N; i += h << 1) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double x = a[j], y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
    }
}

} // namespace

FourierSpectrum walsh_hadamard(const TruthTable& table) {
    FourierSpectrum spec;
    spec.n = table.n;
    spec.is_sign_function = table.is_sign_table();
    spec.coeffs = table.values;
    hadamard_inplace(spec.coeffs);
    const double scale = 1.0 / static_cast<double>(std::size_t{1} << table.n);
    for (double& c : spec.coeffs) c *= scale;
    return spec;
}

TruthTable inverse_walsh_hadamard(const FourierSpectrum& spec) {
    std::vector<double> vals = spec.coeffs;
    hadamard_inplace(vals);
    return TruthTable(spec.n, std::move(vals));
}

double noise_sensitivity_exact(const FourierSpectrum& spec, double eps) {
    if (eps < 0.0 || eps > 0.5)
        throw std::invalid_argument("noise_sensitivity_exact: eps must lie in [0, 1/2]");
    const double rho = 1.0 - 2.0 * eps;
    // (1-2eps)^w tabulated per weight
    std::vector<double> pw(static_cast<std::size_t>(spec.n) + 1);
    pw[0] = 1.0;
    for (int w = 1; w <= spec.n; ++w) pw[static_cast<std::size_t>(w)] = pw[static_cast<std::size_t>(w - 1)] * rho;
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.coeffs.size(); ++k) {
        const double c2 = spec.coeffs[k] * spec.coeffs[k];
        acc += c2 * (1.0 - pw[static_cast<std::size_t>(std::popcount(k))]);
    }
    return 0.5 * acc;
}

double average_sensitivity_exact(const FourierSpectrum& spec) {
    double acc = 0.0;
    for (std::size_t k = 0; k < spec.coeffs.size(); ++k)
        acc += spec.coeffs[k] * spec.coeffs[k] * static_cast<double>(std::popcount(k));
    return acc;
}

double eps_prime(double eps) {
    if (eps < 0.0 || eps >= 0.5)
        throw std::invalid_argument("eps_prime: eps must lie in [0, 1/2)");
    return 0.5 * std::log(1.0 / (1.0 - 2.0 * eps));
}

double heat_time_from_eps(double eps, int n) {
    if (eps < 0.0 || eps >= 0.5)
        throw std::invalid_argument("heat_time_from_eps: eps must lie in [0, 1/2)");
    if (n < 1) throw std::invalid_argument("heat_time_from_eps: n must be positive");
    return std::log(1.0 / (1.0 - 2.0 * eps)) / static_cast<double>(n);
}

SparsePolynomial multilinearize(const SparsePolynomial& p, int n) {
    if (p.variables() != n) throw std::invalid_argument("multilinearize: dimension mismatch");
    SparsePolynomial out(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<int> e(static_cast<std::size_t>(n));
    for (const auto& [exps, c] : p.terms()) {
        double coeff = c;
        for (std::size_t i = 0; i < exps.size(); ++i) {
            e[i] = exps[i] % 2;
            for (int k = 0; k < exps[i] / 2; ++k) coeff *= inv_n;
        }
        out.add_term(e, coeff);
    }
    return out;
}

TruthTable restrict_to_cube(const SparsePolynomial& p, int n, bool threshold) {
    return CubeTabulator(p, n).tabulate(threshold);
}

CubeTabulator::CubeTabulator(const SparsePolynomial& p, int n) : n_(n) {
    if (n < 1 || n > kMaxExactBits)
        throw std::invalid_argument("CubeTabulator: n out of range [1, 24]");
    if (p.variables() != n)
        throw std::invalid_argument("CubeTabulator: polynomial has wrong variable count");
    offsets_.push_back(0);
    for (const auto& [e, c] : p.terms()) {
        coeffs_.push_back(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k) var_idx_.push_back(static_cast<std::int32_t>(i));
        offsets_.push_back(static_cast<std::int32_t>(var_idx_.size()));
    }
}

TruthTable CubeTabulator::tabulate(bool threshold) const {
    return tabulate_impl(nullptr, threshold);
}

TruthTable CubeTabulator::tabulate(const Rotation& R, bool threshold) const {
    if (R.n != n_) throw std::invalid_argument("CubeTabulator: rotation dimension mismatch");
    return tabulate_impl(&R.matrix, threshold);
}

TruthTable CubeTabulator::tabulate_impl(const Eigen::MatrixXd* R, bool threshold) const {
    const std::size_t N = std::size_t{1} << n_;
    std::vector<double> out(N);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_));

    // u = R^T x for the current point; starts at x = (1..1)/sqrt(n) (index 0)
    std::vector<double> u(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) {
        if (R) {
            double s = 0.0;
            for (int i = 0; i < n_; ++i) s += (*R)(i, j);
            u[static_cast<std::size_t>(j)] = s * inv_sqrt_n;
        } else {
            u[static_cast<std::size_t>(j)] = inv_sqrt_n;
        }
    }

    const std::size_t terms = coeffs_.size();
    std::size_t gray_prev = 0;
    for (std::size_t i = 0; i < N; ++i) {
        const std::size_t gray = i ^ (i >> 1);
        if (i > 0) {
            const std::size_t changed = gray ^ gray_prev;
            const int b = std::countr_zero(changed);
            // bit 0 -> +1/sqrt(n); flipping to 1 subtracts 2/sqrt(n)
            const double delta =
                ((gray >> b) & 1u) ? -2.0 * inv_sqrt_n : 2.0 * inv_sqrt_n;
            if (R) {
                for (int j = 0; j < n_; ++j) u[static_cast<std::size_t>(j)] += delta * (*R)(b, j);
            } else {
                u[static_cast<std::size_t>(b)] += delta;
            }
        }
        gray_prev = gray;

        double acc = 0.0;
        for (std::size_t t = 0; t < terms; ++t) {
            double prod = coeffs_[t];
            for (std::int32_t k = offsets_[t]; k < offsets_[t + 1]; ++k)
                prod *= u[static_cast<std::size_t>(var_idx_[static_cast<std::size_t>(k)])];
            acc += prod;
        }
        out[gray] = threshold ? (acc >= 0.0 ? 1.0 : -1.0) : acc;
    }
    return TruthTable(n_, std::move(out));
}

} // namespace sphcube
