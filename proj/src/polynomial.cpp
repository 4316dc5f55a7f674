#include "sphcube/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace sphcube {

namespace {

void check_dim(int have, int want, const char* what) {
    if (have != want)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

} // namespace

SparsePolynomial::SparsePolynomial(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("SparsePolynomial: need n >= 1");
}

SparsePolynomial SparsePolynomial::constant(int n, double c) {
    SparsePolynomial p(n);
    p.add_term(std::vector<int>(static_cast<std::size_t>(n), 0), c);
    return p;
}

SparsePolynomial SparsePolynomial::monomial(int n, std::vector<int> exps, double c) {
    SparsePolynomial p(n);
    p.add_term(exps, c);
    return p;
}

SparsePolynomial SparsePolynomial::coordinate(int n, int i) {
    if (i < 0 || i >= n) throw std::invalid_argument("coordinate: index out of range");
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i)] = 1;
    return monomial(n, e, 1.0);
}

SparsePolynomial SparsePolynomial::radius_squared(int n) {
    SparsePolynomial p(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i)] = 2;
        p.add_term(e, 1.0);
    }
    return p;
}

void SparsePolynomial::add_term(std::span<const int> exps, double c) {
    if (static_cast<int>(exps.size()) != n_)
        throw std::invalid_argument("add_term: exponent vector has wrong length");
    for (int e : exps)
        if (e < 0) throw std::invalid_argument("add_term: negative exponent");
    if (c == 0.0) return;
    std::vector<int> key(exps.begin(), exps.end());
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
        const int d = static_cast<int>(std::accumulate(exps.begin(), exps.end(), 0));
        degree_ = std::max(degree_, d);
    } else {
        it->second += c;
        if (it->second == 0.0) {
            terms_.erase(it);
            recompute_degree();
        }
    }
}

double SparsePolynomial::coefficient(std::span<const int> exps) const {
    std::vector<int> key(exps.begin(), exps.end());
    auto it = terms_.find(key);
    return it == terms_.end() ? 0.0 : it->second;
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
    check_dim(o.n_, n_, "operator+=");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) {
    check_dim(o.n_, n_, "operator-=");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        degree_ = 0;
        return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
}

SparsePolynomial SparsePolynomial::multiplied_by(const SparsePolynomial& o) const {
    check_dim(o.n_, n_, "multiplied_by");
    SparsePolynomial out(n_);
    std::vector<int> e(static_cast<std::size_t>(n_));
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

double SparsePolynomial::evaluate(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("evaluate: point has wrong dimension");
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) t *= x[i];
        }
        acc += t;
    }
    return acc;
}

double SparsePolynomial::evaluate(const Eigen::VectorXd& x) const {
    return evaluate(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

void SparsePolynomial::prune_relative(double tol) {
    const double m = max_abs_coefficient();
    if (m == 0.0) return;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (std::abs(it->second) <= tol * m)
            it = terms_.erase(it);
        else
            ++it;
    }
    recompute_degree();
}

SparsePolynomial SparsePolynomial::homogeneous_component(int total_degree) const {
    SparsePolynomial out(n_);
    for (const auto& [e, c] : terms_) {
        if (std::accumulate(e.begin(), e.end(), 0) == total_degree) out.add_term(e, c);
    }
    return out;
}

double SparsePolynomial::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

void SparsePolynomial::recompute_degree() {
    degree_ = 0;
    for (const auto& [e, c] : terms_)
        degree_ = std::max(degree_, static_cast<int>(std::accumulate(e.begin(), e.end(), 0)));
}

SparsePolynomial laplacian(const SparsePolynomial& p) {
    const int n = p.variables();
    SparsePolynomial out(n);
    std::vector<int> e(static_cast<std::size_t>(n));
    for (const auto& [exps, c] : p.terms()) {
        for (std::size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] < 2) continue;
            std::copy(exps.begin(), exps.end(), e.begin());
            e[i] -= 2;
            out.add_term(e, c * exps[i] * (exps[i] - 1));
        }
    }
    return out;
}

std::int64_t monomial_count(int n, int degree) {
    // C(n + d, d), saturating at a large sentinel
    long double r = 1.0L;
    for (int i = 1; i <= degree; ++i) r *= static_cast<long double>(n + i) / i;
    if (r > 4e18L) return std::numeric_limits<std::int64_t>::max();
    return static_cast<std::int64_t>(r + 0.5L);
}

std::vector<std::vector<int>> homogeneous_exponents(int n, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    // lexicographic enumeration, first variable outermost
    std::function<void(int, int)> rec = [&](int var, int remaining) {
        if (var == n - 1) {
            cur[static_cast<std::size_t>(var)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[static_cast<std::size_t>(var)] = e;
            rec(var + 1, remaining - e);
        }
    };
    if (n >= 1 && m >= 0) rec(0, m);
    return out;
}

SparsePolynomial rotate_polynomial(const SparsePolynomial& p, const Rotation& R) {
    const int n = p.variables();
    check_dim(R.n, n, "rotate_polynomial");
    const int d = p.degree();
    const std::int64_t budget = monomial_count(n, d);
    double cost = static_cast<double>(budget);
    for (int i = 0; i < d; ++i) cost *= n;
    if (budget > 2'000'000 || cost > 5e9)
        throw std::invalid_argument("rotate_polynomial: expansion budget exceeded");

    // substitute x_i <- (R^T x)_i = sum_j R(j,i) x_j
    std::vector<SparsePolynomial> linear;
    linear.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        SparsePolynomial li(n);
        std::vector<int> e(static_cast<std::size_t>(n), 0);
        for (int j = 0; j < n; ++j) {
            e[static_cast<std::size_t>(j)] = 1;
            li.add_term(e, R.matrix(j, i));
            e[static_cast<std::size_t>(j)] = 0;
        }
        linear.push_back(std::move(li));
    }

    // powers of each linear form, built on demand
    std::vector<std::vector<SparsePolynomial>> powers(static_cast<std::size_t>(n));
    auto power = [&](int i, int k) -> const SparsePolynomial& {
        auto& cache = powers[static_cast<std::size_t>(i)];
        if (cache.empty()) cache.push_back(SparsePolynomial::constant(n, 1.0));
        while (static_cast<int>(cache.size()) <= k)
            cache.push_back(cache.back().multiplied_by(linear[static_cast<std::size_t>(i)]));
        return cache[static_cast<std::size_t>(k)];
    };

    SparsePolynomial out(n);
    for (const auto& [e, c] : p.terms()) {
        SparsePolynomial term = SparsePolynomial::constant(n, c);
        for (int i = 0; i < n; ++i) {
            if (e[static_cast<std::size_t>(i)] > 0)
                term = term.multiplied_by(power(i, e[static_cast<std::size_t>(i)]));
        }
        out += term;
    }
    return out;
}

double HarmonicDecomposition::total_norm_squared() const {
    double s = 0.0;
    for (double v : norms) s += v;
    return s;
}

HarmonicDecomposition harmonic_decompose(const SparsePolynomial& p) {
    const int n = p.variables();
    const int d = p.degree();
    if (monomial_count(n, d) > 2'000'000)
        throw std::invalid_argument("harmonic_decompose: monomial basis too large");

    // comps[m]: homogeneous degree-m residue still to be processed
    std::vector<SparsePolynomial> comps;
    comps.reserve(static_cast<std::size_t>(d) + 1);
    for (int m = 0; m <= d; ++m) comps.push_back(p.homogeneous_component(m));

    // For each m >= 2 solve Delta(p_m - |x|^2 q) = 0 for homogeneous q of
    // degree m-2; the map q -> Delta(|x|^2 q) is a bijection on that space.
    for (int m = d; m >= 2; --m) {
        SparsePolynomial& pm = comps[static_cast<std::size_t>(m)];
        if (pm.is_zero()) continue;

        const auto basis = homogeneous_exponents(n, m - 2);
        const auto sz = static_cast<Eigen::Index>(basis.size());
        std::map<std::vector<int>, Eigen::Index> index;
        for (Eigen::Index j = 0; j < sz; ++j) index[basis[static_cast<std::size_t>(j)]] = j;

        Eigen::MatrixXd M = Eigen::MatrixXd::Zero(sz, sz);
        const SparsePolynomial r2 = SparsePolynomial::radius_squared(n);
        for (Eigen::Index j = 0; j < sz; ++j) {
            SparsePolynomial bj = SparsePolynomial::monomial(n, basis[static_cast<std::size_t>(j)], 1.0);
            const SparsePolynomial lb = laplacian(r2.multiplied_by(bj));
            for (const auto& [e, c] : lb.terms()) M(index.at(e), j) = c;
        }

        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(sz);
        const SparsePolynomial lap_pm = laplacian(pm);
        for (const auto& [e, c] : lap_pm.terms()) rhs(index.at(e)) = c;

        Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
        const Eigen::VectorXd qc = lu.solve(rhs);
        const double resid = (M * qc - rhs).cwiseAbs().maxCoeff();
        if (resid > 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff()))
            throw std::runtime_error("harmonic_decompose: linear solve residual above tolerance");

        SparsePolynomial q(n);
        for (Eigen::Index j = 0; j < sz; ++j)
            q.add_term(basis[static_cast<std::size_t>(j)], qc(j));

        pm -= r2.multiplied_by(q);
        pm.prune_relative(1e-12);
        comps[static_cast<std::size_t>(m - 2)] += q;  // |x|^2 == 1 on the sphere
    }

    HarmonicDecomposition dec;
    dec.n = n;
    for (int l = 0; l <= d; ++l) {
        SparsePolynomial& h = comps[static_cast<std::size_t>(l)];
        if (h.is_zero()) continue;
        dec.norms.push_back(sphere_norm_squared(h));
        dec.parts.emplace_back(l, std::move(h));
    }
    return dec;
}

double sphere_moment(std::span<const int> exponents, int n) {
    int total = 0;
    for (int e : exponents) {
        if (e < 0) throw std::invalid_argument("sphere_moment: negative exponent");
        if (e % 2 != 0) return 0.0;
        total += e;
    }
    double num = 1.0;
    for (int e : exponents)
        for (int j = 1; j < e; j += 2) num *= j;  // (e-1)!!
    double den = 1.0;
    for (int j = 0; j < total / 2; ++j) den *= (n + 2 * j);
    return num / den;
}

double sphere_norm_squared(const SparsePolynomial& p) {
    const SparsePolynomial sq = p.multiplied_by(p);
    double acc = 0.0;
    for (const auto& [e, c] : sq.terms()) acc += c * sphere_moment(e, p.variables());
    return acc;
}

double CircleRestriction::eval_theta(double theta) const {
    const double c = std::cos(theta), s = std::sin(theta);
    double acc = 0.0;
    for (const auto& [cs, coeff] : cos_sin_terms) {
        double t = coeff;
        for (int k = 0; k < cs.first; ++k) t *= c;
        for (int k = 0; k < cs.second; ++k) t *= s;
        acc += t;
    }
    return acc;
}

double CircleRestriction::max_abs_fourier() const {
    double m = 0.0;
    for (const auto& a : fourier) m = std::max(m, std::abs(a));
    return m;
}

CircleRestriction restrict_to_great_circle(const SparsePolynomial& p,
                                           const Eigen::VectorXd& u,
                                           const Eigen::VectorXd& w) {
    const int n = p.variables();
    if (u.size() != n || w.size() != n)
        throw std::invalid_argument("restrict_to_great_circle: frame has wrong dimension");
    if (std::abs(u.norm() - 1.0) > 1e-10 || std::abs(w.norm() - 1.0) > 1e-10)
        throw std::invalid_argument("restrict_to_great_circle: u, w must be unit vectors");
    if (std::abs(u.dot(w)) > 1e-10)
        throw std::invalid_argument("restrict_to_great_circle: u, w must be orthogonal");

    CircleRestriction out;
    out.u = u;
    out.w = w;
    const int d = p.degree();
    out.trig_degree = d;

    // bivariate expansion: x_i -> u_i c + w_i s
    using Biv = std::map<std::pair<int, int>, double>;
    auto biv_mul = [](const Biv& a, const Biv& b) {
        Biv r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b)
                r[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
        return r;
    };

    // powers of (u_i c + w_i s), cached per variable
    std::vector<std::vector<Biv>> powers(static_cast<std::size_t>(n));
    auto power = [&](int i, int k) -> const Biv& {
        auto& cache = powers[static_cast<std::size_t>(i)];
        if (cache.empty()) cache.push_back(Biv{{{0, 0}, 1.0}});
        while (static_cast<int>(cache.size()) <= k) {
            Biv lin;
            if (u(i) != 0.0) lin[{1, 0}] = u(i);
            if (w(i) != 0.0) lin[{0, 1}] = w(i);
            cache.push_back(biv_mul(cache.back(), lin));
        }
        return cache[static_cast<std::size_t>(k)];
    };

    Biv total;
    for (const auto& [e, c] : p.terms()) {
        Biv term{{{0, 0}, c}};
        for (int i = 0; i < n; ++i)
            if (e[static_cast<std::size_t>(i)] > 0)
                term = biv_mul(term, power(i, e[static_cast<std::size_t>(i)]));
        for (const auto& [cs, coeff] : term) total[cs] += coeff;
    }
    for (auto it = total.begin(); it != total.end();) {
        if (it->second == 0.0)
            it = total.erase(it);
        else
            ++it;
    }
    out.cos_sin_terms = total;

    // Fourier form: c = (z + 1/z)/2, s = (z - 1/z)/(2i), z = e^{i theta}
    out.fourier.assign(static_cast<std::size_t>(2 * d + 1), {0.0, 0.0});
    auto binom = [](int a, int b) {
        double r = 1.0;
        for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
        return r;
    };
    const std::complex<double> half_over_i(0.0, -0.5);  // 1/(2i)
    for (const auto& [cs, coeff] : total) {
        const int i = cs.first, j = cs.second;
        std::complex<double> scale = coeff;
        for (int k = 0; k < i; ++k) scale *= 0.5;
        for (int k = 0; k < j; ++k) scale *= half_over_i;
        for (int pq = 0; pq <= i; ++pq) {
            for (int q = 0; q <= j; ++q) {
                const int m = (2 * pq - i) + (2 * q - j);
                const double sign = ((j - q) % 2 == 0) ? 1.0 : -1.0;
                out.fourier[static_cast<std::size_t>(m + d)] +=
                    scale * (binom(i, pq) * binom(j, q) * sign);
            }
        }
    }
    return out;
}

CircleRootAnalysis analyze_circle_roots(const CircleRestriction& r, double tol) {
    CircleRootAnalysis res;
    const double scale = r.max_abs_fourier();
    if (scale <= tol) {
        res.identically_zero = true;
        return res;
    }

    // z^d f(theta) is a polynomial in z of degree <= 2d; trim numerically
    // negligible leading/trailing coefficients (trailing ones are roots at
    // z = 0, which are never on the unit circle).
    const auto& a = r.fourier;
    const double trim = 1e-13 * scale;
    int lo = 0, hi = static_cast<int>(a.size()) - 1;
    while (lo <= hi && std::abs(a[static_cast<std::size_t>(lo)]) <= trim) ++lo;
    while (hi >= lo && std::abs(a[static_cast<std::size_t>(hi)]) <= trim) --hi;
    const int deg = hi - lo;

    if (deg >= 1) {
        // companion matrix of sum_{k=0..deg} a[lo+k] z^k, monic in z^deg
        Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(deg, deg);
        const std::complex<double> lead = a[static_cast<std::size_t>(hi)];
        for (int k = 0; k < deg - 1; ++k) C(k + 1, k) = 1.0;
        for (int k = 0; k < deg; ++k)
            C(k, deg - 1) = -a[static_cast<std::size_t>(lo + k)] / lead;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("analyze_circle_roots: eigensolver failed");
        for (int k = 0; k < deg; ++k)
            if (std::abs(std::abs(es.eigenvalues()(k)) - 1.0) <= tol) ++res.count;
    }

    // sign-change scan as a disagreement detector
    constexpr int kScan = 4096;
    double prev = r.eval_theta(0.0);
    for (int i = 1; i <= kScan; ++i) {
        const double th = 2.0 * M_PI * i / kScan;
        const double cur = r.eval_theta(th);
        if ((prev < 0.0 && cur >= 0.0) || (prev >= 0.0 && cur < 0.0)) ++res.grid_sign_changes;
        prev = cur;
    }
    res.consistent = res.grid_sign_changes <= res.count;
    return res;
}

int count_circle_roots(const CircleRestriction& r, double tol) {
    const CircleRootAnalysis a = analyze_circle_roots(r, tol);
    if (a.identically_zero)
        throw std::domain_error("count_circle_roots: restriction is identically zero");
    if (!a.consistent) {
        std::cerr << "count_circle_roots: grid scan found " << a.grid_sign_changes
                  << " crossings but only " << a.count << " unit-circle eigenvalues\n";
    }
    return a.count;
}

SparsePolynomial random_polynomial(int n, int degree, Xoshiro256pp& rng) {
    SparsePolynomial p(n);
    for (int m = 0; m <= degree; ++m) {
        for (const auto& e : homogeneous_exponents(n, m)) p.add_term(e, rng.normal());
    }
    return p;
}

SparsePolynomial polynomial_from_json(const nlohmann::json& j, int expected_n) {
    if (!j.is_array())
        throw std::invalid_argument("polynomial: expected a JSON array of terms");
    if (j.empty()) throw std::invalid_argument("polynomial: empty term list");
    int n = expected_n;
    SparsePolynomial p(1);
    bool first = true;
    std::size_t idx = 0;
    for (const auto& term : j) {
        if (!term.is_object() || !term.contains("exponents") || !term.contains("coeff"))
            throw std::invalid_argument("polynomial: term " + std::to_string(idx) +
                                        " must be {\"exponents\": [...], \"coeff\": number}");
        const auto& ex = term.at("exponents");
        if (!ex.is_array())
            throw std::invalid_argument("polynomial: term " + std::to_string(idx) +
                                        ": \"exponents\" must be an array");
        if (first) {
            if (n < 0) n = static_cast<int>(ex.size());
            p = SparsePolynomial(n);
            first = false;
        }
        if (static_cast<int>(ex.size()) != n)
            throw std::invalid_argument("polynomial: term " + std::to_string(idx) +
                                        ": exponent vector length " + std::to_string(ex.size()) +
                                        " != n = " + std::to_string(n));
        std::vector<int> e;
        e.reserve(ex.size());
        for (const auto& v : ex) {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                throw std::invalid_argument("polynomial: term " + std::to_string(idx) +
                                            ": exponents must be non-negative integers");
            e.push_back(v.get<int>());
        }
        if (!term.at("coeff").is_number())
            throw std::invalid_argument("polynomial: term " + std::to_string(idx) +
                                        ": \"coeff\" must be a number");
        p.add_term(e, term.at("coeff").get<double>());
        ++idx;
    }
    return p;
}

nlohmann::json polynomial_to_json(const SparsePolynomial& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        arr.push_back({{"exponents", e}, {"coeff", c}});
    }
    return arr;
}

SparsePolynomial load_polynomial_file(const std::string& path, int expected_n) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open polynomial file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("polynomial file " + path + ": " + e.what());
    }
    return polynomial_from_json(j, expected_n);
}

} // namespace sphcube
