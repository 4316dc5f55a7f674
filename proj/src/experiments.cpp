#include "sphcube/experiments.hpp"

#include "sphcube/special_functions.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sphcube {

namespace {

void check_rotation_experiment(const SparsePolynomial& p, int rotations) {
    if (p.variables() > kMaxRotationBits)
        throw std::invalid_argument("rotation experiment: n > 14 (exact transform per rotation)");
    if (rotations < 50)
        throw std::invalid_argument("rotation experiment: requires rotations >= 50");
    if (monomial_count(p.variables(), p.degree()) > 2'000'000)
        throw std::invalid_argument("rotation experiment: monomial budget exceeded");
}

Eigen::VectorXd cube_point(int n, std::uint32_t index) {
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i)
        x(i) = ((index >> i) & 1u) ? -inv_sqrt_n : inv_sqrt_n;
    return x;
}

} // namespace

RotatedSensitivities expected_sensitivities_rotated(const SparsePolynomial& p,
                                                    std::span<const double> eps_list,
                                                    int rotations, std::uint64_t seed,
                                                    bool threshold) {
    check_rotation_experiment(p, rotations);
    for (double eps : eps_list)
        if (eps < 0.0 || eps > 0.5)
            throw std::invalid_argument("expected_sensitivities_rotated: eps outside [0, 1/2]");

    const int n = p.variables();
    const CubeTabulator tab(p, n);
    const auto R = static_cast<std::size_t>(rotations);
    std::vector<std::vector<double>> ns_vals(eps_list.size(), std::vector<double>(R));
    std::vector<double> as_vals(R);

    for (std::size_t i = 0; i < R; ++i) {
        Xoshiro256pp rng = Xoshiro256pp::stream(seed, i);
        const Rotation rot = haar_rotation(n, rng);
        const FourierSpectrum spec = walsh_hadamard(tab.tabulate(rot, threshold));
        for (std::size_t e = 0; e < eps_list.size(); ++e)
            ns_vals[e][i] = noise_sensitivity_exact(spec, eps_list[e]);
        as_vals[i] = average_sensitivity_exact(spec);
    }

    RotatedSensitivities out;
    out.ns.reserve(eps_list.size());
    for (const auto& v : ns_vals) out.ns.push_back(make_estimate(v, seed));
    out.as = make_estimate(as_vals, seed);
    return out;
}

Estimate expected_ns_rotated(const SparsePolynomial& p, double eps, int rotations,
                             std::uint64_t seed, bool threshold) {
    const double eps_arr[1] = {eps};
    return expected_sensitivities_rotated(p, eps_arr, rotations, seed, threshold).ns[0];
}

Estimate expected_as_rotated(const SparsePolynomial& p, int rotations, std::uint64_t seed,
                             bool threshold) {
    return expected_sensitivities_rotated(p, {}, rotations, seed, threshold).as;
}

Estimate expected_as_edge_sampling(const SparsePolynomial& p, long long trials,
                                   std::uint64_t seed) {
    if (trials < 100)
        throw std::invalid_argument("expected_as_edge_sampling: requires trials >= 100");
    const int n = p.variables();
    if (n > kMaxRotationBits)
        throw std::invalid_argument("expected_as_edge_sampling: n > 14");
    std::vector<double> vals(static_cast<std::size_t>(trials));
    for (long long i = 0; i < trials; ++i) {
        Xoshiro256pp rng = Xoshiro256pp::stream(seed, static_cast<std::uint64_t>(i));
        const Rotation rot = haar_rotation(n, rng);
        const auto index = static_cast<std::uint32_t>(rng.next() & ((1u << n) - 1u));
        const int coord = static_cast<int>(rng.uniform01() * n) % n;
        Eigen::VectorXd x = cube_point(n, index);
        Eigen::VectorXd y = x;
        y(coord) = -y(coord);
        // evaluate the rotated copy without symbolic expansion
        const double pu = p.evaluate(Eigen::VectorXd(rot.matrix.transpose() * x));
        const double pv = p.evaluate(Eigen::VectorXd(rot.matrix.transpose() * y));
        const bool su = pu >= 0.0, sv = pv >= 0.0;
        vals[static_cast<std::size_t>(i)] = (su != sv) ? static_cast<double>(n) : 0.0;
    }
    return make_estimate(vals, seed);
}

BoundReport verify_transfer(const SparsePolynomial& p, double eps, int rotations,
                            std::uint64_t seed, TransferMode mode, long long ss_trials) {
    const int n = p.variables();
    const double t = heat_time_from_eps(eps, n);
    std::map<std::string, double> params{
        {"n", static_cast<double>(n)},       {"d", static_cast<double>(p.degree())},
        {"eps", eps},                        {"t", t},
        {"rotations", static_cast<double>(rotations)},
        {"mode", mode == TransferMode::Raw ? 0.0 : 1.0},
    };

    if (mode == TransferMode::Raw) {
        const Estimate lhs =
            expected_ns_rotated(p, eps, rotations, mix_seed(seed, 1), /*threshold=*/false);
        const double rhs = spherical_sensitivity_exact(harmonic_decompose(p), t);
        return make_upper_bound_report("transfer-ns-raw", lhs, rhs, std::move(params));
    }

    const Estimate lhs =
        expected_ns_rotated(p, eps, rotations, mix_seed(seed, 1), /*threshold=*/true);
    const Estimate ss = spherical_sensitivity_mc(
        [&p](const Eigen::VectorXd& x) { return p.evaluate(x); }, n, t, ss_trials,
        mix_seed(seed, 2));
    params["ss_mean"] = ss.mean;
    params["ss_std_error"] = ss.std_error;
    params["ss_trials"] = static_cast<double>(ss.trials);
    return make_upper_bound_report("transfer-ns-sign", lhs, ss.mean + 3.0 * ss.std_error,
                                   std::move(params));
}

BoundReport verify_transfer_as(const SparsePolynomial& p, double alpha, int rotations,
                               std::uint64_t seed, TransferMode mode, long long ss_trials) {
    if (alpha <= 0.0) throw std::invalid_argument("verify_transfer_as: requires alpha > 0");
    const int n = p.variables();
    const double t = alpha / (static_cast<double>(n) * n);
    const double factor = 2.0 * n / (1.0 - std::exp(-alpha));
    std::map<std::string, double> params{
        {"n", static_cast<double>(n)},       {"d", static_cast<double>(p.degree())},
        {"alpha", alpha},                    {"t", t},
        {"factor", factor},
        {"rotations", static_cast<double>(rotations)},
        {"mode", mode == TransferMode::Raw ? 0.0 : 1.0},
    };

    if (mode == TransferMode::Raw) {
        const Estimate lhs =
            expected_as_rotated(p, rotations, mix_seed(seed, 1), /*threshold=*/false);
        const double rhs = factor * spherical_sensitivity_exact(harmonic_decompose(p), t);
        return make_upper_bound_report("transfer-as-raw", lhs, rhs, std::move(params));
    }

    const Estimate lhs =
        expected_as_rotated(p, rotations, mix_seed(seed, 1), /*threshold=*/true);
    const Estimate ss = spherical_sensitivity_mc(
        [&p](const Eigen::VectorXd& x) { return p.evaluate(x); }, n, t, ss_trials,
        mix_seed(seed, 2));
    params["ss_mean"] = ss.mean;
    params["ss_std_error"] = ss.std_error;
    params["ss_trials"] = static_cast<double>(ss.trials);
    return make_upper_bound_report("transfer-as-sign", lhs,
                                   factor * (ss.mean + 3.0 * ss.std_error), std::move(params));
}

double appendix_energy_closed_form(int n, int ell, int k_weight) {
    if (n < 3) throw std::invalid_argument("appendix_energy_closed_form: requires n >= 3");
    if (ell < 0 || k_weight < 0 || k_weight > n)
        throw std::invalid_argument("appendix_energy_closed_form: bad ell or k weight");
    const GegenbauerBasis basis(n, ell);
    double acc = 0.0;
    for (int h = 0; h <= n; ++h) {
        acc += static_cast<double>(kravchuk(n, k_weight, h)) *
               basis.eval(ell, 1.0 - 2.0 * h / n);
    }
    const double d_ell = static_cast<double>(harmonic_dimension(n, ell));
    return acc / std::sqrt(d_ell) / std::pow(2.0, n);
}

BoundReport verify_appendix_energy(int n, int ell, std::uint32_t k_mask, int rotations,
                                   std::uint64_t seed) {
    if (n < 3 || n > 12)
        throw std::invalid_argument("verify_appendix_energy: requires 3 <= n <= 12");
    if (ell < 0 || ell > 4)
        throw std::invalid_argument("verify_appendix_energy: requires 0 <= ell <= 4");
    if (k_mask >= (1u << n))
        throw std::invalid_argument("verify_appendix_energy: k mask has bits above n");
    if (rotations < 2)
        throw std::invalid_argument("verify_appendix_energy: requires rotations >= 2");

    const int k_weight = std::popcount(k_mask);
    const double closed = appendix_energy_closed_form(n, ell, k_weight);

    const GegenbauerBasis basis(n, ell);
    const std::size_t N = std::size_t{1} << n;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double scale = 1.0 / static_cast<double>(N);

    // A rotated zonal harmonic about a uniform pole: Rf = gamma_ell(y . x)
    // with y uniform on the sphere; its norm is 1.
    std::vector<double> vals(static_cast<std::size_t>(rotations));
    for (std::size_t i = 0; i < vals.size(); ++i) {
        Xoshiro256pp rng = Xoshiro256pp::stream(seed, i);
        const Eigen::VectorXd y = sample_uniform_sphere(n, rng);
        double fhat = 0.0;
        for (std::size_t x = 0; x < N; ++x) {
            double z = 0.0;
            for (int b = 0; b < n; ++b)
                z += ((x >> b) & 1u) ? -y(b) : y(b);
            z *= inv_sqrt_n;
            const double g = basis.eval(ell, std::clamp(z, -1.0, 1.0));
            fhat += (std::popcount(k_mask & static_cast<std::uint32_t>(x)) % 2 == 0) ? g : -g;
        }
        fhat *= scale;
        vals[i] = fhat * fhat;
    }

    std::map<std::string, double> params{
        {"n", static_cast<double>(n)},
        {"ell", static_cast<double>(ell)},
        {"k_mask", static_cast<double>(k_mask)},
        {"k_weight", static_cast<double>(k_weight)},
        {"rotations", static_cast<double>(rotations)},
    };
    return make_equality_report("appendix-energy", make_estimate(vals, seed), closed,
                                std::move(params), 4.0);
}

BoundReport verify_cos_remark(int n, double eps, long long trials, std::uint64_t seed) {
    if (n < 3) throw std::invalid_argument("verify_cos_remark: requires n >= 3");
    if (eps < 0.0 || eps > 0.5)
        throw std::invalid_argument("verify_cos_remark: eps outside [0, 1/2]");
    if (trials < 2) throw std::invalid_argument("verify_cos_remark: requires trials >= 2");

    std::vector<double> vals(static_cast<std::size_t>(trials));
    for (long long i = 0; i < trials; ++i) {
        Xoshiro256pp rng = Xoshiro256pp::stream(seed, static_cast<std::uint64_t>(i));
        int flips = 0;
        for (int b = 0; b < n; ++b)
            if (rng.uniform01() < eps) ++flips;
        vals[static_cast<std::size_t>(i)] = 1.0 - 2.0 * flips / static_cast<double>(n);
    }
    std::map<std::string, double> params{{"n", static_cast<double>(n)},
                                         {"eps", eps},
                                         {"trials", static_cast<double>(trials)}};
    return make_equality_report("cos-remark", make_estimate(vals, seed), 1.0 - 2.0 * eps,
                                std::move(params), 3.0);
}

std::vector<BoundReport> gotsman_linial_sweep(const SweepConfig& config) {
    std::vector<BoundReport> out;
    std::uint64_t cell = 0;
    for (int d : config.degrees) {
        for (int n : config.dims) {
            const std::uint64_t cell_seed = mix_seed(config.seed, cell++);
            Xoshiro256pp poly_rng = Xoshiro256pp::stream(cell_seed, 0);
            const SparsePolynomial p = random_polynomial(n, d, poly_rng);

            const RotatedSensitivities sens = expected_sensitivities_rotated(
                p, config.eps_list, config.rotations, mix_seed(cell_seed, 1),
                /*threshold=*/true);

            const std::map<std::string, double> base{
                {"d", static_cast<double>(d)},
                {"n", static_cast<double>(n)},
                {"rotations", static_cast<double>(config.rotations)},
            };

            for (std::size_t e = 0; e < config.eps_list.size(); ++e) {
                const double eps = config.eps_list[e];
                const double bare = 2.0 / M_PI * d * std::sqrt(eps);
                auto params = base;
                params["eps"] = eps;
                params["bound_bare"] = bare;
                params["inflation_c"] = config.ns_inflation;
                out.push_back(make_upper_bound_report(
                    "gl-ns", sens.ns[e], bare * (1.0 + config.ns_inflation * eps),
                    std::move(params)));
            }

            {
                const double bare = 2.0 / M_PI * d * std::sqrt(static_cast<double>(n));
                auto params = base;
                params["bound_bare"] = bare;
                out.push_back(make_upper_bound_report("gl-as", sens.as,
                                                      bare * (1.0 + 1.0 / n), std::move(params)));
            }

            for (std::size_t ti = 0; ti < config.t_list.size(); ++ti) {
                const double t = config.t_list[ti];
                const Estimate ss = spherical_sensitivity_mc(
                    [&p](const Eigen::VectorXd& x) { return p.evaluate(x); }, n, t,
                    config.ss_trials, mix_seed(cell_seed, 2 + ti));
                auto params = base;
                params["t"] = t;
                params["ss_trials"] = static_cast<double>(config.ss_trials);
                out.push_back(make_upper_bound_report(
                    "gl-ss", ss, d / M_PI * std::sqrt(2.0 * n * t), std::move(params)));
            }
        }
    }
    return out;
}

} // namespace sphcube
