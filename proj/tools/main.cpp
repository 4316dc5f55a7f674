// Command-line front end: run named experiments and print JSON or CSV
// reports with the (seed, version, parameters) header embedded, so any run
// replays bit-identically from its own output.

#include "sphcube/boolean_analysis.hpp"
#include "sphcube/experiments.hpp"
#include "sphcube/polynomial.hpp"
#include "sphcube/report.hpp"
#include "sphcube/sphere_processes.hpp"
#include "sphcube/version.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace sphcube;

std::vector<double> parse_double_list(const std::string& s, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw std::invalid_argument(std::string(what) + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
    std::vector<int> out;
    for (double v : parse_double_list(s, what)) {
        const int i = static_cast<int>(v);
        if (static_cast<double>(i) != v)
            throw std::invalid_argument(std::string(what) + ": expected integers");
        out.push_back(i);
    }
    return out;
}

std::uint32_t parse_bitmask(const std::string& s, int n) {
    if (static_cast<int>(s.size()) != n)
        throw std::invalid_argument("--k: bit string must have exactly n characters");
    std::uint32_t mask = 0;
    for (int i = 0; i < n; ++i) {
        if (s[static_cast<std::size_t>(i)] == '1')
            mask |= (1u << i);  // leftmost character is coordinate 1
        else if (s[static_cast<std::size_t>(i)] != '0')
            throw std::invalid_argument("--k: bit string may contain only 0 and 1");
    }
    return mask;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SPHCUBE_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("SPHCUBE_SEED is not an unsigned integer");
        }
    }
    return 1;
}

struct Output {
    std::string command;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> params;
    std::vector<BoundReport> reports;
    json extra = json::object();  // results / polynomial / samples

    void print(bool csv) const {
        if (csv) {
            std::ostringstream head;
            head << "# command=" << command << " version=" << kVersion << " seed=" << seed;
            for (const auto& [k, v] : params) head << ' ' << k << '=' << v;
            std::cout << head.str() << '\n';
            for (const auto& [key, value] : extra.items()) {
                if (!value.is_array()) continue;
                // results tables: one row per entry, sorted keys as columns
                if (!value.empty() && value.front().is_object()) {
                    bool header = false;
                    for (const auto& row : value) {
                        if (!header) {
                            bool first = true;
                            for (const auto& [ck, cv] : row.items()) {
                                (void)cv;
                                std::cout << (first ? "" : ",") << ck;
                                first = false;
                            }
                            std::cout << '\n';
                            header = true;
                        }
                        bool first = true;
                        for (const auto& [ck, cv] : row.items()) {
                            std::cout << (first ? "" : ",")
                                      << (cv.is_number() ? format_double(cv.get<double>())
                                                         : cv.dump());
                            first = false;
                        }
                        std::cout << '\n';
                    }
                } else {
                    std::cout << key << '\n';
                    for (const auto& v : value) std::cout << format_double(v.get<double>()) << '\n';
                }
            }
            if (!reports.empty()) std::cout << reports_to_csv(reports);
        } else {
            json j;
            j["command"] = command;
            j["version"] = kVersion;
            j["seed"] = seed;
            j["params"] = params;
            for (const auto& [k, v] : extra.items()) j[k] = v;
            if (!reports.empty()) {
                j["reports"] = json::array();
                for (const auto& r : reports) j["reports"].push_back(report_to_json(r));
            }
            std::cout << j.dump(2) << '\n';
        }
    }

    bool all_pass() const {
        for (const auto& r : reports)
            if (!r.pass) return false;
        return true;
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic analysis on the hypercube and the sphere: exact Boolean "
                 "sensitivities, heat-kernel sampling, and rotated-threshold experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "json";
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    std::uint64_t seed = 0;
    bool seed_given = false;
    app.add_option("--seed", seed, "random seed (default: SPHCUBE_SEED or 1)")
        ->each([&seed_given](const std::string&) { seed_given = true; });

    std::string poly_file;
    std::string eps_str, t_str = "0.001,0.01", alpha_str, d_str, n_str, heat_t_str;
    std::string mode_str = "both", k_str, ss_mode = "exact", heat_mode = "series";
    int n_opt = -1, ell = 0, rotations = 200;
    long long trials = 100000, ss_trials = 100000, samples = 100000;
    int roots_trials = 1000;
    double inflation = 1.0;
    bool raw = false, emit_samples = false;
    int dt_divisor = 1000;

    auto* ns_cmd = app.add_subcommand("ns-exact", "exact noise sensitivity of a polynomial's "
                                                  "cube restriction");
    ns_cmd->add_option("--poly", poly_file, "polynomial JSON file")->required();
    ns_cmd->add_option("--eps", eps_str, "noise rate(s), comma separated")->required();
    ns_cmd->add_option("--n", n_opt, "variable count (default: from the file)");
    ns_cmd->add_flag("--raw", raw, "use raw values instead of sgn(p)");

    auto* as_cmd = app.add_subcommand("as-exact", "exact average sensitivity of a polynomial's "
                                                  "cube restriction");
    as_cmd->add_option("--poly", poly_file, "polynomial JSON file")->required();
    as_cmd->add_option("--n", n_opt, "variable count (default: from the file)");
    as_cmd->add_flag("--raw", raw, "use raw values instead of sgn(p)");

    auto* ss_cmd = app.add_subcommand("ss", "spherical sensitivity of a polynomial");
    ss_cmd->add_option("--poly", poly_file, "polynomial JSON file")->required();
    ss_cmd->add_option("--t", t_str, "heat time(s), comma separated")->required();
    ss_cmd->add_option("--mode", ss_mode, "exact (spectral, raw p) or mc (sgn p)")
        ->check(CLI::IsMember({"exact", "mc"}));
    ss_cmd->add_option("--trials", trials, "MC trials (mc mode)");

    auto* rot_cmd = app.add_subcommand("rotate", "apply a Haar-random rotation symbolically");
    rot_cmd->add_option("--poly", poly_file, "polynomial JSON file")->required();
    rot_cmd->add_option("--n", n_opt, "variable count (default: from the file)");

    auto* vt_cmd = app.add_subcommand("verify-transfer",
                                      "expected rotated NS against spherical sensitivity");
    vt_cmd->add_option("--poly", poly_file, "polynomial JSON file")->required();
    vt_cmd->add_option("--eps", eps_str, "noise rate(s), comma separated")->required();
    vt_cmd->add_option("--rotations", rotations, "rotations per estimate");
    vt_cmd->add_option("--mode", mode_str, "raw, sign, or both")
        ->check(CLI::IsMember({"raw", "sign", "both"}));
    vt_cmd->add_option("--ss-trials", ss_trials, "MC trials for the sign-mode bound");

    auto* vta_cmd = app.add_subcommand("verify-transfer-as",
                                       "expected rotated AS against scaled spherical sensitivity");
    vta_cmd->add_option("--poly", poly_file, "polynomial JSON file")->required();
    vta_cmd->add_option("--alpha", alpha_str, "alpha value(s), comma separated")->required();
    vta_cmd->add_option("--rotations", rotations, "rotations per estimate");
    vta_cmd->add_option("--mode", mode_str, "raw, sign, or both")
        ->check(CLI::IsMember({"raw", "sign", "both"}));
    vta_cmd->add_option("--ss-trials", ss_trials, "MC trials for the sign-mode bound");

    auto* va_cmd = app.add_subcommand("verify-appendix",
                                      "expected rotated-harmonic energy at one mask against "
                                      "the Kravchuk-Gegenbauer closed form");
    va_cmd->add_option("--n", n_opt, "dimension (3..12)")->required();
    va_cmd->add_option("--ell", ell, "harmonic degree (0..4)")->required();
    va_cmd->add_option("--k", k_str, "frequency mask as an n-character bit string")->required();
    va_cmd->add_option("--rotations", rotations, "MC rotations");

    auto* gl_cmd = app.add_subcommand("gl-sweep", "rotated-threshold sensitivity sweep against "
                                                  "the degree-d bounds");
    gl_cmd->add_option("--d", d_str, "degree list")->required();
    gl_cmd->add_option("--n", n_str, "dimension list")->required();
    gl_cmd->add_option("--eps", eps_str, "noise rate list")->required();
    gl_cmd->add_option("--t", t_str, "heat time list for the SS rows");
    gl_cmd->add_option("--rotations", rotations, "rotations per cell");
    gl_cmd->add_option("--ss-trials", ss_trials, "MC trials per SS row");
    gl_cmd->add_option("--inflation", inflation, "C in the (1 + C eps) NS bound factor");

    auto* hs_cmd = app.add_subcommand("heat-sample", "sample the heat-kernel angle and check "
                                                     "its moment bounds");
    hs_cmd->add_option("--n", n_opt, "dimension")->required();
    hs_cmd->add_option("--t", heat_t_str, "heat time(s), comma separated")->required();
    hs_cmd->add_option("--samples", samples, "sample count");
    hs_cmd->add_option("--mode", heat_mode, "series or sde")
        ->check(CLI::IsMember({"series", "sde"}));
    hs_cmd->add_option("--dt-divisor", dt_divisor, "SDE step count (dt = t/divisor)");
    hs_cmd->add_flag("--emit-samples", emit_samples, "also print the raw samples");

    auto* roots_cmd = app.add_subcommand("roots", "great-circle root counts of a polynomial "
                                                  "against the 2d bound");
    roots_cmd->add_option("--poly", poly_file, "polynomial JSON file")->required();
    roots_cmd->add_option("--trials", roots_trials, "random great circles");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!seed_given) seed = default_seed();
        Output out;
        out.seed = seed;
        const bool csv = format == "csv";

        auto load_poly = [&]() { return load_polynomial_file(poly_file, n_opt); };
        auto sgn_flag = [&]() { return !raw; };

        if (*ns_cmd) {
            out.command = "ns-exact";
            const SparsePolynomial p = load_poly();
            const auto eps = parse_double_list(eps_str, "--eps");
            const FourierSpectrum spec =
                walsh_hadamard(restrict_to_cube(p, p.variables(), sgn_flag()));
            out.params = {{"poly", poly_file},
                          {"n", std::to_string(p.variables())},
                          {"raw", raw ? "1" : "0"}};
            json results = json::array();
            for (double e : eps)
                results.push_back({{"eps", e}, {"value", noise_sensitivity_exact(spec, e)}});
            out.extra["results"] = results;
        } else if (*as_cmd) {
            out.command = "as-exact";
            const SparsePolynomial p = load_poly();
            const FourierSpectrum spec =
                walsh_hadamard(restrict_to_cube(p, p.variables(), sgn_flag()));
            out.params = {{"poly", poly_file},
                          {"n", std::to_string(p.variables())},
                          {"raw", raw ? "1" : "0"}};
            out.extra["results"] =
                json::array({{{"value", average_sensitivity_exact(spec)}}});
        } else if (*ss_cmd) {
            out.command = "ss";
            const SparsePolynomial p = load_poly();
            const auto ts = parse_double_list(t_str, "--t");
            out.params = {{"poly", poly_file},
                          {"n", std::to_string(p.variables())},
                          {"mode", ss_mode},
                          {"trials", std::to_string(trials)}};
            json results = json::array();
            if (ss_mode == "exact") {
                const HarmonicDecomposition dec = harmonic_decompose(p);
                for (double t : ts)
                    results.push_back({{"t", t}, {"value", spherical_sensitivity_exact(dec, t)}});
            } else {
                for (std::size_t i = 0; i < ts.size(); ++i) {
                    const Estimate est = spherical_sensitivity_mc(
                        [&p](const Eigen::VectorXd& x) { return p.evaluate(x); },
                        p.variables(), ts[i], trials, mix_seed(seed, i));
                    results.push_back({{"t", ts[i]},
                                       {"mean", est.mean},
                                       {"std_error", est.std_error},
                                       {"trials", est.trials}});
                }
            }
            out.extra["results"] = results;
        } else if (*rot_cmd) {
            out.command = "rotate";
            const SparsePolynomial p = load_poly();
            Xoshiro256pp rng = Xoshiro256pp::stream(seed, 0);
            const Rotation R = haar_rotation(p.variables(), rng);
            out.params = {{"poly", poly_file}, {"n", std::to_string(p.variables())}};
            out.extra["polynomial"] = polynomial_to_json(rotate_polynomial(p, R));
        } else if (*vt_cmd) {
            out.command = "verify-transfer";
            const SparsePolynomial p = load_poly();
            const auto eps = parse_double_list(eps_str, "--eps");
            out.params = {{"poly", poly_file},
                          {"n", std::to_string(p.variables())},
                          {"mode", mode_str},
                          {"rotations", std::to_string(rotations)},
                          {"ss_trials", std::to_string(ss_trials)}};
            std::size_t idx = 0;
            for (double e : eps) {
                if (mode_str != "sign")
                    out.reports.push_back(verify_transfer(p, e, rotations, mix_seed(seed, idx),
                                                          TransferMode::Raw, ss_trials));
                ++idx;
                if (mode_str != "raw")
                    out.reports.push_back(verify_transfer(p, e, rotations, mix_seed(seed, idx),
                                                          TransferMode::Sign, ss_trials));
                ++idx;
            }
        } else if (*vta_cmd) {
            out.command = "verify-transfer-as";
            const SparsePolynomial p = load_poly();
            const auto alphas = parse_double_list(alpha_str, "--alpha");
            out.params = {{"poly", poly_file},
                          {"n", std::to_string(p.variables())},
                          {"mode", mode_str},
                          {"rotations", std::to_string(rotations)},
                          {"ss_trials", std::to_string(ss_trials)}};
            std::size_t idx = 0;
            for (double a : alphas) {
                if (mode_str != "sign")
                    out.reports.push_back(verify_transfer_as(p, a, rotations, mix_seed(seed, idx),
                                                             TransferMode::Raw, ss_trials));
                ++idx;
                if (mode_str != "raw")
                    out.reports.push_back(verify_transfer_as(p, a, rotations, mix_seed(seed, idx),
                                                             TransferMode::Sign, ss_trials));
                ++idx;
            }
        } else if (*va_cmd) {
            out.command = "verify-appendix";
            if (n_opt < 3 || n_opt > 12)
                throw std::invalid_argument("verify-appendix: requires 3 <= n <= 12");
            const std::uint32_t mask = parse_bitmask(k_str, n_opt);
            out.params = {{"n", std::to_string(n_opt)},
                          {"ell", std::to_string(ell)},
                          {"k", k_str},
                          {"rotations", std::to_string(rotations)}};
            out.reports.push_back(verify_appendix_energy(n_opt, ell, mask, rotations, seed));
        } else if (*gl_cmd) {
            out.command = "gl-sweep";
            SweepConfig cfg;
            cfg.degrees = parse_int_list(d_str, "--d");
            cfg.dims = parse_int_list(n_str, "--n");
            cfg.eps_list = parse_double_list(eps_str, "--eps");
            cfg.t_list = parse_double_list(t_str, "--t");
            cfg.rotations = rotations;
            cfg.ss_trials = ss_trials;
            cfg.ns_inflation = inflation;
            cfg.seed = seed;
            out.params = {{"d", d_str},
                          {"n", n_str},
                          {"eps", eps_str},
                          {"t", t_str},
                          {"rotations", std::to_string(rotations)},
                          {"ss_trials", std::to_string(ss_trials)},
                          {"inflation", format_double(inflation)}};
            out.reports = gotsman_linial_sweep(cfg);
        } else if (*hs_cmd) {
            out.command = "heat-sample";
            if (n_opt < 3) throw std::invalid_argument("heat-sample: requires n >= 3");
            const auto ts = parse_double_list(heat_t_str, "--t");
            out.params = {{"n", std::to_string(n_opt)},
                          {"t", heat_t_str},
                          {"samples", std::to_string(samples)},
                          {"mode", heat_mode},
                          {"dt_divisor", std::to_string(dt_divisor)}};
            json sample_rows = json::array();
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                const double t = ts[ti];
                const std::uint64_t tseed = mix_seed(seed, ti);
                std::vector<double> r(static_cast<std::size_t>(samples));
                if (heat_mode == "series") {
                    const HeatRadialDistribution dist = build_heat_distribution(n_opt, t);
                    for (long long i = 0; i < samples; ++i) {
                        Xoshiro256pp g =
                            Xoshiro256pp::stream(tseed, static_cast<std::uint64_t>(i));
                        r[static_cast<std::size_t>(i)] = dist.sample(g);
                    }
                } else {
                    const double dt = t / dt_divisor;
                    for (long long i = 0; i < samples; ++i) {
                        Xoshiro256pp g =
                            Xoshiro256pp::stream(tseed, static_cast<std::uint64_t>(i));
                        r[static_cast<std::size_t>(i)] = simulate_jacobi_angle(n_opt, t, dt, g);
                    }
                }
                std::vector<double> r2(r.size());
                for (std::size_t i = 0; i < r.size(); ++i) r2[i] = r[i] * r[i];
                const auto [crude, chi] = mean_angle_bounds(n_opt, t);
                std::map<std::string, double> prm{{"n", double(n_opt)}, {"t", t}};
                out.reports.push_back(
                    make_upper_bound_report("heat-mean-angle", make_estimate(r, tseed), chi, prm));
                prm["crude_bound"] = crude;
                out.reports.push_back(make_upper_bound_report(
                    "heat-mean-square-angle", make_estimate(r2, tseed),
                    2.0 * (n_opt - 1.0) * t, prm));
                if (emit_samples)
                    for (double v : r) sample_rows.push_back({{"r", v}, {"t", t}});
            }
            if (emit_samples) out.extra["samples"] = sample_rows;
        } else if (*roots_cmd) {
            out.command = "roots";
            const SparsePolynomial p = load_poly();
            const int n = p.variables();
            if (n < 3) throw std::invalid_argument("roots: requires n >= 3");
            const int d = p.degree();
            std::vector<double> violations(static_cast<std::size_t>(roots_trials));
            double mean_count = 0.0;
            int max_count = 0, inconsistent = 0, degenerate = 0;
            for (int i = 0; i < roots_trials; ++i) {
                Xoshiro256pp g = Xoshiro256pp::stream(seed, static_cast<std::uint64_t>(i));
                const Eigen::VectorXd u = sample_uniform_sphere(n, g);
                const Eigen::VectorXd w = sample_unit_tangent(u, g);
                const CircleRootAnalysis a =
                    analyze_circle_roots(restrict_to_great_circle(p, u, w));
                if (a.identically_zero) {
                    ++degenerate;
                    violations[static_cast<std::size_t>(i)] = 0.0;
                    continue;
                }
                violations[static_cast<std::size_t>(i)] = a.count > 2 * d ? 1.0 : 0.0;
                mean_count += a.count;
                max_count = std::max(max_count, a.count);
                if (!a.consistent) ++inconsistent;
            }
            out.params = {{"poly", poly_file},
                          {"n", std::to_string(n)},
                          {"d", std::to_string(d)},
                          {"trials", std::to_string(roots_trials)}};
            std::map<std::string, double> prm{
                {"d", double(d)},
                {"max_count", double(max_count)},
                {"mean_count", mean_count / std::max(1, roots_trials - degenerate)},
                {"identically_zero", double(degenerate)},
                {"inconsistent_scans", double(inconsistent)},
                {"root_bound", 2.0 * d}};
            out.reports.push_back(make_upper_bound_report(
                "circle-root-violations", make_estimate(violations, seed), 0.0, prm));
        }

        out.print(csv);
        return out.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
