#include "sphcube/report.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sphcube {

namespace {

constexpr double kHugeSlack = 1e308;
constexpr double kEqualityFloor = 1e-12;  // absolute floor for exact-zero-variance checks

double capped(double v) {
    if (std::isnan(v)) return 0.0;
    if (v > kHugeSlack) return kHugeSlack;
    if (v < -kHugeSlack) return -kHugeSlack;
    return v;
}

} // namespace

BoundReport make_upper_bound_report(std::string name, Estimate est, double bound,
                                    std::map<std::string, double> params) {
    BoundReport r;
    r.name = std::move(name);
    r.kind = BoundReport::Kind::UpperBound;
    r.estimate = est;
    r.bound = bound;
    r.pass = est.mean <= bound + 3.0 * est.std_error;
    r.slack_sigmas = est.std_error > 0.0
                         ? capped((bound - est.mean) / est.std_error)
                         : (est.mean <= bound ? kHugeSlack : -kHugeSlack);
    r.params = std::move(params);
    return r;
}

BoundReport make_equality_report(std::string name, Estimate est, double target,
                                 std::map<std::string, double> params, double sigmas) {
    BoundReport r;
    r.name = std::move(name);
    r.kind = BoundReport::Kind::Equality;
    r.estimate = est;
    r.bound = target;
    const double diff = std::abs(est.mean - target);
    r.pass = diff <= sigmas * est.std_error + kEqualityFloor;
    r.slack_sigmas = est.std_error > 0.0
                         ? capped(sigmas - diff / est.std_error)
                         : (diff <= kEqualityFloor ? kHugeSlack : -kHugeSlack);
    r.params = std::move(params);
    r.params["pass_sigmas"] = sigmas;
    return r;
}

nlohmann::json report_to_json(const BoundReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["kind"] = r.kind == BoundReport::Kind::UpperBound ? "upper_bound" : "equality";
    j["estimate"] = {{"mean", r.estimate.mean},
                     {"std_error", r.estimate.std_error},
                     {"trials", r.estimate.trials},
                     {"seed", r.estimate.seed}};
    j["bound"] = r.bound;
    j["slack_sigmas"] = capped(r.slack_sigmas);
    j["pass"] = r.pass;
    j["params"] = r.params;
    return j;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string reports_to_csv(std::span<const BoundReport> reports) {
    std::ostringstream out;
    out << "name,kind,mean,std_error,trials,seed,bound,slack_sigmas,pass,params\n";
    for (const auto& r : reports) {
        out << r.name << ','
            << (r.kind == BoundReport::Kind::UpperBound ? "upper_bound" : "equality") << ','
            << format_double(r.estimate.mean) << ',' << format_double(r.estimate.std_error)
            << ',' << r.estimate.trials << ',' << r.estimate.seed << ','
            << format_double(r.bound) << ',' << format_double(capped(r.slack_sigmas)) << ','
            << (r.pass ? "true" : "false") << ',';
        bool first = true;
        for (const auto& [k, v] : r.params) {
            if (!first) out << ';';
            out << k << '=' << format_double(v);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace sphcube
