#pragma once

#include "sphcube/estimate.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <span>
#include <string>
#include <vector>

namespace sphcube {

// One empirical check against a bound or a closed-form value, with the
// Monte Carlo slack that decides pass/fail.
struct BoundReport {
    enum class Kind { UpperBound, Equality };

    std::string name;
    Kind kind = Kind::UpperBound;
    Estimate estimate;
    double bound = 0.0;          // the upper bound, or the equality target
    double slack_sigmas = 0.0;   // standard errors of headroom; >= 0 iff pass
    bool pass = false;
    std::map<std::string, double> params;
};

// pass iff mean <= bound + 3 * std_error
BoundReport make_upper_bound_report(std::string name, Estimate est, double bound,
                                    std::map<std::string, double> params);

// pass iff |mean - target| <= sigmas * std_error + 1e-12 (two-sided)
BoundReport make_equality_report(std::string name, Estimate est, double target,
                                 std::map<std::string, double> params, double sigmas = 4.0);

nlohmann::json report_to_json(const BoundReport& r);

// fixed column order:
// name,kind,mean,std_error,trials,seed,bound,slack_sigmas,pass,params
std::string reports_to_csv(std::span<const BoundReport> reports);

std::string format_double(double v);  // shortest %.17g round-trip form

} // namespace sphcube
