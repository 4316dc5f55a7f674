#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace sphcube {

// A Monte Carlo mean with its standard error.  The unit of every empirical
// verification in this library.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;   // sample_std / sqrt(trials)
    long long trials = 0;
    std::uint64_t seed = 0;
};

// Two-pass mean/stderr so the result is independent of how the per-trial
// values were produced (sequentially or in parallel, the values vector is
// indexed by trial).
inline Estimate make_estimate(std::span<const double> values, std::uint64_t seed) {
    const auto m = static_cast<long long>(values.size());
    if (m < 2) throw std::invalid_argument("make_estimate: need at least 2 trials");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(m);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sample_var = ss / static_cast<double>(m - 1);
    return Estimate{mean, std::sqrt(sample_var / static_cast<double>(m)), m, seed};
}

} // namespace sphcube
