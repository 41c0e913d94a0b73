#pragma once

#include <cstdint>
#include <vector>

namespace massaction {

// Per-step ensemble statistics over replicate runs; stddev is the sample
// standard deviation and is all zeros when there is a single replicate.
struct EnsembleSeries {
    std::vector<std::vector<double>> mean;    // [t][species]
    std::vector<std::vector<double>> stddev;  // [t][species]

    bool operator==(const EnsembleSeries&) const = default;
};

// Reduces replicate count series (runs[rep][t][species]) in replicate order,
// so the result does not depend on how the runs were scheduled.
EnsembleSeries series_stats(const std::vector<std::vector<std::vector<std::uint64_t>>>& runs);

}  // namespace massaction
