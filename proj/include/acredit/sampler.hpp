#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "acredit/credit.hpp"
#include "acredit/ranking.hpp"

namespace acredit {

struct SampleConfig {
    GroupStructure groups;
    std::uint64_t num_samples = 0;
    std::uint64_t seed = 0;
    // Estimates are bit-identical for any worker count: samples are drawn in
    // fixed-size chunks with per-chunk sub-seeds and reduced in chunk order.
    unsigned workers = 1;
};

struct MomentEstimate {
    std::vector<double> mean;
    std::vector<double> stddev;
    std::vector<double> standard_error;  // stddev / sqrt(num_samples)
    std::uint64_t num_samples = 0;
};

// One uniform draw from the credit polytope
//   { x_1 >= x_2 >= ... >= x_m >= 0,  sum c_i x_i = 1 }.
// Draws y uniform on the standard (m-1)-simplex via normalized exponential
// spacings and maps x_k = sum_{j=k}^{m} y_j / C_j; the map is a linear
// bijection with constant Jacobian, so uniformity is preserved and both
// constraints hold exactly.
CreditVector sample_credit_vector(const GroupStructure& groups, std::mt19937_64& rng);

// Empirical per-group mean/stddev/standard error over config.num_samples
// draws. Deterministic for a fixed seed.
MomentEstimate estimate_moments(const SampleConfig& config);

// Volume of the polytope in the (x_2, ..., x_m) parameterization:
//   M_m = 1 / ((m-1)! * C_2 * C_3 * ... * C_m),  M_1 = 1.
double polytope_volume_closed_form(const GroupStructure& groups);

struct VolumeEstimate {
    double estimate = 0.0;
    double standard_error = 0.0;
    std::uint64_t num_samples = 0;
    std::uint64_t accepted = 0;
};

// Rejection estimate of the polytope volume: draw (x_2, ..., x_m) uniformly
// in the box prod_i [0, 1/C_i], accept iff the ordering holds and
// x_1 = (1 - sum_{i>=2} c_i x_i)/c_1 >= x_2. Requires m >= 2; the
// acceptance rate is 1/(m-1)!, so small m is recommended.
VolumeEstimate estimate_volume(const GroupStructure& groups, std::uint64_t num_samples,
                               std::uint64_t seed, unsigned workers = 1);

}  // namespace acredit
