#pragma once

#include <vector>

#include "acredit/ranking.hpp"

namespace acredit {

enum class Granularity { PerGroup, PerAuthor };

// Credit shares of one publication. Per-group vectors satisfy
// sum c_k * share_k = 1, per-author vectors sum to 1; both are
// non-increasing in rank order.
struct CreditVector {
    std::vector<double> shares;
    Granularity granularity = Granularity::PerGroup;
};

// First and second moments of the group shares under the uniform
// distribution on the credit polytope, plus the standard deviation.
struct CreditStats {
    std::vector<double> mean;
    std::vector<double> second_moment;
    std::vector<double> stddev;
};

// Axiomatic credit share (a-index) of each tier:
//   share_k = (1/m) * sum_{j=k}^{m} 1/C_j.
CreditVector axiomatic_credit(const GroupStructure& groups);

// Axiomatic shares scattered back to author positions: author i receives
// the share of their rank's tier.
CreditVector axiomatic_credit_per_author(const RankingCode& code);

// Second moment of each tier share:
//   S_k = 2/(m(m+1)) * sum_{k <= i <= j <= m} 1/(C_i * C_j).
std::vector<double> second_moment(const GroupStructure& groups);

// Means, second moments and stddev_k = sqrt(S_k - mean_k^2). A radicand
// below -1e-12 throws InternalError; smaller negatives clamp to zero.
// For m = 1 the polytope is a single point and the stddev is exactly 0.
CreditStats credit_stddev(const GroupStructure& groups);

// Axiomatic shares for n all-distinct contributions:
//   share_k = (1/n) * sum_{j=k}^{n} 1/j.
CreditVector unequal_a_index(int n);

// Harmonic counting: share_k = alpha/k with alpha = 1 / sum_{j=1}^{n} 1/j.
CreditVector harmonic_credit(int n);

// Fractional counting: every share = 1/n.
CreditVector fractional_credit(int n);

// Lower-triangular table of unequal_a_index(1..max_n), rounded half-up to
// `decimals` places. The row's rounding residual (1 minus the rounded row
// sum) is added to the first entry, so every printed row sums to exactly 1.
struct ShareTable {
    int decimals = 4;
    std::vector<std::vector<double>> rows;  // rows[n-1] has n entries
};
ShareTable rounded_share_table(int max_n, int decimals);

// The three counting schemes side by side for n all-distinct co-authors.
struct SchemeComparison {
    std::vector<double> fractional;
    std::vector<double> harmonic;
    std::vector<double> axiomatic;
};
SchemeComparison compare_schemes(int n);

}  // namespace acredit
