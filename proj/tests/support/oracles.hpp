#pragma once

// Test-side reference computations. These deliberately avoid the library's
// closed-form code paths so the two routes stay independent.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "acredit/ranking.hpp"

namespace test_oracle {

// Standard deviation by the radical form
//   sigma_k = (1/m) * sqrt( (m-1)/(m+1) * sum_{j>=k} 1/C_j^2
//                           - 2/(m+1) * sum_{k<=i<j<=m} 1/(C_i C_j) ),
// the algebraic counterpart of sqrt(S_k - R_k^2).
inline std::vector<double> stddev_radical(const acredit::GroupStructure& groups) {
    const auto prefix = groups.prefix_counts();
    const int m = groups.tiers();
    std::vector<double> out(prefix.size());
    for (int k = 1; k <= m; ++k) {
        double squares = 0.0;
        double cross = 0.0;
        for (int j = k; j <= m; ++j) {
            squares += 1.0 / (static_cast<double>(prefix[j - 1]) * prefix[j - 1]);
        }
        for (int i = k; i <= m; ++i) {
            for (int j = i + 1; j <= m; ++j) {
                cross += 1.0 / (static_cast<double>(prefix[i - 1]) * prefix[j - 1]);
            }
        }
        double radicand =
            (static_cast<double>(m - 1) / (m + 1)) * squares - (2.0 / (m + 1)) * cross;
        if (radicand < 0.0) radicand = 0.0;
        out[static_cast<size_t>(k) - 1] = std::sqrt(radicand) / m;
    }
    return out;
}

// Same radical specialized to n all-distinct contributions (C_j = j).
inline double stddev_all_distinct(int n, int k) {
    double squares = 0.0;
    double cross = 0.0;
    for (int j = k; j <= n; ++j) squares += 1.0 / (static_cast<double>(j) * j);
    for (int i = k; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) cross += 1.0 / (static_cast<double>(i) * j);
    }
    double radicand = (static_cast<double>(n - 1) / (n + 1)) * squares - (2.0 / (n + 1)) * cross;
    if (radicand < 0.0) radicand = 0.0;
    return std::sqrt(radicand) / n;
}

struct OracleMoments {
    std::vector<double> mean;
    std::vector<double> second;
    double volume = 0.0;
};

// m = 2: x_2 is uniform on [0, 1/(c1+c2)] and x_1 = (1 - c2 x_2)/c1, so all
// moments follow from E(u) = b/2 and E(u^2) = b^2/3 on [0, b].
inline OracleMoments m2_moments(int c1, int c2) {
    const double b = 1.0 / (c1 + c2);
    const double ex2 = b / 2.0;
    const double ex2sq = b * b / 3.0;
    OracleMoments out;
    out.mean = {(1.0 - c2 * ex2) / c1, ex2};
    out.second = {(1.0 - 2.0 * c2 * ex2 + c2 * c2 * ex2sq) / (c1 * c1), ex2sq};
    out.volume = b;
    return out;
}

// m = 3: integrate over the (x_2, x_3) region {0 <= x_3 <= x_2,
// C_2 x_2 + c_3 x_3 <= 1}. Inner x_2 integrals are evaluated analytically,
// which leaves outer integrands that are polynomials of degree <= 3 in x_3,
// so composite Simpson is exact.
inline OracleMoments m3_moments(int c1, int c2, int c3) {
    const double prefix2 = c1 + c2;
    const double prefix3 = prefix2 + c3;

    auto integrand = [&](double x3, int which) {
        const double upper = (1.0 - c3 * x3) / prefix2;
        const double lower = x3;
        const double span1 = upper - lower;
        const double span2 = (upper * upper - lower * lower) / 2.0;
        const double span3 = (upper * upper * upper - lower * lower * lower) / 3.0;
        const double a = 1.0 - c3 * x3;  // c1*x1 + c2*x2 at fixed x3
        switch (which) {
            case 0: return span1;                                      // volume
            case 1: return (a * span1 - c2 * span2) / c1;              // E x1
            case 2: return span2;                                      // E x2
            case 3: return x3 * span1;                                 // E x3
            case 4:                                                    // E x1^2
                return (a * a * span1 - 2.0 * a * c2 * span2 + c2 * c2 * span3) / (c1 * c1);
            case 5: return span3;                                      // E x2^2
            default: return x3 * x3 * span1;                           // E x3^2
        }
    };

    auto simpson = [&](int which) {
        const int panels = 8;
        const double hi = 1.0 / prefix3;
        const double h = hi / panels;
        double total = integrand(0.0, which) + integrand(hi, which);
        for (int i = 1; i < panels; ++i) {
            total += integrand(i * h, which) * (i % 2 ? 4.0 : 2.0);
        }
        return total * h / 3.0;
    };

    const double volume = simpson(0);
    OracleMoments out;
    out.volume = volume;
    out.mean = {simpson(1) / volume, simpson(2) / volume, simpson(3) / volume};
    out.second = {simpson(4) / volume, simpson(5) / volume, simpson(6) / volume};
    return out;
}

inline acredit::GroupStructure random_structure(std::mt19937_64& rng, int max_tiers,
                                                int max_count) {
    acredit::GroupStructure groups;
    const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_tiers));
    groups.counts.resize(static_cast<size_t>(m));
    for (auto& c : groups.counts) {
        c = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_count));
    }
    return groups;
}

}  // namespace test_oracle
