#include "acredit/credit.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace acredit {

namespace {

// t_k = sum_{j=k}^{m} 1/C_j, accumulated backwards.
std::vector<double> inverse_prefix_tails(const std::vector<int>& prefix) {
    const int m = static_cast<int>(prefix.size());
    std::vector<double> tails(prefix.size());
    double acc = 0.0;
    for (int k = m; k >= 1; --k) {
        acc += 1.0 / prefix[k - 1];
        tails[k - 1] = acc;
    }
    return tails;
}

}  // namespace

CreditVector axiomatic_credit(const GroupStructure& groups) {
    groups.validate();
    const auto tails = inverse_prefix_tails(groups.prefix_counts());
    const double m = groups.tiers();
    CreditVector out{std::vector<double>(tails.size()), Granularity::PerGroup};
    for (size_t k = 0; k < tails.size(); ++k) out.shares[k] = tails[k] / m;
    return out;
}

CreditVector axiomatic_credit_per_author(const RankingCode& code) {
    const auto group_shares = axiomatic_credit(group_structure(code));
    CreditVector out{std::vector<double>(code.ranks.size()), Granularity::PerAuthor};
    for (size_t i = 0; i < code.ranks.size(); ++i) {
        out.shares[i] = group_shares.shares[static_cast<size_t>(code.ranks[i]) - 1];
    }
    return out;
}

std::vector<double> second_moment(const GroupStructure& groups) {
    groups.validate();
    const auto prefix = groups.prefix_counts();
    const int m = groups.tiers();
    const double norm = 2.0 / (static_cast<double>(m) * (m + 1));
    // pair_acc at k = sum_{k <= i <= j <= m} 1/(C_i C_j), built from the
    // inverse-prefix tail so each step adds 1/C_i * t_i (diagonal included).
    std::vector<double> moments(prefix.size());
    double tail = 0.0;
    double pair_acc = 0.0;
    for (int k = m; k >= 1; --k) {
        const double inv = 1.0 / prefix[k - 1];
        tail += inv;
        pair_acc += inv * tail;
        moments[k - 1] = norm * pair_acc;
    }
    return moments;
}

CreditStats credit_stddev(const GroupStructure& groups) {
    CreditStats stats;
    stats.mean = axiomatic_credit(groups).shares;
    stats.second_moment = second_moment(groups);
    stats.stddev.resize(stats.mean.size());
    for (size_t k = 0; k < stats.mean.size(); ++k) {
        double variance = stats.second_moment[k] - stats.mean[k] * stats.mean[k];
        if (variance < -1e-12) {
            throw InternalError("negative variance " + std::to_string(variance) +
                                " for tier " + std::to_string(k + 1));
        }
        if (variance < 0.0) variance = 0.0;
        stats.stddev[k] = std::sqrt(variance);
    }
    // m = 1 is a point polytope; pin the value regardless of rounding.
    if (groups.tiers() == 1) stats.stddev[0] = 0.0;
    return stats;
}

CreditVector unequal_a_index(int n) {
    if (n < 1) throw InputError("author count must be >= 1, got " + std::to_string(n));
    CreditVector out{std::vector<double>(static_cast<size_t>(n)), Granularity::PerAuthor};
    double tail = 0.0;
    for (int k = n; k >= 1; --k) {
        tail += 1.0 / k;
        out.shares[static_cast<size_t>(k) - 1] = tail / n;
    }
    return out;
}

CreditVector harmonic_credit(int n) {
    if (n < 1) throw InputError("author count must be >= 1, got " + std::to_string(n));
    double harmonic_sum = 0.0;
    for (int j = n; j >= 1; --j) harmonic_sum += 1.0 / j;
    const double alpha = 1.0 / harmonic_sum;
    CreditVector out{std::vector<double>(static_cast<size_t>(n)), Granularity::PerAuthor};
    for (int k = 1; k <= n; ++k) out.shares[static_cast<size_t>(k) - 1] = alpha / k;
    return out;
}

CreditVector fractional_credit(int n) {
    if (n < 1) throw InputError("author count must be >= 1, got " + std::to_string(n));
    CreditVector out{std::vector<double>(static_cast<size_t>(n), 1.0 / n), Granularity::PerAuthor};
    return out;
}

ShareTable rounded_share_table(int max_n, int decimals) {
    if (max_n < 1) throw InputError("max_n must be >= 1, got " + std::to_string(max_n));
    if (decimals < 1 || decimals > 12) {
        throw InputError("decimals must be in 1..12, got " + std::to_string(decimals));
    }
    long long scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;

    ShareTable table{decimals, {}};
    table.rows.reserve(static_cast<size_t>(max_n));
    for (int n = 1; n <= max_n; ++n) {
        const auto raw = unequal_a_index(n).shares;
        std::vector<long long> units(raw.size());
        long long total = 0;
        for (size_t k = 0; k < raw.size(); ++k) {
            units[k] = std::llround(raw[k] * static_cast<double>(scale));  // half-up
            total += units[k];
        }
        units[0] += scale - total;  // rounding residual goes to the first author
        std::vector<double> row(raw.size());
        for (size_t k = 0; k < raw.size(); ++k) {
            row[k] = static_cast<double>(units[k]) / static_cast<double>(scale);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

SchemeComparison compare_schemes(int n) {
    SchemeComparison cmp;
    cmp.fractional = fractional_credit(n).shares;
    cmp.harmonic = harmonic_credit(n).shares;
    cmp.axiomatic = unequal_a_index(n).shares;
    return cmp;
}

}  // namespace acredit
