#pragma once

#include <string_view>
#include <vector>

#include "acredit/errors.hpp"

namespace acredit {

// Per-author credit tier labels in author-list order. Tier 1 is the highest
// tier; the set of distinct labels must be exactly {1, ..., m}. Labels may
// appear in any order ("1, 2, 3, 3, 2" is valid).
struct RankingCode {
    std::vector<int> ranks;

    int author_count() const { return static_cast<int>(ranks.size()); }
    int tier_count() const;  // m = highest rank

    // Throws InputError when the invariants above do not hold.
    void validate() const;
};

// Ordered tier sizes (c_1, ..., c_m): c_k authors share tier k.
struct GroupStructure {
    std::vector<int> counts;

    int tiers() const { return static_cast<int>(counts.size()); }  // m
    int authors() const;                                           // n = sum c_k

    // Cumulative tier sizes C_j = c_1 + ... + c_j; these appear in every
    // closed form.
    std::vector<int> prefix_counts() const;

    void validate() const;

    // n authors, all with distinct contributions: (1, 1, ..., 1).
    static GroupStructure unequal_contributions(int n);
};

// Parses a comma- and/or whitespace-separated list of rank labels.
// Rejects empty input, non-integer tokens, ranks < 1 and gaps in the
// rank set (e.g. {1, 3} without a 2).
RankingCode parse_ranking_code(std::string_view text);

// Tier sizes of a ranking code: counts[k-1] = number of authors at rank k.
GroupStructure group_structure(const RankingCode& code);

}  // namespace acredit
