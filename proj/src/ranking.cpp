#include "acredit/ranking.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

namespace acredit {

namespace {

bool is_separator_space(char ch) {
    return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\n' || ch == '\v' || ch == '\f';
}

}  // namespace

int RankingCode::tier_count() const {
    int m = 0;
    for (int r : ranks) m = std::max(m, r);
    return m;
}

void RankingCode::validate() const {
    if (ranks.empty()) throw InputError("ranking code is empty");
    int m = 0;
    for (int r : ranks) {
        if (r < 1) {
            throw InputError("ranking code: rank must be a positive integer, got " +
                             std::to_string(r));
        }
        m = std::max(m, r);
    }
    // Distinct ranks must be exactly {1, ..., m}; report the first gap.
    std::vector<int> distinct(ranks);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (size_t k = 0; k < distinct.size(); ++k) {
        if (distinct[k] != static_cast<int>(k) + 1) {
            throw InputError("ranking code: missing rank " + std::to_string(k + 1) +
                             " (ranks must cover 1.." + std::to_string(m) + " with no gaps)");
        }
    }
}

int GroupStructure::authors() const {
    int n = 0;
    for (int c : counts) n += c;
    return n;
}

std::vector<int> GroupStructure::prefix_counts() const {
    std::vector<int> prefix(counts.size());
    int acc = 0;
    for (size_t j = 0; j < counts.size(); ++j) {
        acc += counts[j];
        prefix[j] = acc;
    }
    return prefix;
}

void GroupStructure::validate() const {
    if (counts.empty()) throw InputError("group structure is empty");
    for (int c : counts) {
        if (c < 1) {
            throw InputError("group structure: every tier size must be >= 1, got " +
                             std::to_string(c));
        }
    }
}

GroupStructure GroupStructure::unequal_contributions(int n) {
    if (n < 1) throw InputError("author count must be >= 1, got " + std::to_string(n));
    GroupStructure g;
    g.counts.assign(static_cast<size_t>(n), 1);
    return g;
}

RankingCode parse_ranking_code(std::string_view text) {
    RankingCode code;
    bool token_since_separator = false;
    size_t i = 0;
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == ',') {
            if (!token_since_separator) {
                throw InputError("ranking code: empty field at ','");
            }
            token_since_separator = false;
            ++i;
            continue;
        }
        if (is_separator_space(ch)) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < text.size() && text[j] != ',' && !is_separator_space(text[j])) ++j;
        const std::string_view token = text.substr(i, j - i);
        int value = 0;
        const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
        if (result.ec != std::errc{} || result.ptr != token.data() + token.size()) {
            throw InputError("ranking code: non-integer token '" + std::string(token) + "'");
        }
        if (value < 1) {
            throw InputError("ranking code: rank must be a positive integer, got '" +
                             std::string(token) + "'");
        }
        code.ranks.push_back(value);
        token_since_separator = true;
        i = j;
    }
    if (!token_since_separator && !code.ranks.empty()) {
        throw InputError("ranking code: trailing ','");
    }
    code.validate();
    return code;
}

GroupStructure group_structure(const RankingCode& code) {
    code.validate();
    GroupStructure groups;
    groups.counts.assign(static_cast<size_t>(code.tier_count()), 0);
    for (int r : code.ranks) groups.counts[static_cast<size_t>(r) - 1] += 1;
    return groups;
}

}  // namespace acredit
