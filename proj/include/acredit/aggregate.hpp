#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "acredit/ranking.hpp"

namespace acredit {

// One publication row: author names in list order, their ranking code and
// an external publication value (citation count, impact factor, ...).
struct PublicationRecord {
    std::string pub_id;
    std::vector<std::string> authors;
    RankingCode ranking;
    double weight = 1.0;
};

// Aggregated credit of one author across a record set. "inflated" counts
// papers; the other schemes accumulate shares and weight-multiplied shares.
struct AuthorReport {
    std::string author;
    std::int64_t inflated = 0;
    double fractional = 0.0;
    double fractional_weighted = 0.0;
    double harmonic = 0.0;
    double harmonic_weighted = 0.0;
    double axiomatic = 0.0;
    double axiomatic_weighted = 0.0;
};

enum class RecordFormat { Csv, Json };

// CSV: header row with columns pub_id, authors, ranking_code and optionally
// weight (default 1 when absent); authors and ranking_code are ';'-separated
// within their cell. JSON: array of objects with the same keys.
// All rows are validated; failures throw InputError listing every offending
// row by number.
std::vector<PublicationRecord> load_publications(std::istream& in, RecordFormat format);
std::vector<PublicationRecord> load_publications_file(const std::string& path, RecordFormat format);

// Per-author totals under all four schemes. The axiomatic scheme consumes
// the ranking code's group structure; harmonic and fractional baselines use
// the author position only. Sorted by descending weighted axiomatic credit,
// ties broken by author name. Record order never affects the result.
std::vector<AuthorReport> author_credit_report(const std::vector<PublicationRecord>& records);

// Column order: author, inflated, fractional, fractional_weighted, harmonic,
// harmonic_weighted, axiomatic, axiomatic_weighted. CSV prints 6 decimal
// places; JSON carries full binary64 precision.
void write_report(const std::vector<AuthorReport>& report, RecordFormat format, std::ostream& out);
void write_report_file(const std::vector<AuthorReport>& report, RecordFormat format,
                       const std::string& path);

}  // namespace acredit
