#include "acredit/aggregate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "acredit/credit.hpp"

namespace acredit {

namespace {

std::string trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

// One CSV row; handles quoted fields with "" escapes, single-line records.
std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                current += ch;
            }
        } else if (ch == '"') {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string escaped = "\"";
    for (char ch : field) {
        if (ch == '"') escaped += '"';
        escaped += ch;
    }
    escaped += '"';
    return escaped;
}

std::vector<std::string> split_semicolon_list(const std::string& cell) {
    std::vector<std::string> items;
    std::string current;
    for (char ch : cell) {
        if (ch == ';') {
            items.push_back(trim(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    items.push_back(trim(current));
    return items;
}

double parse_weight(const std::string& cell) {
    const std::string text = trim(cell);
    if (text.empty()) return 1.0;
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size()) {
        throw InputError("malformed weight '" + text + "'");
    }
    if (!std::isfinite(value)) throw InputError("weight must be finite, got '" + text + "'");
    if (value < 0.0) throw InputError("weight must be non-negative, got '" + text + "'");
    return value;
}

void validate_record(const PublicationRecord& rec) {
    if (rec.pub_id.empty()) throw InputError("missing pub_id");
    if (rec.authors.empty()) throw InputError("record has no authors");
    std::set<std::string> seen;
    for (const auto& name : rec.authors) {
        if (name.empty()) throw InputError("empty author name");
        if (!seen.insert(name).second) {
            throw InputError("duplicate author name '" + name + "' within one record");
        }
    }
    if (rec.authors.size() != rec.ranking.ranks.size()) {
        throw InputError("length mismatch: " + std::to_string(rec.authors.size()) +
                         " authors vs " + std::to_string(rec.ranking.ranks.size()) + " ranks");
    }
    rec.ranking.validate();
    if (!std::isfinite(rec.weight) || rec.weight < 0.0) {
        throw InputError("weight must be a non-negative finite number");
    }
}

// Collects "row N: ..." diagnostics and reports them all at once.
class RowErrors {
public:
    void add(const std::string& where, const std::string& message) {
        messages_.push_back(where + ": " + message);
    }
    void raise_if_any() const {
        if (messages_.empty()) return;
        std::string joined;
        for (size_t i = 0; i < messages_.size(); ++i) {
            if (i) joined += '\n';
            joined += messages_[i];
        }
        throw InputError(joined);
    }

private:
    std::vector<std::string> messages_;
};

std::vector<PublicationRecord> load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("csv: missing header row");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv_row(line);
    std::unordered_map<std::string, size_t> columns;
    for (size_t i = 0; i < header.size(); ++i) columns[trim(header[i])] = i;
    for (const char* required : {"pub_id", "authors", "ranking_code"}) {
        if (!columns.count(required)) {
            throw InputError(std::string("csv: missing required column '") + required + "'");
        }
    }
    const bool has_weight = columns.count("weight") > 0;

    std::vector<PublicationRecord> records;
    RowErrors errors;
    std::set<std::string> pub_ids;
    int line_number = 1;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const std::string where = "line " + std::to_string(line_number);
        const auto fields = split_csv_row(line);
        if (fields.size() != header.size()) {
            errors.add(where, "expected " + std::to_string(header.size()) + " fields, got " +
                                  std::to_string(fields.size()));
            continue;
        }
        try {
            PublicationRecord rec;
            rec.pub_id = trim(fields[columns.at("pub_id")]);
            rec.authors = split_semicolon_list(fields[columns.at("authors")]);
            std::string code_cell = fields[columns.at("ranking_code")];
            std::replace(code_cell.begin(), code_cell.end(), ';', ' ');
            rec.ranking = parse_ranking_code(code_cell);
            rec.weight = has_weight ? parse_weight(fields[columns.at("weight")]) : 1.0;
            validate_record(rec);
            if (!pub_ids.insert(rec.pub_id).second) {
                throw InputError("duplicate pub_id '" + rec.pub_id + "'");
            }
            records.push_back(std::move(rec));
        } catch (const InputError& e) {
            errors.add(where, e.what());
        }
    }
    errors.raise_if_any();
    return records;
}

std::vector<PublicationRecord> load_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("json: ") + e.what());
    }
    if (!doc.is_array()) throw InputError("json: expected a top-level array of records");

    std::vector<PublicationRecord> records;
    RowErrors errors;
    std::set<std::string> pub_ids;
    for (size_t i = 0; i < doc.size(); ++i) {
        const std::string where = "record " + std::to_string(i + 1);
        try {
            const auto& obj = doc[i];
            if (!obj.is_object()) throw InputError("expected an object");
            PublicationRecord rec;
            if (!obj.contains("pub_id") || !obj["pub_id"].is_string()) {
                throw InputError("missing string field 'pub_id'");
            }
            rec.pub_id = obj["pub_id"].get<std::string>();
            if (!obj.contains("authors") || !obj["authors"].is_array()) {
                throw InputError("missing array field 'authors'");
            }
            for (const auto& name : obj["authors"]) {
                if (!name.is_string()) throw InputError("author names must be strings");
                rec.authors.push_back(name.get<std::string>());
            }
            if (!obj.contains("ranking_code")) throw InputError("missing field 'ranking_code'");
            const auto& code = obj["ranking_code"];
            if (code.is_string()) {
                rec.ranking = parse_ranking_code(code.get<std::string>());
            } else if (code.is_array()) {
                for (const auto& rank : code) {
                    if (!rank.is_number_integer()) {
                        throw InputError("ranking_code entries must be integers");
                    }
                    rec.ranking.ranks.push_back(rank.get<int>());
                }
                rec.ranking.validate();
            } else {
                throw InputError("ranking_code must be an array of integers or a string");
            }
            if (obj.contains("weight")) {
                if (!obj["weight"].is_number()) throw InputError("weight must be a number");
                rec.weight = obj["weight"].get<double>();
            }
            validate_record(rec);
            if (!pub_ids.insert(rec.pub_id).second) {
                throw InputError("duplicate pub_id '" + rec.pub_id + "'");
            }
            records.push_back(std::move(rec));
        } catch (const InputError& e) {
            errors.add(where, e.what());
        }
    }
    errors.raise_if_any();
    return records;
}

std::string format6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

}  // namespace

std::vector<PublicationRecord> load_publications(std::istream& in, RecordFormat format) {
    return format == RecordFormat::Csv ? load_csv(in) : load_json(in);
}

std::vector<PublicationRecord> load_publications_file(const std::string& path,
                                                      RecordFormat format) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open input file: " + path);
    return load_publications(in, format);
}

std::vector<AuthorReport> author_credit_report(const std::vector<PublicationRecord>& records) {
    std::set<std::string> pub_ids;
    for (const auto& rec : records) {
        try {
            validate_record(rec);
            if (!pub_ids.insert(rec.pub_id).second) {
                throw InputError("duplicate pub_id '" + rec.pub_id + "'");
            }
        } catch (const InputError& e) {
            throw InputError("record '" + rec.pub_id + "': " + e.what());
        }
    }

    // Accumulate in pub_id order so totals are bit-identical under any
    // permutation of the input.
    std::vector<const PublicationRecord*> ordered;
    ordered.reserve(records.size());
    for (const auto& rec : records) ordered.push_back(&rec);
    std::sort(ordered.begin(), ordered.end(),
              [](const PublicationRecord* a, const PublicationRecord* b) {
                  return a->pub_id < b->pub_id;
              });

    std::map<std::string, AuthorReport> by_author;
    for (const PublicationRecord* rec : ordered) {
        const int n = static_cast<int>(rec->authors.size());
        const auto axiomatic = axiomatic_credit_per_author(rec->ranking).shares;
        const auto harmonic = harmonic_credit(n).shares;
        const double fractional = 1.0 / n;
        for (size_t i = 0; i < rec->authors.size(); ++i) {
            AuthorReport& row = by_author[rec->authors[i]];
            row.author = rec->authors[i];
            row.inflated += 1;
            row.fractional += fractional;
            row.fractional_weighted += fractional * rec->weight;
            row.harmonic += harmonic[i];
            row.harmonic_weighted += harmonic[i] * rec->weight;
            row.axiomatic += axiomatic[i];
            row.axiomatic_weighted += axiomatic[i] * rec->weight;
        }
    }

    std::vector<AuthorReport> report;
    report.reserve(by_author.size());
    for (auto& [name, row] : by_author) report.push_back(std::move(row));
    std::sort(report.begin(), report.end(), [](const AuthorReport& a, const AuthorReport& b) {
        if (a.axiomatic_weighted != b.axiomatic_weighted) {
            return a.axiomatic_weighted > b.axiomatic_weighted;
        }
        return a.author < b.author;
    });
    return report;
}

void write_report(const std::vector<AuthorReport>& report, RecordFormat format,
                  std::ostream& out) {
    if (format == RecordFormat::Csv) {
        out << "author,inflated,fractional,fractional_weighted,harmonic,harmonic_weighted,"
               "axiomatic,axiomatic_weighted\n";
        for (const auto& row : report) {
            out << csv_escape(row.author) << ',' << row.inflated << ','
                << format6(row.fractional) << ',' << format6(row.fractional_weighted) << ','
                << format6(row.harmonic) << ',' << format6(row.harmonic_weighted) << ','
                << format6(row.axiomatic) << ',' << format6(row.axiomatic_weighted) << '\n';
        }
    } else {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const auto& row : report) {
            nlohmann::ordered_json obj;
            obj["author"] = row.author;
            obj["inflated"] = row.inflated;
            obj["fractional"] = row.fractional;
            obj["fractional_weighted"] = row.fractional_weighted;
            obj["harmonic"] = row.harmonic;
            obj["harmonic_weighted"] = row.harmonic_weighted;
            obj["axiomatic"] = row.axiomatic;
            obj["axiomatic_weighted"] = row.axiomatic_weighted;
            doc.push_back(std::move(obj));
        }
        out << doc.dump() << '\n';
    }
    if (!out) throw InputError("failed to write report");
}

void write_report_file(const std::vector<AuthorReport>& report, RecordFormat format,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open output file: " + path);
    write_report(report, format, out);
    out.flush();
    if (!out) throw InputError("failed to write report to " + path);
}

}  // namespace acredit
