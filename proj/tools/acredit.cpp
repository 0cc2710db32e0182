// acredit: co-author credit shares from ranking codes.
//
// Subcommands: credit, table, compare, sample, volume, aggregate.
// Exit codes: 0 success, 2 input/validation error, 1 internal error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acredit/aggregate.hpp"
#include "acredit/credit.hpp"
#include "acredit/errors.hpp"
#include "acredit/ranking.hpp"
#include "acredit/sampler.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

struct GlobalOpts {
    std::string format = "plain";
    std::uint64_t seed = 42;
    int precision = 4;
};

std::string fixed(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    return buf;
}

std::string general(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string join_fixed(const std::vector<double>& values, int precision) {
    std::string line;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) line += ' ';
        line += fixed(values[i], precision);
    }
    return line;
}

std::string join_ranks(const std::vector<int>& ranks) {
    std::string text;
    for (size_t i = 0; i < ranks.size(); ++i) {
        if (i) text += ' ';
        text += std::to_string(ranks[i]);
    }
    return text;
}

// Deviation of an estimate from its target in standard-error units. A zero
// SE only happens for point estimates; treat an exact hit as 0.
double deviation_se(double estimate, double target, double se) {
    if (se > 0.0) return (estimate - target) / se;
    return std::abs(estimate - target) <= 1e-12 ? 0.0
                                                : std::numeric_limits<double>::infinity();
}

// ---- credit ---------------------------------------------------------------

void run_credit(const GlobalOpts& opts, const std::vector<std::string>& code_texts,
                bool with_stddev, std::ostream& out) {
    ordered_json results = ordered_json::array();
    bool wrote_csv_header = false;
    for (const auto& text : code_texts) {
        const auto code = acredit::parse_ranking_code(text);
        const auto groups = acredit::group_structure(code);
        const auto per_author = acredit::axiomatic_credit_per_author(code);
        const auto per_group = acredit::axiomatic_credit(groups);
        acredit::CreditStats stats;
        if (with_stddev) stats = acredit::credit_stddev(groups);

        if (opts.format == "plain") {
            out << join_fixed(per_author.shares, opts.precision) << '\n';
            if (with_stddev) {
                for (int k = 0; k < groups.tiers(); ++k) {
                    out << "group " << (k + 1) << ": share "
                        << fixed(per_group.shares[static_cast<size_t>(k)], opts.precision)
                        << " stddev " << fixed(stats.stddev[static_cast<size_t>(k)], opts.precision)
                        << '\n';
                }
            }
        } else if (opts.format == "csv") {
            if (!wrote_csv_header) {
                out << "code,position,rank,share" << (with_stddev ? ",stddev" : "") << '\n';
                wrote_csv_header = true;
            }
            const std::string code_str = join_ranks(code.ranks);
            for (size_t i = 0; i < code.ranks.size(); ++i) {
                out << code_str << ',' << (i + 1) << ',' << code.ranks[i] << ','
                    << fixed(per_author.shares[i], opts.precision);
                if (with_stddev) {
                    out << ',' << fixed(stats.stddev[static_cast<size_t>(code.ranks[i]) - 1],
                                        opts.precision);
                }
                out << '\n';
            }
        } else {
            ordered_json obj;
            obj["ranks"] = code.ranks;
            obj["counts"] = groups.counts;
            obj["per_author"] = per_author.shares;
            obj["per_group"] = per_group.shares;
            if (with_stddev) obj["stddev"] = stats.stddev;
            results.push_back(std::move(obj));
        }
    }
    if (opts.format == "json") out << results.dump() << '\n';
}

// ---- table ----------------------------------------------------------------

void run_table(const GlobalOpts& opts, int max_n, std::ostream& out) {
    const auto table = acredit::rounded_share_table(max_n, opts.precision);
    if (opts.format == "plain") {
        for (size_t n = 0; n < table.rows.size(); ++n) {
            out << (n + 1);
            for (double share : table.rows[n]) out << ' ' << fixed(share, table.decimals);
            out << '\n';
        }
    } else if (opts.format == "csv") {
        out << "n,position,share\n";
        for (size_t n = 0; n < table.rows.size(); ++n) {
            for (size_t k = 0; k < table.rows[n].size(); ++k) {
                out << (n + 1) << ',' << (k + 1) << ',' << fixed(table.rows[n][k], table.decimals)
                    << '\n';
            }
        }
    } else {
        ordered_json doc;
        doc["decimals"] = table.decimals;
        doc["rows"] = table.rows;
        out << doc.dump() << '\n';
    }
}

// ---- compare --------------------------------------------------------------

void run_compare(const GlobalOpts& opts, int n, std::ostream& out) {
    const auto cmp = acredit::compare_schemes(n);
    if (opts.format == "json") {
        ordered_json doc = ordered_json::array();
        auto emit = [&](const char* scheme, const std::vector<double>& shares) {
            for (size_t k = 0; k < shares.size(); ++k) {
                doc.push_back({{"scheme", scheme}, {"position", k + 1}, {"share", shares[k]}});
            }
        };
        emit("fractional", cmp.fractional);
        emit("harmonic", cmp.harmonic);
        emit("axiomatic", cmp.axiomatic);
        out << doc.dump() << '\n';
        return;
    }
    // Plain/CSV mirror the printed table: the axiomatic column carries the
    // residual-adjusted rounding so rows match the reference values.
    const auto table = acredit::rounded_share_table(n, opts.precision);
    const auto& axiomatic = table.rows.back();
    const char sep = opts.format == "csv" ? ',' : ' ';
    out << "scheme" << sep << "position" << sep << "share\n";
    auto emit = [&](const char* scheme, const std::vector<double>& shares) {
        for (size_t k = 0; k < shares.size(); ++k) {
            out << scheme << sep << (k + 1) << sep << fixed(shares[k], opts.precision) << '\n';
        }
    };
    emit("fractional", cmp.fractional);
    emit("harmonic", cmp.harmonic);
    emit("axiomatic", axiomatic);
}

// ---- sample ---------------------------------------------------------------

void run_sample(const GlobalOpts& opts, const std::string& code_text, std::uint64_t samples,
                unsigned workers, std::ostream& out) {
    const auto groups = acredit::group_structure(acredit::parse_ranking_code(code_text));
    acredit::SampleConfig config{groups, samples, opts.seed, workers};
    const auto est = acredit::estimate_moments(config);
    const auto closed = acredit::credit_stddev(groups);

    std::vector<double> dev(est.mean.size());
    for (size_t k = 0; k < est.mean.size(); ++k) {
        dev[k] = deviation_se(est.mean[k], closed.mean[k], est.standard_error[k]);
    }

    if (opts.format == "json") {
        ordered_json doc;
        doc["counts"] = groups.counts;
        doc["samples"] = est.num_samples;
        doc["seed"] = opts.seed;
        doc["mean"] = est.mean;
        doc["closed_mean"] = closed.mean;
        doc["stddev"] = est.stddev;
        doc["closed_stddev"] = closed.stddev;
        doc["standard_error"] = est.standard_error;
        doc["deviation_se"] = dev;
        out << doc.dump() << '\n';
        return;
    }
    const bool csv = opts.format == "csv";
    if (!csv) out << "samples " << est.num_samples << " seed " << opts.seed << '\n';
    const char sep = csv ? ',' : ' ';
    out << "group" << sep << "mean" << sep << "closed_mean" << sep << "deviation_se" << sep
        << "stddev" << sep << "closed_stddev" << sep << "standard_error\n";
    for (size_t k = 0; k < est.mean.size(); ++k) {
        char dev_buf[32];
        std::snprintf(dev_buf, sizeof dev_buf, "%.2f", dev[k]);
        out << (k + 1) << sep << fixed(est.mean[k], opts.precision) << sep
            << fixed(closed.mean[k], opts.precision) << sep << dev_buf << sep
            << fixed(est.stddev[k], opts.precision) << sep
            << fixed(closed.stddev[k], opts.precision) << sep << general(est.standard_error[k])
            << '\n';
    }
}

// ---- volume ---------------------------------------------------------------

void run_volume(const GlobalOpts& opts, const std::string& code_text, std::uint64_t samples,
                unsigned workers, std::ostream& out) {
    const auto groups = acredit::group_structure(acredit::parse_ranking_code(code_text));
    const double closed = acredit::polytope_volume_closed_form(groups);
    const auto est = acredit::estimate_volume(groups, samples, opts.seed, workers);
    const double dev = deviation_se(est.estimate, closed, est.standard_error);

    if (opts.format == "json") {
        ordered_json doc;
        doc["counts"] = groups.counts;
        doc["samples"] = est.num_samples;
        doc["seed"] = opts.seed;
        doc["closed_form"] = closed;
        doc["estimate"] = est.estimate;
        doc["standard_error"] = est.standard_error;
        doc["deviation_se"] = dev;
        doc["accepted"] = est.accepted;
        out << doc.dump() << '\n';
        return;
    }
    char dev_buf[32];
    std::snprintf(dev_buf, sizeof dev_buf, "%.2f", dev);
    if (opts.format == "csv") {
        out << "closed_form,estimate,standard_error,deviation_se,samples,accepted\n";
        out << fixed(closed, 6) << ',' << fixed(est.estimate, 6) << ','
            << general(est.standard_error) << ',' << dev_buf << ',' << est.num_samples << ','
            << est.accepted << '\n';
        return;
    }
    out << "closed_form " << fixed(closed, 6) << '\n';
    out << "estimate " << fixed(est.estimate, 6) << '\n';
    out << "standard_error " << general(est.standard_error) << '\n';
    out << "deviation_se " << dev_buf << '\n';
    out << "samples " << est.num_samples << '\n';
    out << "accepted " << est.accepted << '\n';
}

// ---- aggregate ------------------------------------------------------------

acredit::RecordFormat pick_input_format(const std::string& flag, const std::string& path) {
    if (flag == "csv") return acredit::RecordFormat::Csv;
    if (flag == "json") return acredit::RecordFormat::Json;
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        return acredit::RecordFormat::Json;
    }
    return acredit::RecordFormat::Csv;
}

void print_report_plain(const std::vector<acredit::AuthorReport>& report, std::ostream& out) {
    size_t width = std::string("author").size();
    for (const auto& row : report) width = std::max(width, row.author.size());
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-*s %8s %12s %12s %12s %12s %12s %12s\n",
                  static_cast<int>(width), "author", "inflated", "fractional", "fract_wtd",
                  "harmonic", "harm_wtd", "axiomatic", "axio_wtd");
    out << buf;
    for (const auto& row : report) {
        std::snprintf(buf, sizeof buf, "%-*s %8lld %12.6f %12.6f %12.6f %12.6f %12.6f %12.6f\n",
                      static_cast<int>(width), row.author.c_str(),
                      static_cast<long long>(row.inflated), row.fractional,
                      row.fractional_weighted, row.harmonic, row.harmonic_weighted, row.axiomatic,
                      row.axiomatic_weighted);
        out << buf;
    }
}

void run_aggregate(const GlobalOpts& opts, const std::string& input,
                   const std::string& input_format, const std::string& output) {
    const auto format = pick_input_format(input_format, input);
    std::vector<acredit::PublicationRecord> records;
    if (input == "-") {
        records = acredit::load_publications(std::cin, format);
    } else {
        records = acredit::load_publications_file(input, format);
    }
    const auto report = acredit::author_credit_report(records);

    std::ofstream file;
    if (output != "-") {
        file.open(output);
        if (!file) throw acredit::InputError("cannot open output file: " + output);
    }
    std::ostream& out = output == "-" ? std::cout : file;
    if (opts.format == "plain") {
        print_report_plain(report, out);
        if (!out) throw acredit::InputError("failed to write report");
    } else {
        const auto out_format =
            opts.format == "csv" ? acredit::RecordFormat::Csv : acredit::RecordFormat::Json;
        acredit::write_report(report, out_format, out);
    }
}

bool blank(const std::string& line) {
    for (char ch : line) {
        if (ch != ' ' && ch != '\t' && ch != '\r') return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Co-author credit shares: axiomatic (a-index), harmonic and fractional\n"
                 "schemes, Monte-Carlo verification and batch aggregation."};
    app.require_subcommand(1);

    GlobalOpts opts;
    app.add_option("--format", opts.format, "Output format: plain, csv or json")
        ->check(CLI::IsMember({"plain", "csv", "json"}));
    app.add_option("--seed", opts.seed, "RNG seed for sample/volume (default 42)");
    app.add_option("--precision", opts.precision, "Fixed-point decimals for plain/csv output")
        ->check(CLI::Range(1, 12));

    std::string credit_code;
    bool credit_with_stddev = false;
    auto* credit_cmd =
        app.add_subcommand("credit", "Per-author credit shares for a ranking code");
    credit_cmd->fallthrough();
    credit_cmd->add_option("--code", credit_code,
                           "Ranking code, e.g. \"1,2,3,3,2\"; omit to read one code per stdin "
                           "line (batch mode)");
    credit_cmd->add_flag("--stddev", credit_with_stddev,
                         "Append per-group standard deviations");

    int table_max_n = 10;
    auto* table_cmd = app.add_subcommand(
        "table", "Rounded a-index table for 1..max-n all-distinct co-authors");
    table_cmd->fallthrough();
    table_cmd->add_option("--max-n", table_max_n, "Largest author count (default 10)");

    int compare_n = 5;
    auto* compare_cmd = app.add_subcommand(
        "compare", "Fractional, harmonic and axiomatic shares side by side");
    compare_cmd->fallthrough();
    compare_cmd->add_option("--n", compare_n, "Number of co-authors (default 5)");

    std::string sample_code;
    std::uint64_t sample_count = 100000;
    unsigned sample_workers = 1;
    auto* sample_cmd = app.add_subcommand(
        "sample", "Monte-Carlo check of the closed-form moments by uniform sampling");
    sample_cmd->fallthrough();
    sample_cmd->add_option("--code", sample_code, "Ranking code")->required();
    sample_cmd->add_option("--samples", sample_count, "Number of draws (default 100000)");
    sample_cmd->add_option("--workers", sample_workers, "Worker threads; does not affect results")
        ->check(CLI::Range(1, 256));

    std::string volume_code;
    std::uint64_t volume_count = 100000;
    unsigned volume_workers = 1;
    auto* volume_cmd = app.add_subcommand(
        "volume", "Rejection estimate of the credit polytope volume vs the closed form");
    volume_cmd->fallthrough();
    volume_cmd->add_option("--code", volume_code, "Ranking code (needs at least two tiers)")
        ->required();
    volume_cmd->add_option("--samples", volume_count, "Number of trials (default 100000)");
    volume_cmd->add_option("--workers", volume_workers, "Worker threads; does not affect results")
        ->check(CLI::Range(1, 256));

    std::string agg_input;
    std::string agg_input_format = "auto";
    std::string agg_output = "-";
    auto* aggregate_cmd = app.add_subcommand(
        "aggregate", "Per-author credit totals across a publication record file");
    aggregate_cmd->fallthrough();
    aggregate_cmd->add_option("--input", agg_input, "Record file, or '-' for stdin")->required();
    aggregate_cmd
        ->add_option("--input-format", agg_input_format,
                     "Input format (default: by file extension, else csv)")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
    aggregate_cmd->add_option("--output", agg_output, "Output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*credit_cmd) {
            std::vector<std::string> codes;
            if (!credit_code.empty()) {
                codes.push_back(credit_code);
            } else {
                std::string line;
                while (std::getline(std::cin, line)) {
                    if (!blank(line)) codes.push_back(line);
                }
                if (codes.empty()) {
                    throw acredit::InputError(
                        "no ranking code: pass --code or one code per stdin line");
                }
            }
            run_credit(opts, codes, credit_with_stddev, std::cout);
        } else if (*table_cmd) {
            run_table(opts, table_max_n, std::cout);
        } else if (*compare_cmd) {
            run_compare(opts, compare_n, std::cout);
        } else if (*sample_cmd) {
            run_sample(opts, sample_code, sample_count, sample_workers, std::cout);
        } else if (*volume_cmd) {
            run_volume(opts, volume_code, volume_count, volume_workers, std::cout);
        } else if (*aggregate_cmd) {
            run_aggregate(opts, agg_input, agg_input_format, agg_output);
        }
        std::cout.flush();
        return 0;
    } catch (const acredit::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
