#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support/subprocess.hpp"

using test_support::run_command;
using test_support::TempFile;

namespace {

std::string cli() {
    const char* path = test_support::cli_path_or_null();
    REQUIRE_MESSAGE(path != nullptr, "set ACREDIT_BIN to the acredit binary path");
    return std::string("'") + path + "'";
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("credit: plain shares match the reference code") {
    const auto result = run_command(cli() + " credit --code '1,2,3,3,2'");
    CHECK(result.exit_code == 0);
    CHECK(result.output == "0.5111 0.1778 0.0667 0.0667 0.1778\n");
}

TEST_CASE("credit: sole author") {
    const auto result = run_command(cli() + " credit --code 1");
    CHECK(result.exit_code == 0);
    CHECK(result.output == "1.0000\n");
}

TEST_CASE("credit: stddev column") {
    const auto result = run_command(cli() + " credit --code '1,1,2' --stddev");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "0.4167 0.4167 0.1667");
    CHECK(lines[1].find("group 1: share 0.4167 stddev") == 0);
    CHECK(lines[2].find("group 2: share 0.1667 stddev") == 0);
}

TEST_CASE("credit: json schema") {
    const auto result =
        run_command(cli() + " credit --code '1,2' --stddev --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["ranks"] == nlohmann::json::array({1, 2}));
    CHECK(doc[0]["counts"] == nlohmann::json::array({1, 1}));
    CHECK(doc[0]["per_author"][0].get<double>() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(doc[0]["stddev"].size() == 2);
}

TEST_CASE("credit: invalid codes exit 2 with a diagnostic") {
    const auto result = run_command(cli() + " credit --code '1,3' 2>&1");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("missing rank 2") != std::string::npos);
}

TEST_CASE("credit: stdin batch mode") {
    const auto result =
        run_command(std::string("printf '1,2\\n1,1\\n' | ") + cli() + " credit");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "0.7500 0.2500");
    CHECK(lines[1] == "0.5000 0.5000");
}

TEST_CASE("credit: empty stdin exits 2") {
    const auto result = run_command(std::string("printf '' | ") + cli() + " credit 2>&1");
    CHECK(result.exit_code == 2);
}

TEST_CASE("table: first rows and the adjusted entries") {
    const auto result = run_command(cli() + " table --max-n 10");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() == 10);
    CHECK(lines[0] == "1 1.0000");
    CHECK(lines[1] == "2 0.7500 0.2500");
    CHECK(lines[2] == "3 0.6111 0.2778 0.1111");
    CHECK(lines[3] == "4 0.5209 0.2708 0.1458 0.0625");
    CHECK(lines[6].substr(lines[6].size() - 6) == "0.0204");
}

TEST_CASE("table: json rows carry the adjusted values") {
    const auto result = run_command(cli() + " table --max-n 4 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["decimals"] == 4);
    CHECK(doc["rows"][3][0].get<double>() == doctest::Approx(0.5209).epsilon(1e-12));
}

TEST_CASE("compare: plain mirrors the printed table") {
    const auto result = run_command(cli() + " compare --n 5");
    CHECK(result.exit_code == 0);
    const auto lines = lines_of(result.output);
    REQUIRE(lines.size() == 16);
    CHECK(lines[0] == "scheme position share");
    CHECK(lines[1] == "fractional 1 0.2000");
    CHECK(lines[5] == "fractional 5 0.2000");
    CHECK(lines[11] == "axiomatic 1 0.4566");
    CHECK(lines[15] == "axiomatic 5 0.0400");
}

TEST_CASE("compare: harmonic for two authors") {
    const auto result = run_command(cli() + " compare --n 2");
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("harmonic 1 0.6667") != std::string::npos);
    CHECK(result.output.find("harmonic 2 0.3333") != std::string::npos);
}

TEST_CASE("sample: one draw is a valid vector") {
    const auto result =
        run_command(cli() + " sample --code '1,2' --samples 1 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["samples"] == 1);
    const double x1 = doc["mean"][0].get<double>();
    const double x2 = doc["mean"][1].get<double>();
    CHECK(x1 >= x2);
    CHECK(x2 >= 0.0);
    CHECK(std::abs(x1 + x2 - 1.0) <= 1e-12);
}

TEST_CASE("sample: closed-form agreement at scale") {
    const auto result =
        run_command(cli() + " sample --code '1,2,3' --samples 200000 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    for (const auto& dev : doc["deviation_se"]) {
        CHECK(std::abs(dev.get<double>()) <= 5.0);
    }
}

TEST_CASE("sample: single-tier code is a point") {
    const auto result =
        run_command(cli() + " sample --code '1,1' --samples 100 --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["mean"][0].get<double>() == 0.5);
    CHECK(doc["stddev"][0].get<double>() <= 1e-9);
    CHECK(doc["closed_stddev"][0].get<double>() == 0.0);
}

TEST_CASE("sample: identical flags reproduce identical output") {
    const std::string cmd = cli() + " sample --code '1,2,2' --samples 30000 --format json";
    const auto first = run_command(cmd);
    const auto second = run_command(cmd);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);
    const auto reseeded = run_command(cmd + " --seed 43");
    CHECK(reseeded.output != first.output);
}

TEST_CASE("volume: two tiers") {
    const auto result = run_command(cli() + " volume --code '1,2' --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    CHECK(doc["closed_form"].get<double>() == 0.5);
    CHECK(doc["estimate"].get<double>() == 0.5);
}

TEST_CASE("volume: single tier exits 2") {
    const auto result = run_command(cli() + " volume --code 1 2>&1");
    CHECK(result.exit_code == 2);
}

TEST_CASE("aggregate: fixture through the full pipeline") {
    const TempFile input(
        "pub_id,authors,ranking_code,weight\n"
        "p1,A;B,1;2,10\n"
        "p2,C;A;D,1;2;3,4\n",
        ".csv");
    const auto result =
        run_command(cli() + " aggregate --input '" + input.path() + "' --format json");
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.output);
    REQUIRE(doc.size() == 4);
    CHECK(doc[0]["author"] == "A");
    CHECK(std::abs(doc[0]["axiomatic_weighted"].get<double>() - 8.611) <= 1e-3);
}

TEST_CASE("aggregate: csv output starts with the schema header") {
    const TempFile input(
        "pub_id,authors,ranking_code\n"
        "p1,X,1\n",
        ".csv");
    const auto result =
        run_command(cli() + " aggregate --input '" + input.path() + "' --format csv");
    CHECK(result.exit_code == 0);
    CHECK(lines_of(result.output)[0] ==
          "author,inflated,fractional,fractional_weighted,harmonic,harmonic_weighted,"
          "axiomatic,axiomatic_weighted");
}

TEST_CASE("aggregate: empty json array yields an empty report") {
    const TempFile input("[]", ".json");
    const auto result =
        run_command(cli() + " aggregate --input '" + input.path() + "' --format json");
    CHECK(result.exit_code == 0);
    CHECK(nlohmann::json::parse(result.output).empty());
}

TEST_CASE("aggregate: malformed rows exit 2 with line numbers") {
    const TempFile input(
        "pub_id,authors,ranking_code,weight\n"
        "p1,A;B,1,1\n",
        ".csv");
    const auto result =
        run_command(cli() + " aggregate --input '" + input.path() + "' 2>&1");
    CHECK(result.exit_code == 2);
    CHECK(result.output.find("line 2") != std::string::npos);
}

TEST_CASE("aggregate: missing input file exits 2") {
    const auto result = run_command(cli() + " aggregate --input /no/such/file.csv 2>&1");
    CHECK(result.exit_code == 2);
}

TEST_CASE("cli: bad flags exit 2, help exits 0") {
    CHECK(run_command(cli() + " nonsense 2>&1").exit_code == 2);
    CHECK(run_command(cli() + " credit --bogus 2>&1").exit_code == 2);
    const auto help = run_command(cli() + " --help");
    CHECK(help.exit_code == 0);
    CHECK(help.output.find("credit") != std::string::npos);
    CHECK(help.output.find("aggregate") != std::string::npos);
}
