#include "doctest.h"

#include "cli.hpp"

#include "json.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "pscat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = pscat::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(PSCAT_DATA_DIR) + "/functions/" + name; }

}  // namespace

TEST_CASE("cli: gamma table for p = 3") {
    Run r = run({"gamma", "--p", "3", "--max-conductor", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["field"]["q"] == 3);
    CHECK(j["gamma"].size() == 6);  // phi(3^2) characters
    for (const auto& row : j["gamma"])
        if (row.contains("unimodular")) CHECK(row["unimodular"] == true);
}

TEST_CASE("cli: Weil term of the sphere |t| = q") {
    Run r = run({"weil", "--p", "2", "--function", data("unit-sphere-q.json")});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["identity_holds"] == true);
    CHECK(j["embedded"].get<double>() == doctest::Approx(-std::log(2.0) / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("cli: trace and connes reports") {
    Run t = run({"trace", "--p", "3", "--delta", "0", "--function", data("quadratic-mod-3.json")});
    REQUIRE(t.code == 0);
    CHECK(nlohmann::json::parse(t.out)["identity_holds"] == true);
    Run c = run({"connes", "--p", "2", "--n", "1", "--function", data("units.json"), "--oracle", "--grid-level", "3"});
    REQUIRE(c.code == 0);
    auto j = nlohmann::json::parse(c.out);
    CHECK(j["all_agree"] == true);
    CHECK(j["spectral_trace"]["embedded"].get<double>() == doctest::Approx(3 * std::log(2.0)));
    Run s = run({"supertrace", "--p", "2", "--function", data("units.json")});
    CHECK(s.code == 0);
    // An incoming function does not vanish near 0, so it has no multiplicative form.
    Run bad = run({"supertrace", "--p", "2", "--function", data("incoming-p2.json")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("vanishing near 0") != std::string::npos);
}

TEST_CASE("cli: spectral samples") {
    Run r = run({"spectral-sample", "--p", "2", "--multiplier", "T", "--max-conductor", "0", "--samples", "4"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "chi_id,theta,re,im");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 4);
    Run f = run({"spectral-sample", "--p", "2", "--function", data("incoming-p2.json"), "--samples", "8"});
    CHECK(f.code == 0);
}

TEST_CASE("cli: usage errors exit with 2") {
    CHECK(run({"gamma", "--bogus"}).code == 2);
    CHECK(run({"gamma", "--p", "4"}).code == 2);
    CHECK(run({"verify", "--suite", "nonexistent"}).code == 2);
    CHECK(run({"weil", "--p", "2", "--function", "/nonexistent.json"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("cli: verify is deterministic for a seed") {
    Run a = run({"verify", "--suite", "kernel-lemma", "--seed", "7"});
    Run b = run({"verify", "--suite", "kernel-lemma", "--seed", "7"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("all suites passed") != std::string::npos);
}
