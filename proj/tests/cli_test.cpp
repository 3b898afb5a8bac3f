#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "test_util.hpp"
#include "wzeta/cli.hpp"

using namespace wzeta;
using namespace wzeta::cli;
using testutil::TempDir;
namespace fs = std::filesystem;

namespace {

JobConfig test_config(const TempDir& dir, int truncation) {
    JobConfig config;
    config.truncation = truncation;
    config.cache_dir = dir.path / "cache";
    config.jobs = 2;
    return config;
}

}  // namespace

TEST_CASE("prime range parsing") {
    CHECK(parse_prime_range("5..100") == std::pair<long, long>{5, 100});
    CHECK(parse_prime_range("7") == std::pair<long, long>{7, 7});
    CHECK_THROWS_AS(parse_prime_range("10..5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_prime_range("1..5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_prime_range("a..b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_prime_range(""), std::invalid_argument);
}

TEST_CASE("basis cache round trip") {
    TempDir dir;
    auto config = test_config(dir, 5);
    std::ostringstream diag;
    auto first = obtain_basis(config, diag);
    auto cache_file = config.cache_dir / "basis_n5_k1.json";
    CHECK(fs::exists(cache_file));
    auto second = obtain_basis(config, diag);
    CHECK(first == second);

    // a clobbered cache is rebuilt rather than trusted
    {
        std::ofstream os(cache_file);
        os << "{broken";
    }
    auto third = obtain_basis(config, diag);
    CHECK(third == first);
    CHECK(diag.str().find("ignoring unusable cache") != std::string::npos);

    config.no_cache = true;
    fs::remove_all(config.cache_dir);
    auto fourth = obtain_basis(config, diag);
    CHECK(fourth == first);
    CHECK(!fs::exists(cache_file));
}

TEST_CASE("essentials command") {
    TempDir dir;
    auto config = test_config(dir, 7);
    std::ostringstream out, err;
    CHECK(cmd_essentials(config, out, err) == kExitOk);
    CHECK(out.str() == "[2,1] [4,1] [4,1,1]\n");

    config.truncation = 2;
    std::ostringstream out2;
    CHECK(cmd_essentials(config, out2, err) == kExitOk);
    CHECK(out2.str() == "none\n");

    config.truncation = 1;
    CHECK_THROWS_AS(cmd_essentials(config, out, err), std::invalid_argument);
    config.truncation = 20;
    CHECK_THROWS_AS(cmd_essentials(config, out, err), std::invalid_argument);

    config.truncation = 7;
    config.format = "json";
    std::ostringstream out3;
    CHECK(cmd_essentials(config, out3, err) == kExitOk);
    auto j = nlohmann::json::parse(out3.str());
    CHECK(j.at("essential") == nlohmann::json({"[2,1]", "[4,1]", "[4,1,1]"}));
}

TEST_CASE("reduce command writes verifiable congruences") {
    TempDir dir;
    auto config = test_config(dir, 7);
    auto element = dir.write("element.txt", "1 z[1]   # extend the classical congruence\n");
    config.out = dir.path / "congruence.json";
    std::ostringstream out, err;
    CHECK(cmd_reduce(config, element, out, err) == kExitOk);
    CHECK(out.str().find("-1/3 z[2,1] + 1/6 z[4,1] + 1/9 z[4,1,1]") != std::string::npos);
    CHECK(out.str().find("H(1) + 1/3 p^2 H(2,1) - 1/6 p^4 H(4,1) - 1/9 p^5 H(4,1,1)") !=
          std::string::npos);
    CHECK(fs::exists(config.out));
    CHECK(fs::exists(dir.path / "congruence.phi.json"));

    // verify the emitted statement over a small range
    JobConfig vconfig = config;
    vconfig.prime_lo = 5;
    vconfig.prime_hi = 50;
    std::ostringstream vout;
    CHECK(cmd_verify(vconfig, config.out, vout, err) == kExitOk);
    CHECK(vout.str().find("all passed") != std::string::npos);
}

TEST_CASE("reduce command surfaces parse errors with positions") {
    TempDir dir;
    auto config = test_config(dir, 5);
    auto element = dir.write("bad.txt", "1 z[1] ++ 2");
    std::ostringstream out, err;
    CHECK_THROWS_WITH_AS(cmd_reduce(config, element, out, err), doctest::Contains("position"),
                         std::invalid_argument);
    CHECK_THROWS_AS(cmd_reduce(config, dir.path / "missing.txt", out, err), std::runtime_error);
}

TEST_CASE("reduce-verify round trip for low-weight words") {
    TempDir dir;
    for (int n : {4, 5, 6}) {
        auto config = test_config(dir, n);
        auto basis = obtain_basis(config, std::cerr);
        for (const auto& s : compositions_below(4)) {
            if (s.empty()) continue;
            auto statement = basis.congruence_for(TruncatedSeries::basis(s, n));
            if (statement.is_zero()) continue;
            auto report = verify_congruence(statement, 5, 50, config.verify_options());
            CHECK(report.all_passed());
        }
    }
}

TEST_CASE("discover command") {
    TempDir dir;
    auto config = test_config(dir, 5);
    auto unparsable = dir.write("bad.txt", "1 z[1]\nnonsense\n");
    std::ostringstream out, err;
    CHECK_THROWS_WITH_AS(cmd_discover(config, unparsable, out, err),
                         doctest::Contains("line 2"), std::invalid_argument);

    auto duplicates = dir.write("dup.txt", "# the same element twice\n1 z[1]\n1 z[1]\n");
    config.out = dir.path / "relation";
    std::ostringstream out2;
    CHECK(cmd_discover(config, duplicates, out2, err) == kExitOk);
    CHECK(out2.str().find("(1, -1)") != std::string::npos);
    CHECK(fs::exists(dir.path / "relation.1.json"));

    auto single = dir.write("single.txt", "1 z[2,1]\n");
    config.truncation = 7;
    config.out.clear();
    std::ostringstream out3;
    CHECK(cmd_discover(config, single, out3, err) == kExitOk);
    CHECK(out3.str() == "no relations found\n");
}

TEST_CASE("verify command exit codes") {
    TempDir dir;
    auto config = test_config(dir, 3);
    nlohmann::json wolst{{"modulus_exponent", 3},
                         {"truncation", 3},
                         {"terms", {{{"composition", {1}}, {"coefficient", "1"}}}}};
    auto statement = dir.write("wolst.json", wolst.dump());

    config.prime_lo = 5;
    config.prime_hi = 60;
    std::ostringstream out, err;
    CHECK(cmd_verify(config, statement, out, err) == kExitOk);

    config.prime_lo = config.prime_hi = 3;
    std::ostringstream out2;
    CHECK(cmd_verify(config, statement, out2, err) == kExitVerifyFailed);

    auto invalid = dir.write("invalid.json", "{\"modulus_exponent\": 3}");
    CHECK_THROWS_AS(cmd_verify(config, invalid, out, err), std::invalid_argument);
    auto broken = dir.write("broken.json", "{{{");
    CHECK_THROWS_AS(cmd_verify(config, broken, out, err), std::runtime_error);

    config.format = "json";
    config.prime_lo = 5;
    config.prime_hi = 20;
    std::ostringstream out3;
    CHECK(cmd_verify(config, statement, out3, err) == kExitOk);
    CHECK(nlohmann::json::parse(out3.str()).at("passed") == true);
}

TEST_CASE("matrix command") {
    TempDir dir;
    auto config = test_config(dir, 3);
    std::ostringstream out, err;
    CHECK(cmd_matrix(config, out, err) == kExitOk);
    CHECK(out.str().substr(0, 16) == "s1|s2|i,1,1-1,2\n");

    config.out = dir.path / "m3.csv";
    std::ostringstream out2;
    CHECK(cmd_matrix(config, out2, err) == kExitOk);
    std::ifstream is(config.out);
    std::stringstream file;
    file << is.rdbuf();
    CHECK(file.str() == out.str());
}

TEST_CASE("special command wrappers") {
    TempDir dir;
    auto config = test_config(dir, 3);
    config.prime_lo = 2;
    config.prime_hi = 30;
    std::ostringstream out, err;
    CHECK(cmd_special_reversal(config, "[2,1]", 1, out, err) == kExitOk);

    config.prime_lo = 5;
    CHECK(cmd_special_ones(config, 4, out, err) == kExitOk);
    CHECK(cmd_special_binom(config, 2, 1, 3, out, err) == kExitOk);
    CHECK(cmd_special_zetap(config, 2, 7, 6, out, err) == kExitOk);

    config.format = "json";
    std::ostringstream zout;
    CHECK(cmd_special_zetap(config, 2, 11, 6, zout, err) == kExitOk);
    auto j = nlohmann::json::parse(zout.str());
    CHECK(j.at("certified_exponent") == 6);
    CHECK(j.at("passed") == true);
}
