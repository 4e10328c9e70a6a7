#include <catch2/catch_amalgamated.hpp>

#include "cli.hpp"
#include "roughcpd/series_io.hpp"
#include "roughcpd/simharness.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

using namespace roughcpd;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string series_file() {
    const auto dir = std::filesystem::temp_directory_path() / "roughcpd_cli_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / "two_step.csv";
    NormalGenerator g(1);
    std::vector<double> y(1000);
    for (std::size_t t = 1; t <= 1000; ++t) y[t - 1] = (t > 300 && t <= 700 ? 2.0 : 0.0) + g.normal();
    write_csv(TimeSeries::univariate(y), path);
    return path.string();
}

}  // namespace

TEST_CASE("detect subcommand", "[cli]") {
    const auto input = series_file();
    const auto r = invoke({"detect", "--input", input, "--measure", "ks", "--delta", "50", "--big-delta", "10", "--w", "10"});
    REQUIRE(r.code == 0);
    const auto report = parse_report(r.out);
    REQUIRE(report.measure_name == "ks");
    REQUIRE_FALSE(report.candidates.empty());

    SECTION("identical invocations give identical bytes") {
        const auto again = invoke({"detect", "--input", input, "--measure", "ks", "--delta", "50", "--big-delta", "10", "--w", "10"});
        REQUIRE(again.out == r.out);
    }
    SECTION("csv format and output file") {
        const auto path = (std::filesystem::temp_directory_path() / "roughcpd_cli_tests" / "report.csv").string();
        const auto c = invoke({"detect", "--input", input, "--big-delta", "10", "--w", "10", "--format", "csv", "--output", path});
        REQUIRE(c.code == 0);
        REQUIRE(c.out.empty());
        REQUIRE(std::filesystem::file_size(path) > 0);
    }
    SECTION("a-delta override is stored verbatim") {
        const auto c = invoke({"detect", "--input", input, "--big-delta", "10", "--w", "10", "--a-delta", "2.5"});
        REQUIRE(c.code == 0);
        REQUIRE(parse_report(c.out).normalizer == 2.5);
    }
}

TEST_CASE("usage and runtime errors", "[cli]") {
    const auto missing = invoke({"detect", "--big-delta", "10", "--w", "10"});
    REQUIRE(missing.code == 2);
    REQUIRE_THAT(missing.err, Catch::Matchers::ContainsSubstring("--input"));
    REQUIRE_THAT(missing.err, Catch::Matchers::ContainsSubstring("Usage"));

    REQUIRE(invoke({}).code == 2);
    REQUIRE(invoke({"detect", "--bogus"}).code == 2);
    REQUIRE(invoke({"detect", "--input", "x.csv", "--w", "10"}).code == 2);
    REQUIRE(invoke({"detect", "--input", series_file(), "--big-delta", "10", "--w", "10", "--measure", "adf"}).code == 2);
    REQUIRE(invoke({"detect", "--input", series_file(), "--big-delta", "10", "--w", "300"}).code == 2);
    REQUIRE(invoke({"approx-dump", "--s", "5", "--big-delta", "2", "--w", "2"}).code == 2);

    const auto absent = invoke({"detect", "--input", "/nonexistent/none.csv", "--big-delta", "10", "--w", "10"});
    REQUIRE(absent.code == 1);
    REQUIRE_THAT(absent.err, Catch::Matchers::ContainsSubstring("cannot open"));

    REQUIRE(invoke({"--help"}).code == 0);
}

TEST_CASE("simulate subcommand", "[cli]") {
    const auto r = invoke({"simulate", "--scenario", "s2", "--replicates", "4", "--seed", "7"});
    REQUIRE(r.code == 0);
    REQUIRE(r.out.rfind("scenario,measure,w,big_delta,delta_reg,jump,fuzziness,snr,replicates,proposed_rmse,base_rmse", 0) == 0);
    REQUIRE(std::count(r.out.begin(), r.out.end(), '\n') == 2);
    REQUIRE(invoke({"simulate", "--scenario", "s2", "--replicates", "4", "--seed", "7"}).out == r.out);

    const auto sweep = invoke({"simulate", "--scenario", "s2", "--replicates", "2", "--sweep-jumps", "1,2,4"});
    REQUIRE(sweep.code == 0);
    REQUIRE(std::count(sweep.out.begin(), sweep.out.end(), '\n') == 4);

    const auto grid = invoke({"simulate", "--scenario", "s3", "--replicates", "2", "--grid", "--w-values", "10,20",
                              "--delta-values", "10,20,30"});
    REQUIRE(grid.code == 0);
    REQUIRE(grid.out.rfind("w,big_delta,rmse\n", 0) == 0);
    REQUIRE(std::count(grid.out.begin(), grid.out.end(), '\n') == 7);
    REQUIRE(invoke({"simulate", "--grid"}).code == 2);
}

TEST_CASE("dump subcommands", "[cli]") {
    const auto a = invoke({"approx-dump", "--s", "50", "--big-delta", "5", "--w", "5", "--length", "100"});
    REQUIRE(a.code == 0);
    REQUIRE(a.out.rfind("t,lower_gamma,upper_gamma,lower_gamma_c,upper_gamma_c\n1,1,1,0,0\n", 0) == 0);
    REQUIRE(std::count(a.out.begin(), a.out.end(), '\n') == 101);

    const auto e = invoke({"entropy-dump", "--input", series_file(), "--big-delta", "10", "--w", "10"});
    REQUIRE(e.code == 0);
    REQUIRE(e.out.rfind("s,entropy\n1,", 0) == 0);
    REQUIRE(std::count(e.out.begin(), e.out.end(), '\n') == 1001);
}
