// End-to-end checks of the installed command-line surface. The binary path
// arrives via the PRINEIG_CLI environment variable set by CTest.
#include <doctest.h>

#include <sys/wait.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "prineig/panel_io.hpp"
#include "prineig/rng.hpp"
#include "prineig/simulation.hpp"
#include "prineig/two_sample.hpp"

using nlohmann::json;
using namespace prineig;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::filesystem::path work_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "prineig_cli_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string cli_path() {
    const char* path = std::getenv("PRINEIG_CLI");
    REQUIRE_MESSAGE(path != nullptr, "PRINEIG_CLI must point at the built binary");
    return path;
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream file(path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const auto out_path = work_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const auto err_path = work_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string command =
        cli_path() + " " + args + " >" + out_path.string() + " 2>" + err_path.string();
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

std::filesystem::path make_panel_csv(const std::string& name, DesignName design_name,
                                     int n, int t, std::uint64_t seed) {
    auto [design1, design2] = design_pair(DesignName::sigma1, DesignName::sigma2, n,
                                          std::nullopt, Innovation::student_t8, seed);
    const SimDesign& design = design_name == DesignName::sigma1 ? design1 : design2;
    const Population population = build_population(design);
    const PanelData panel = draw_panel(population.v, population.lambda, t,
                                       Innovation::student_t8, derive_seed(seed, 5));
    const auto path = work_dir() / name;
    write_panel_csv(panel, path.string());
    return path;
}

std::set<std::string> long_flags_in(const std::string& help) {
    std::set<std::string> flags;
    for (std::size_t pos = help.find("--"); pos != std::string::npos;
         pos = help.find("--", pos + 2)) {
        std::size_t end = pos + 2;
        while (end < help.size() &&
               (std::isalnum(static_cast<unsigned char>(help[end])) || help[end] == '-')) {
            ++end;
        }
        if (end > pos + 2) {
            flags.insert(help.substr(pos, end - pos));
        }
    }
    return flags;
}

}  // namespace

TEST_CASE("help coverage: every documented flag, no undocumented flags") {
    const std::vector<std::pair<std::string, std::set<std::string>>> expected = {
        {"simulate",
         {"--design", "--N", "--T1", "--T2", "--reps", "--level", "--rhat", "--k", "--theta",
          "--innovation", "--mc-draws", "--seed", "--threads", "--out", "--format", "--help"}},
        {"nulldist",
         {"--test", "--k", "--N", "--T1", "--T2", "--reps", "--rhat", "--innovation",
          "--mc-draws", "--seed", "--threads", "--out", "--format", "--help"}},
        {"test2",
         {"--file1", "--file2", "--r", "--levels", "--mc-draws", "--demean", "--no-demean",
          "--seed", "--threads", "--out", "--help"}},
        {"pipeline",
         {"--file", "--split", "--block-length", "--r", "--levels", "--mc-draws",
          "--min-period", "--demean", "--no-demean", "--seed", "--threads", "--out", "--format",
          "--help"}},
        {"ci",
         {"--file", "--k", "--level", "--target", "--r", "--k-max", "--demean", "--no-demean",
          "--out", "--help"}},
    };
    for (const auto& [name, flags] : expected) {
        const RunResult result = run_cli(name + " --help");
        CHECK(result.exit_code == 0);
        const std::set<std::string> seen = long_flags_in(result.out);
        for (const std::string& flag : flags) {
            CAPTURE(name);
            CAPTURE(flag);
            CHECK(seen.count(flag) == 1);
        }
        for (const std::string& flag : seen) {
            CAPTURE(name);
            CAPTURE(flag);
            CHECK(flags.count(flag) == 1);
        }
    }
}

TEST_CASE("simulate: deterministic output, validation errors") {
    const std::string args =
        "simulate --design size-lambda --N 24 --T1 30 --T2 36 --reps 8 --rhat 3 --k 1 "
        "--seed 7 --threads 2";
    const RunResult first = run_cli(args);
    REQUIRE(first.exit_code == 0);
    const RunResult second = run_cli(args);
    CHECK(first.out == second.out);

    const json root = json::parse(first.out);
    CHECK(root.at("schema_version") == 1);
    CHECK(root.at("config").at("seed") == 7);
    CHECK(root.at("config").contains("derived_seeds"));
    REQUIRE(root.at("cells").is_array());
    REQUIRE(root.at("cells").size() == 1);
    const auto& cell = root.at("cells").at(0);
    CHECK(cell.at("test") == "eigenvalue");
    CHECK(cell.at("rate").is_number());

    CHECK(run_cli("simulate --design size-lambda --N 24 --reps 0 --seed 1").exit_code == 2);
    CHECK(run_cli("simulate --design bogus --N 24 --seed 1").exit_code == 2);
    CHECK(run_cli("simulate --seed 1").exit_code == 2);  // --design is required
}

TEST_CASE("nulldist: draws with summary") {
    const RunResult result = run_cli(
        "nulldist --test lambda --k 1 --N 24 --T1 30 --T2 36 --reps 12 --seed 11");
    REQUIRE(result.exit_code == 0);
    const json root = json::parse(result.out);
    CHECK(root.at("draws").size() == 12);
    CHECK(root.at("summary").contains("ks"));
    CHECK(root.at("summary").at("failures") == 0);
}

TEST_CASE("test2: same file twice retains everything") {
    const auto path = make_panel_csv("same.csv", DesignName::sigma1, 20, 40, 21);
    const RunResult result = run_cli("test2 --file1 " + path.string() + " --file2 " +
                                     path.string() + " --r 3 --mc-draws 2000 --seed 5");
    REQUIRE(result.exit_code == 0);
    const json root = json::parse(result.out);
    REQUIRE(root.at("results").size() == 9);
    for (const auto& entry : root.at("results")) {
        if (entry.at("null_law") == "standard-normal") {
            CHECK(entry.at("statistic").get<double>() == 0.0);
        }
        CHECK(entry.at("p_value").get<double>() == doctest::Approx(1.0));
        CHECK(!entry.at("rejected").get<bool>());
    }
}

TEST_CASE("test2 matches the library battery with the same seed") {
    const auto path1 = make_panel_csv("lib_a.csv", DesignName::sigma1, 24, 48, 33);
    const auto path2 = make_panel_csv("lib_b.csv", DesignName::sigma2, 24, 36, 33);
    const RunResult result =
        run_cli("test2 --file1 " + path1.string() + " --file2 " + path2.string() +
                " --r 3 --mc-draws 5000 --seed 99");
    REQUIRE(result.exit_code == 0);
    const json root = json::parse(result.out);

    TwoSampleInput input = make_two_sample_input(read_panel_csv(path1.string(), true),
                                                 read_panel_csv(path2.string(), true), 3, false);
    const std::vector<TestResult> battery = run_battery(input, {0.05}, 5000, 99);
    REQUIRE(root.at("results").size() == battery.size());
    for (std::size_t i = 0; i < battery.size(); ++i) {
        const auto& entry = root.at("results").at(i);
        CHECK(entry.at("statistic").get<double>() == battery[i].statistic);
        CHECK(entry.at("p_value").get<double>() == battery[i].p_value);
    }
}

TEST_CASE("test2: missing file exits 2 and names the path") {
    const RunResult result =
        run_cli("test2 --file1 /no/such/file.csv --file2 /no/such/other.csv --seed 1");
    CHECK(result.exit_code == 2);
    CHECK(result.err.find("/no/such/file.csv") != std::string::npos);

    const auto path1 = make_panel_csv("dim_a.csv", DesignName::sigma1, 20, 40, 41);
    const auto path2 = make_panel_csv("dim_b.csv", DesignName::sigma1, 24, 40, 42);
    const RunResult mismatch = run_cli("test2 --file1 " + path1.string() + " --file2 " +
                                       path2.string() + " --r 2 --seed 1");
    CHECK(mismatch.exit_code == 2);
}

TEST_CASE("pipeline: two synthetic years, CSV row contract, determinism") {
    // One panel spanning two years written with a date column.
    auto [design1, design2] = design_pair(DesignName::sigma1, DesignName::sigma2, 12,
                                          std::nullopt, Innovation::student_t8, 77);
    (void)design2;
    const Population population = build_population(design1);
    const PanelData panel =
        draw_panel(population.v, population.lambda, 160, Innovation::student_t8, 3);
    std::vector<std::string> dates;
    for (int i = 0; i < 160; ++i) {
        char buffer[16];
        std::snprintf(buffer, sizeof(buffer), "%04d-%02d-%02d", 2003 + i / 80,
                      1 + (i % 80) / 28, 1 + (i % 80) % 28);
        dates.emplace_back(buffer);
    }
    const auto csv_path = work_dir() / "two_years.csv";
    write_panel_csv(panel, csv_path.string(), dates);

    const auto out_json = work_dir() / "pipe.json";
    const std::string args = "pipeline --file " + csv_path.string() +
                             " --r 3 --mc-draws 2000 --min-period 20 --seed 5 --out " +
                             out_json.string();
    REQUIRE(run_cli(args).exit_code == 0);
    const json root = json::parse(slurp(out_json));
    REQUIRE(root.at("pairs").size() == 1);
    CHECK(root.at("pairs").at(0).at("label1") == "2003");
    CHECK(root.at("pairs").at(0).at("label2") == "2004");

    const auto out_again = work_dir() / "pipe2.json";
    REQUIRE(run_cli("pipeline --file " + csv_path.string() +
                    " --r 3 --mc-draws 2000 --min-period 20 --seed 5 --out " +
                    out_again.string())
                .exit_code == 0);
    CHECK(slurp(out_json) == slurp(out_again));  // byte-identical artifacts

    const auto out_csv = work_dir() / "pipe.csv";
    REQUIRE(run_cli("pipeline --file " + csv_path.string() +
                    " --r 3 --mc-draws 2000 --min-period 20 --seed 5 --format csv --out " +
                    out_csv.string())
                .exit_code == 0);
    std::ifstream csv(out_csv);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(csv, line)) {
        if (!line.empty()) {
            ++lines;
        }
    }
    CHECK(lines == 1 + 1 * 3 * 3);  // header + pairs * tests * k
}

TEST_CASE("ci: intervals from a stored panel") {
    const auto path = make_panel_csv("ci.csv", DesignName::sigma1, 20, 200, 55);
    const RunResult result =
        run_cli("ci --file " + path.string() + " --k 1 --level 0.95 --target both --r 3");
    REQUIRE(result.exit_code == 0);
    const json root = json::parse(result.out);
    const double lambda = root.at("lambda_hat").get<double>();
    CHECK(root.at("eigenvalue_ci").at("lower").get<double>() < lambda);
    CHECK(root.at("eigenvalue_ci").at("upper").get<double>() > lambda);
    CHECK(root.at("ratio_ci").at("lower").get<double>() > 0.0);
    CHECK(root.at("ratio_ci").at("upper").get<double>() < 1.0);
}
