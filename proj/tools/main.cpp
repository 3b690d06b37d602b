// prineig: principal eigenstructure inference for high-dimensional panels.
//
// Subcommands:
//   simulate  size/power experiments over the built-in covariance designs
//   nulldist  raw null-statistic draws for Q-Q checks
//   test2     two-sample test battery on a pair of CSV panels
//   pipeline  consecutive-period test battery over one CSV panel
//   ci        one-sample confidence intervals from a CSV panel

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "prineig/errors.hpp"
#include "prineig/one_sample.hpp"
#include "prineig/panel_io.hpp"
#include "prineig/rng.hpp"
#include "prineig/simulation.hpp"
#include "prineig/spectral.hpp"
#include "prineig/stats.hpp"
#include "prineig/two_sample.hpp"

namespace {

using nlohmann::json;
using namespace prineig;

constexpr int kExitSuccess = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::uint64_t resolve_seed(std::optional<std::uint64_t> seed) {
    if (seed.has_value()) {
        return *seed;
    }
    std::random_device entropy;
    const std::uint64_t drawn =
        (static_cast<std::uint64_t>(entropy()) << 32) ^ static_cast<std::uint64_t>(entropy());
    std::cerr << "seed: " << drawn << " (drawn from entropy; pass --seed to reproduce)\n";
    return drawn;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw IoError("cannot open " + out_path + " for writing");
    }
    file << text;
    if (!file) {
        throw IoError("write to " + out_path + " failed");
    }
}

json result_to_json(const TestResult& result) {
    json entry;
    entry["test"] = test_name(result.name);
    entry["k"] = result.k;
    entry["statistic"] = result.statistic;
    entry["p_value"] = result.p_value;
    entry["null_law"] = result.null_law == TestResult::NullLaw::standard_normal
                            ? "standard-normal"
                            : "quad-form";
    json critical = json::object();
    for (const auto& [level, value] : result.critical_values) {
        char buffer[32];
        const auto end = std::to_chars(buffer, buffer + sizeof(buffer), level);
        critical[std::string(buffer, end.ptr)] = value;
    }
    entry["critical_values"] = critical;
    entry["rejected"] = result.rejected;
    if (!result.error.empty()) {
        entry["error"] = result.error;
    }
    json diagnostics = json::object();
    for (const auto& [key, value] : result.diagnostics) {
        diagnostics[key] = value;
    }
    entry["diagnostics"] = diagnostics;
    return entry;
}

struct SimulateOptions {
    std::string design;
    int n = 100;
    int t1 = 0;  // 0: defaults to N
    int t2 = 0;  // 0: defaults to 3N/2
    int reps = 1000;
    double level = 0.05;
    std::vector<int> r_values = {3};
    std::vector<int> k_values = {1};
    double theta = 0.3490658503988659;  // pi/9
    std::string innovation = "t8";
    std::size_t mc_draws = 20000;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string out;
    std::string format = "json";
};

int run_simulate(const SimulateOptions& options) {
    ExperimentSpec spec;
    const Innovation innovation =
        options.innovation == "gaussian" ? Innovation::gaussian : Innovation::student_t8;
    const std::uint64_t seed = resolve_seed(options.seed);

    DesignName first;
    DesignName second;
    std::optional<double> theta;
    if (options.design == "size-lambda" || options.design == "size-ratio") {
        first = DesignName::sigma1;
        second = DesignName::sigma3;
    } else if (options.design == "size-vector" || options.design == "power-lambda" ||
               options.design == "power-ratio") {
        first = DesignName::sigma1;
        second = DesignName::sigma2;
    } else {  // power-vector
        first = DesignName::sigma4;
        second = DesignName::sigma5;
        theta = options.theta;
    }
    auto [design1, design2] =
        design_pair(first, second, options.n, theta, innovation, derive_seed(seed, 1));
    spec.design1 = design1;
    spec.design2 = design2;
    spec.t1 = options.t1 > 0 ? options.t1 : options.n;
    spec.t2 = options.t2 > 0 ? options.t2 : options.n * 3 / 2;
    spec.replications = options.reps;
    spec.level = options.level;
    spec.r_values = options.r_values;
    spec.k_values = options.k_values;
    spec.mc_draws = options.mc_draws;
    spec.master_seed = derive_seed(seed, 2);
    spec.threads = options.threads;
    if (options.design == "size-lambda" || options.design == "power-lambda") {
        spec.tests = {TestResult::Name::eigenvalue};
    } else if (options.design == "size-ratio" || options.design == "power-ratio") {
        spec.tests = {TestResult::Name::ratio};
    } else {
        spec.tests = {TestResult::Name::eigenvector};
    }

    const SizePowerTable table = run_size_power(spec);

    json config;
    config["design"] = options.design;
    config["design1"] = design_name(spec.design1.name);
    config["design2"] = design_name(spec.design2.name);
    config["N"] = options.n;
    config["T1"] = spec.t1;
    config["T2"] = spec.t2;
    config["reps"] = spec.replications;
    config["level"] = spec.level;
    config["r_values"] = spec.r_values;
    config["k_values"] = spec.k_values;
    config["mc_draws"] = spec.mc_draws;
    config["innovation"] = innovation_name(innovation);
    if (theta.has_value()) {
        config["theta"] = *theta;
    }
    config["seed"] = seed;
    config["derived_seeds"] =
        json{{"design_pair", derive_seed(seed, 1)}, {"experiment", spec.master_seed},
             {"seed_v1", spec.design1.seed_v1},     {"seed_v2", spec.design1.seed_v2},
             {"seed_bulk", spec.design1.seed_bulk}};

    if (options.format == "csv") {
        std::string text = "test,k,r_hat,rate,rejections,reps_effective,failures,na\n";
        for (const SizePowerCell& cell : table.cells) {
            text += std::string(test_name(cell.test)) + "," + std::to_string(cell.k) + "," +
                    (cell.r_hat > 0 ? std::to_string(cell.r_hat) : "") + "," +
                    (cell.is_na ? "" : std::to_string(cell.rate)) + "," +
                    std::to_string(cell.rejections) + "," + std::to_string(cell.reps_effective) +
                    "," + std::to_string(cell.failures) + "," + (cell.is_na ? "true" : "false") +
                    "\n";
        }
        emit(text, options.out);
    } else {
        json root;
        root["schema_version"] = 1;
        root["config"] = config;
        json cells = json::array();
        for (const SizePowerCell& cell : table.cells) {
            json item;
            item["test"] = test_name(cell.test);
            item["k"] = cell.k;
            if (cell.r_hat > 0) {
                item["r_hat"] = cell.r_hat;
            }
            if (cell.is_na) {
                item["rate"] = nullptr;
            } else {
                item["rate"] = cell.rate;
            }
            item["rejections"] = cell.rejections;
            item["reps_effective"] = cell.reps_effective;
            item["failures"] = cell.failures;
            cells.push_back(item);
        }
        root["cells"] = cells;
        emit(root.dump(2) + "\n", options.out);
    }
    return kExitSuccess;
}

struct NulldistOptions {
    std::string test = "lambda";
    int k = 1;
    int n = 100;
    int t1 = 0;
    int t2 = 0;
    int reps = 1000;
    int r_hat = 3;
    std::string innovation = "t8";
    std::size_t mc_draws = 20000;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string out;
    std::string format = "json";
};

int run_nulldist(const NulldistOptions& options) {
    const Innovation innovation =
        options.innovation == "gaussian" ? Innovation::gaussian : Innovation::student_t8;
    const std::uint64_t seed = resolve_seed(options.seed);

    const TestResult::Name test = options.test == "lambda" ? TestResult::Name::eigenvalue
                                  : options.test == "ratio" ? TestResult::Name::ratio
                                                            : TestResult::Name::eigenvector;
    // Null pairings: same eigenvalues for the eigenvalue/ratio tests,
    // same eigenvectors for the eigenvector test.
    const DesignName second =
        test == TestResult::Name::eigenvector ? DesignName::sigma2 : DesignName::sigma3;
    auto [design1, design2] = design_pair(DesignName::sigma1, second, options.n, std::nullopt,
                                          innovation, derive_seed(seed, 1));

    ExperimentSpec spec;
    spec.design1 = design1;
    spec.design2 = design2;
    spec.t1 = options.t1 > 0 ? options.t1 : options.n;
    spec.t2 = options.t2 > 0 ? options.t2 : options.n * 3 / 2;
    spec.replications = options.reps;
    spec.r_values = {options.r_hat};
    spec.k_values = {options.k};
    spec.mc_draws = options.mc_draws;
    spec.master_seed = derive_seed(seed, 2);
    spec.threads = options.threads;

    const NullDistributionResult result = run_null_distribution(spec, test, options.k);

    if (options.format == "csv") {
        std::string text = "statistic\n";
        for (const double value : result.draws) {
            char buffer[32];
            const auto end = std::to_chars(buffer, buffer + sizeof(buffer), value);
            text.append(buffer, end.ptr);
            text += '\n';
        }
        emit(text, options.out);
    } else {
        json root;
        root["schema_version"] = 1;
        root["config"] = {{"test", options.test},
                          {"k", options.k},
                          {"N", options.n},
                          {"T1", spec.t1},
                          {"T2", spec.t2},
                          {"reps", spec.replications},
                          {"r_hat", options.r_hat},
                          {"innovation", innovation_name(innovation)},
                          {"seed", seed}};
        root["summary"] = {{"mean", result.mean},
                           {"sd", result.sd},
                           {"ks", result.ks},
                           {"failures", result.failures}};
        root["draws"] = result.draws;
        emit(root.dump(2) + "\n", options.out);
    }
    return kExitSuccess;
}

struct Test2Options {
    std::string file1;
    std::string file2;
    int r = 0;  // 0 = auto
    std::vector<double> levels = {0.05};
    std::size_t mc_draws = 100000;
    bool demean = true;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string out;
};

int run_test2(const Test2Options& options) {
    const std::uint64_t seed = resolve_seed(options.seed);
    PanelData panel1 = read_panel_csv(options.file1, options.demean);
    PanelData panel2 = read_panel_csv(options.file2, options.demean);
    TwoSampleInput input =
        make_two_sample_input(std::move(panel1), std::move(panel2), options.r, false);
    const std::vector<TestResult> results =
        run_battery(input, options.levels, options.mc_draws, seed, options.threads);

    json root;
    root["schema_version"] = 1;
    root["config"] = {{"file1", options.file1}, {"file2", options.file2},
                      {"r_request", options.r}, {"r_used", input.r},
                      {"levels", options.levels}, {"mc_draws", options.mc_draws},
                      {"demean", options.demean}, {"seed", seed}};
    root["warnings"] = input.warnings;
    json items = json::array();
    for (const TestResult& result : results) {
        items.push_back(result_to_json(result));
    }
    root["results"] = items;
    emit(root.dump(2) + "\n", options.out);
    return kExitSuccess;
}

struct PipelineOptions {
    std::string file;
    std::string split = "calendar-year";
    int block_length = 0;
    int r = 0;
    std::vector<double> levels = {0.05};
    std::size_t mc_draws = 100000;
    int min_period = 30;
    bool demean = true;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string out;
    std::string format = "json";
};

int run_pipeline_cmd(const PipelineOptions& options) {
    const std::uint64_t seed = resolve_seed(options.seed);
    const RawPanel raw = read_csv(options.file);

    SplitOptions split_options;
    split_options.rule = options.split == "fixed-length" ? SplitRule::fixed_length
                                                         : SplitRule::calendar_year;
    split_options.fixed_length = options.block_length;
    split_options.min_period_length = options.min_period;
    split_options.demean = options.demean;
    const PeriodSplit split = split_by_label(raw, split_options);

    PipelineConfig config;
    config.r_request = options.r;
    config.levels = options.levels;
    config.mc_draws = options.mc_draws;
    config.demean = options.demean;
    config.min_period_length = options.min_period;

    const PipelineReport report = run_pipeline(split, config, seed, options.threads);
    if (options.out.empty()) {
        emit(report_to_json(report), "");
    } else {
        write_report(report, options.out,
                     options.format == "csv" ? ReportFormat::csv : ReportFormat::json);
    }

    if (!split.dropped_columns.empty()) {
        std::cerr << "dropped " << split.dropped_columns.size()
                  << " column(s) not observed in every period\n";
    }
    for (const std::string& label : split.excluded_periods) {
        std::cerr << "excluded short period " << label << "\n";
    }
    return kExitSuccess;
}

struct CiOptions {
    std::string file;
    int k = 1;
    double level = 0.95;
    std::string target = "both";
    int r = 0;
    int k_max = 8;
    bool demean = true;
    std::string out;
};

int run_ci(const CiOptions& options) {
    PanelData panel = read_panel_csv(options.file, options.demean);
    const Eigen::MatrixXd cov = sample_covariance(panel, false);

    FactorCount factor;
    if (options.r > 0) {
        factor = FactorCount{options.r, FactorCount::Source::user_supplied};
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigenvalues_only(cov,
                                                                        Eigen::EigenvaluesOnly);
        const int k_max = std::max(
            1, std::min<int>(options.k_max,
                             static_cast<int>(std::min(panel.n_dim(), panel.n_obs())) / 2 - 1));
        factor = estimate_factor_count(eigenvalues_only.eigenvalues().reverse(), k_max);
    }
    if (options.k > factor.r) {
        throw InvalidIndex("component k exceeds the factor count r=" + std::to_string(factor.r));
    }
    const SpectralSummary summary = spectral_summary(cov, factor, panel.n_obs());

    std::vector<EigenvalueVarianceEstimate> sigma2;
    for (int j = 1; j <= factor.r; ++j) {
        sigma2.push_back(sigma2_lambda_hat(panel, summary, j));
    }

    json root;
    root["schema_version"] = 1;
    root["config"] = {{"file", options.file},   {"k", options.k},
                      {"level", options.level}, {"target", options.target},
                      {"r_used", factor.r},     {"demean", options.demean}};
    root["lambda_hat"] = summary.eigenvalues[options.k - 1];
    root["trace"] = summary.trace;
    root["sigma2_lambda_hat"] = sigma2[options.k - 1].sigma2_hat;

    auto ci_json = [](const ConfidenceInterval& ci) {
        return json{{"lower", ci.lower},
                    {"upper", ci.upper},
                    {"level", ci.level},
                    {"degenerate", ci.degenerate}};
    };
    if (options.target == "eigenvalue" || options.target == "both") {
        root["eigenvalue_ci"] =
            ci_json(eigenvalue_ci(summary, sigma2[options.k - 1], options.k, options.level));
    }
    if (options.target == "ratio" || options.target == "both") {
        root["ratio_ci"] = ci_json(ratio_ci(summary, sigma2, options.k, options.level));
    }
    emit(root.dump(2) + "\n", options.out);
    return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inference on principal eigenvalues and eigenvectors of high-dimensional "
                 "covariance matrices"};
    app.require_subcommand(1);

    SimulateOptions simulate_options;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Size/power experiment over the built-in covariance designs");
    simulate
        ->add_option("--design", simulate_options.design,
                     "Experiment: size-lambda, size-ratio, size-vector, power-lambda, "
                     "power-ratio, power-vector")
        ->required()
        ->check(CLI::IsMember({"size-lambda", "size-ratio", "size-vector", "power-lambda",
                               "power-ratio", "power-vector"}));
    simulate->add_option("--N", simulate_options.n, "Dimension N")->capture_default_str();
    simulate->add_option("--T1", simulate_options.t1, "Sample 1 size (default N)")
        ->capture_default_str();
    simulate->add_option("--T2", simulate_options.t2, "Sample 2 size (default 3N/2)")
        ->capture_default_str();
    simulate->add_option("--reps", simulate_options.reps, "Replications")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    simulate->add_option("--level", simulate_options.level, "Significance level")
        ->capture_default_str();
    simulate->add_option("--rhat", simulate_options.r_values, "Assumed factor counts")
        ->capture_default_str();
    simulate->add_option("--k", simulate_options.k_values, "Component indices")
        ->capture_default_str();
    simulate->add_option("--theta", simulate_options.theta,
                         "Rotation angle for power-vector (radians)")
        ->capture_default_str();
    simulate->add_option("--innovation", simulate_options.innovation, "Innovation law")
        ->check(CLI::IsMember({"t8", "gaussian"}))
        ->capture_default_str();
    simulate->add_option("--mc-draws", simulate_options.mc_draws,
                         "Monte-Carlo draws for the eigenvector null")
        ->capture_default_str();
    simulate->add_option("--seed", simulate_options.seed, "Master seed (default: from entropy)");
    simulate->add_option("--threads", simulate_options.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    simulate->add_option("--out", simulate_options.out, "Output path (default stdout)");
    simulate->add_option("--format", simulate_options.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    NulldistOptions nulldist_options;
    CLI::App* nulldist =
        app.add_subcommand("nulldist", "Null-distribution draws of a test statistic");
    nulldist->add_option("--test", nulldist_options.test, "Statistic: lambda, ratio, vector")
        ->check(CLI::IsMember({"lambda", "ratio", "vector"}))
        ->capture_default_str();
    nulldist->add_option("--k", nulldist_options.k, "Component index")->capture_default_str();
    nulldist->add_option("--N", nulldist_options.n, "Dimension N")->capture_default_str();
    nulldist->add_option("--T1", nulldist_options.t1, "Sample 1 size (default N)")
        ->capture_default_str();
    nulldist->add_option("--T2", nulldist_options.t2, "Sample 2 size (default 3N/2)")
        ->capture_default_str();
    nulldist->add_option("--reps", nulldist_options.reps, "Replications")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    nulldist->add_option("--rhat", nulldist_options.r_hat, "Assumed factor count")
        ->capture_default_str();
    nulldist->add_option("--innovation", nulldist_options.innovation, "Innovation law")
        ->check(CLI::IsMember({"t8", "gaussian"}))
        ->capture_default_str();
    nulldist->add_option("--mc-draws", nulldist_options.mc_draws,
                         "Monte-Carlo draws for the eigenvector reference law")
        ->capture_default_str();
    nulldist->add_option("--seed", nulldist_options.seed, "Master seed (default: from entropy)");
    nulldist->add_option("--threads", nulldist_options.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    nulldist->add_option("--out", nulldist_options.out, "Output path (default stdout)");
    nulldist->add_option("--format", nulldist_options.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    Test2Options test2_options;
    CLI::App* test2 = app.add_subcommand("test2", "Two-sample test battery on two CSV panels");
    test2->add_option("--file1", test2_options.file1, "First panel CSV")->required();
    test2->add_option("--file2", test2_options.file2, "Second panel CSV")->required();
    test2->add_option("--r", test2_options.r, "Factor count (0 = eigenvalue-ratio rule)")
        ->capture_default_str();
    test2->add_option("--levels", test2_options.levels, "Significance levels (first decides)")
        ->capture_default_str();
    test2->add_option("--mc-draws", test2_options.mc_draws,
                      "Monte-Carlo draws for the eigenvector null")
        ->capture_default_str();
    test2->add_flag("--demean,!--no-demean", test2_options.demean,
                    "Demean columns before covariance (default on)")
        ->capture_default_str();
    test2->add_option("--seed", test2_options.seed, "Seed (default: from entropy)");
    test2->add_option("--threads", test2_options.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    test2->add_option("--out", test2_options.out, "Output path (default stdout)");

    PipelineOptions pipeline_options;
    CLI::App* pipeline = app.add_subcommand(
        "pipeline", "Consecutive-period test battery over one panel CSV");
    pipeline->add_option("--file", pipeline_options.file, "Panel CSV with a date column")
        ->required();
    pipeline->add_option("--split", pipeline_options.split, "Period rule")
        ->check(CLI::IsMember({"calendar-year", "fixed-length"}))
        ->capture_default_str();
    pipeline->add_option("--block-length", pipeline_options.block_length,
                         "Rows per period for fixed-length splitting")
        ->capture_default_str();
    pipeline->add_option("--r", pipeline_options.r, "Factor count (0 = eigenvalue-ratio rule)")
        ->capture_default_str();
    pipeline->add_option("--levels", pipeline_options.levels,
                         "Significance levels (first decides)")
        ->capture_default_str();
    pipeline->add_option("--mc-draws", pipeline_options.mc_draws,
                         "Monte-Carlo draws for the eigenvector null")
        ->capture_default_str();
    pipeline->add_option("--min-period", pipeline_options.min_period,
                         "Minimum usable period length")
        ->capture_default_str();
    pipeline->add_flag("--demean,!--no-demean", pipeline_options.demean,
                       "Demean columns within each period (default on)")
        ->capture_default_str();
    pipeline->add_option("--seed", pipeline_options.seed, "Seed (default: from entropy)");
    pipeline->add_option("--threads", pipeline_options.threads, "Worker threads (0 = all cores)")
        ->capture_default_str();
    pipeline->add_option("--out", pipeline_options.out, "Output path (default stdout)");
    pipeline->add_option("--format", pipeline_options.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();

    CiOptions ci_options;
    CLI::App* ci = app.add_subcommand(
        "ci", "One-sample confidence intervals for a principal eigenvalue and its trace ratio");
    ci->add_option("--file", ci_options.file, "Panel CSV")->required();
    ci->add_option("--k", ci_options.k, "Component index")->capture_default_str();
    ci->add_option("--level", ci_options.level, "Confidence level")->capture_default_str();
    ci->add_option("--target", ci_options.target, "Interval target")
        ->check(CLI::IsMember({"eigenvalue", "ratio", "both"}))
        ->capture_default_str();
    ci->add_option("--r", ci_options.r, "Factor count (0 = eigenvalue-ratio rule)")
        ->capture_default_str();
    ci->add_option("--k-max", ci_options.k_max, "Search bound for the ratio rule")
        ->capture_default_str();
    ci->add_flag("--demean,!--no-demean", ci_options.demean,
                 "Demean columns before covariance (default on)")
        ->capture_default_str();
    ci->add_option("--out", ci_options.out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? kExitSuccess : kExitUsage;
    }

    try {
        if (simulate->parsed()) {
            return run_simulate(simulate_options);
        }
        if (nulldist->parsed()) {
            return run_nulldist(nulldist_options);
        }
        if (test2->parsed()) {
            return run_test2(test2_options);
        }
        if (pipeline->parsed()) {
            return run_pipeline_cmd(pipeline_options);
        }
        if (ci->parsed()) {
            return run_ci(ci_options);
        }
    } catch (const InvalidPanel& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InvalidFactorCount& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InvalidVector& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InvalidLevel& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InvalidIndex& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InvalidInput& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InvalidSpec& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const InvalidDesign& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const IoError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitUsage;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitRuntime;
    }
    return kExitSuccess;
}
