#include "prineig/panel_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "prineig/errors.hpp"
#include "prineig/parallel.hpp"
#include "prineig/rng.hpp"

namespace prineig {

namespace {

std::string format_double(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

/// Numeric parse; anything unparseable (including "NA", empty) is missing.
double parse_cell(const std::string& raw) {
    const std::string cell = trim(raw);
    if (cell.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double value = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto result = std::from_chars(begin, end, value);
    if (result.ec != std::errc() || result.ptr != end) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return value;
}

bool is_iso_date(const std::string& s) {
    if (s.size() < 10) {
        return false;
    }
    for (int i = 0; i < 4; ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            return false;
        }
    }
    return s[4] == '-';
}

const char* null_law_name(TestResult::NullLaw law) {
    return law == TestResult::NullLaw::standard_normal ? "standard-normal" : "quad-form";
}

}  // namespace

RawPanel read_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open " + path);
    }
    std::string line;
    if (!std::getline(file, line)) {
        throw ParseError(path + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    std::vector<std::string> header = split_line(line);
    if (header.empty()) {
        throw ParseError(path + ": empty header row");
    }

    bool has_date = trim(header.front()) == "date";
    const std::size_t n = header.size() - (has_date ? 1 : 0);
    if (n < 2) {
        throw InvalidPanel(path + ": fewer than 2 data columns");
    }

    RawPanel raw;
    raw.labels.reserve(n);
    for (std::size_t j = has_date ? 1 : 0; j < header.size(); ++j) {
        raw.labels.push_back(trim(header[j]));
    }

    std::vector<std::vector<double>> rows;
    std::size_t line_number = 1;
    while (std::getline(file, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (trim(line).empty()) {
            continue;
        }
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != header.size()) {
            throw ParseError(path + ":" + std::to_string(line_number) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        if (has_date) {
            const std::string date = trim(fields.front());
            if (!is_iso_date(date)) {
                throw ParseError(path + ":" + std::to_string(line_number) +
                                 ": date column must be ISO-8601 (YYYY-MM-DD), got '" + date +
                                 "'");
            }
            raw.dates.push_back(date);
        }
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = parse_cell(fields[j + (has_date ? 1 : 0)]);
        }
        rows.push_back(std::move(row));
    }
    if (rows.size() < 2) {
        throw InvalidPanel(path + ": fewer than 2 data rows");
    }

    raw.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            raw.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return raw;
}

std::pair<PanelData, CsvReadReport> to_panel(const RawPanel& raw, bool demean) {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < raw.values.rows(); ++i) {
        if (raw.values.row(i).allFinite()) {
            keep.push_back(i);
        }
    }
    CsvReadReport report;
    report.dropped_rows = static_cast<std::size_t>(raw.values.rows()) - keep.size();
    if (keep.size() < 2) {
        throw InvalidPanel("fewer than 2 usable rows after dropping missing values");
    }

    PanelData panel;
    panel.labels = raw.labels;
    panel.values.resize(static_cast<Eigen::Index>(keep.size()), raw.values.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        panel.values.row(static_cast<Eigen::Index>(i)) = raw.values.row(keep[i]);
    }
    if (demean) {
        panel.values.rowwise() -= panel.values.colwise().mean().eval();
        panel.demeaned = true;
    }
    validate_panel(panel);
    return {std::move(panel), report};
}

PanelData read_panel_csv(const std::string& path, bool demean, CsvReadReport* report) {
    auto [panel, r] = to_panel(read_csv(path), demean);
    if (report != nullptr) {
        *report = r;
    }
    return std::move(panel);
}

void write_panel_csv(const PanelData& panel, const std::string& path,
                     const std::vector<std::string>& dates) {
    if (!dates.empty() && static_cast<Eigen::Index>(dates.size()) != panel.n_obs()) {
        throw InvalidInput("date count does not match row count");
    }
    std::ofstream file(path);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    if (!dates.empty()) {
        file << "date";
    }
    for (std::size_t j = 0; j < panel.labels.size(); ++j) {
        if (j > 0 || !dates.empty()) {
            file << ',';
        }
        file << panel.labels[j];
    }
    file << '\n';
    for (Eigen::Index i = 0; i < panel.n_obs(); ++i) {
        if (!dates.empty()) {
            file << dates[static_cast<std::size_t>(i)];
        }
        for (Eigen::Index j = 0; j < panel.n_dim(); ++j) {
            if (j > 0 || !dates.empty()) {
                file << ',';
            }
            file << format_double(panel.values(i, j));
        }
        file << '\n';
    }
    if (!file) {
        throw IoError("write to " + path + " failed");
    }
}

PeriodSplit split_by_label(const RawPanel& raw, const SplitOptions& options) {
    // Partition row indices into contiguous periods.
    std::vector<std::pair<std::string, std::vector<Eigen::Index>>> blocks;
    if (options.rule == SplitRule::calendar_year) {
        if (!raw.has_dates()) {
            throw InvalidInput("calendar-year split requires a date column");
        }
        for (Eigen::Index i = 0; i < raw.values.rows(); ++i) {
            const std::string year = raw.dates[static_cast<std::size_t>(i)].substr(0, 4);
            if (blocks.empty() || blocks.back().first != year) {
                blocks.push_back({year, {}});
            }
            blocks.back().second.push_back(i);
        }
    } else {
        if (options.fixed_length < 2) {
            throw InvalidInput("fixed-length split needs a block length >= 2");
        }
        int index = 0;
        for (Eigen::Index i = 0; i < raw.values.rows(); i += options.fixed_length) {
            ++index;
            char label[16];
            std::snprintf(label, sizeof(label), "p%03d", index);
            std::vector<Eigen::Index> rows;
            for (Eigen::Index j = i;
                 j < std::min<Eigen::Index>(raw.values.rows(), i + options.fixed_length); ++j) {
                rows.push_back(j);
            }
            blocks.push_back({label, std::move(rows)});
        }
    }

    // Common-subject restriction: keep columns observed (any finite value)
    // in every period.
    PeriodSplit split;
    std::vector<Eigen::Index> kept_columns;
    for (Eigen::Index j = 0; j < raw.values.cols(); ++j) {
        bool everywhere = true;
        for (const auto& [label, rows] : blocks) {
            bool seen = false;
            for (const Eigen::Index i : rows) {
                if (std::isfinite(raw.values(i, j))) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                everywhere = false;
                break;
            }
        }
        if (everywhere) {
            kept_columns.push_back(j);
        } else {
            split.dropped_columns.push_back(raw.labels[static_cast<std::size_t>(j)]);
        }
    }
    if (kept_columns.size() < 2) {
        throw InvalidPanel("fewer than 2 subjects observed in every period");
    }

    for (const auto& [label, rows] : blocks) {
        // Within the period, drop rows with any missing value.
        std::vector<Eigen::Index> complete;
        for (const Eigen::Index i : rows) {
            bool full = true;
            for (const Eigen::Index j : kept_columns) {
                if (!std::isfinite(raw.values(i, j))) {
                    full = false;
                    break;
                }
            }
            if (full) {
                complete.push_back(i);
            }
        }
        if (static_cast<int>(complete.size()) < options.min_period_length) {
            split.excluded_periods.push_back(label);
            continue;
        }
        PanelData panel;
        panel.values.resize(static_cast<Eigen::Index>(complete.size()),
                            static_cast<Eigen::Index>(kept_columns.size()));
        for (std::size_t i = 0; i < complete.size(); ++i) {
            for (std::size_t j = 0; j < kept_columns.size(); ++j) {
                panel.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    raw.values(complete[i], kept_columns[j]);
            }
        }
        for (const Eigen::Index j : kept_columns) {
            panel.labels.push_back(raw.labels[static_cast<std::size_t>(j)]);
        }
        if (options.demean) {
            panel.values.rowwise() -= panel.values.colwise().mean().eval();
            panel.demeaned = true;
        }
        validate_panel(panel);
        split.dropped_rows.push_back(rows.size() - complete.size());
        split.periods.push_back({label, std::move(panel)});
    }
    return split;
}

PipelineReport run_pipeline(const PeriodSplit& split, const PipelineConfig& config,
                            std::uint64_t seed, unsigned threads) {
    if (split.periods.size() < 2) {
        throw InvalidInput("pipeline needs at least 2 periods");
    }
    PipelineReport report;
    report.config = config;
    report.seed = seed;
    report.pairs.resize(split.periods.size() - 1);

    parallel_for(report.pairs.size(), threads, [&](std::size_t p) {
        PairReport& pair = report.pairs[p];
        pair.label1 = split.periods[p].first;
        pair.label2 = split.periods[p + 1].first;
        try {
            // Panels were demeaned at split time when requested; the
            // covariance step must not demean again.
            TwoSampleInput input =
                make_two_sample_input(split.periods[p].second, split.periods[p + 1].second,
                                      config.r_request, /*demean=*/false);
            pair.warnings = input.warnings;
            pair.r_used = input.r;
            pair.results = run_battery(input, config.levels, config.mc_draws,
                                       derive_seed(seed, 0xba77, p), 1);
        } catch (const Error& failure) {
            pair.warnings.push_back(std::string("pair failed: ") + failure.what());
        }
    });
    return report;
}

std::string report_to_json(const PipelineReport& report) {
    nlohmann::json root;
    root["schema_version"] = report.schema_version;
    root["seed"] = report.seed;
    nlohmann::json config;
    config["r_request"] = report.config.r_request;
    config["levels"] = report.config.levels;
    config["mc_draws"] = report.config.mc_draws;
    config["demean"] = report.config.demean;
    config["min_period_length"] = report.config.min_period_length;
    root["config"] = config;

    nlohmann::json pairs = nlohmann::json::array();
    for (const PairReport& pair : report.pairs) {
        nlohmann::json item;
        item["label1"] = pair.label1;
        item["label2"] = pair.label2;
        item["r_used"] = pair.r_used;
        item["warnings"] = pair.warnings;
        nlohmann::json results = nlohmann::json::array();
        for (const TestResult& result : pair.results) {
            nlohmann::json entry;
            entry["test"] = test_name(result.name);
            entry["k"] = result.k;
            entry["statistic"] = result.statistic;
            entry["p_value"] = result.p_value;
            entry["null_law"] = null_law_name(result.null_law);
            nlohmann::json critical = nlohmann::json::object();
            for (const auto& [level, value] : result.critical_values) {
                critical[format_double(level)] = value;
            }
            entry["critical_values"] = critical;
            entry["rejected"] = result.rejected;
            if (!result.error.empty()) {
                entry["error"] = result.error;
            }
            nlohmann::json diagnostics = nlohmann::json::object();
            for (const auto& [key, value] : result.diagnostics) {
                diagnostics[key] = value;
            }
            entry["diagnostics"] = diagnostics;
            results.push_back(entry);
        }
        item["results"] = results;
        pairs.push_back(item);
    }
    root["pairs"] = pairs;
    return root.dump(2) + "\n";
}

PipelineReport report_from_json(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& failure) {
        throw ParseError(std::string("report JSON: ") + failure.what());
    }
    PipelineReport report;
    try {
        report.schema_version = root.at("schema_version").get<int>();
        report.seed = root.at("seed").get<std::uint64_t>();
        const auto& config = root.at("config");
        report.config.r_request = config.at("r_request").get<int>();
        report.config.levels = config.at("levels").get<std::vector<double>>();
        report.config.mc_draws = config.at("mc_draws").get<std::size_t>();
        report.config.demean = config.at("demean").get<bool>();
        report.config.min_period_length = config.at("min_period_length").get<int>();
        for (const auto& item : root.at("pairs")) {
            PairReport pair;
            pair.label1 = item.at("label1").get<std::string>();
            pair.label2 = item.at("label2").get<std::string>();
            pair.r_used = item.at("r_used").get<int>();
            pair.warnings = item.at("warnings").get<std::vector<std::string>>();
            for (const auto& entry : item.at("results")) {
                TestResult result;
                const std::string name = entry.at("test").get<std::string>();
                result.name = name == "eigenvalue" ? TestResult::Name::eigenvalue
                              : name == "ratio"    ? TestResult::Name::ratio
                                                   : TestResult::Name::eigenvector;
                result.k = entry.at("k").get<int>();
                result.statistic = entry.at("statistic").get<double>();
                result.p_value = entry.at("p_value").get<double>();
                result.null_law = entry.at("null_law").get<std::string>() == "quad-form"
                                      ? TestResult::NullLaw::quad_form
                                      : TestResult::NullLaw::standard_normal;
                for (const auto& [key, value] : entry.at("critical_values").items()) {
                    result.critical_values[parse_cell(key)] = value.get<double>();
                }
                result.rejected = entry.at("rejected").get<bool>();
                if (entry.contains("error")) {
                    result.error = entry.at("error").get<std::string>();
                }
                for (const auto& [key, value] : entry.at("diagnostics").items()) {
                    result.diagnostics[key] = value.get<double>();
                }
                pair.results.push_back(std::move(result));
            }
            report.pairs.push_back(std::move(pair));
        }
    } catch (const nlohmann::json::exception& failure) {
        throw ParseError(std::string("report JSON: ") + failure.what());
    }
    return report;
}

void write_report(const PipelineReport& report, const std::string& path, ReportFormat format) {
    std::ofstream file(path);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    if (format == ReportFormat::json) {
        file << report_to_json(report);
    } else {
        file << "label1,label2,test,k,statistic,p_value,null_law,rejected";
        for (const double level : report.config.levels) {
            file << ",crit_" << format_double(level);
        }
        file << '\n';
        for (const PairReport& pair : report.pairs) {
            for (const TestResult& result : pair.results) {
                if (!result.error.empty()) {
                    continue;  // CSV is the flat success view
                }
                file << pair.label1 << ',' << pair.label2 << ',' << test_name(result.name)
                     << ',' << result.k << ',' << format_double(result.statistic) << ','
                     << format_double(result.p_value) << ',' << null_law_name(result.null_law)
                     << ',' << (result.rejected ? "true" : "false");
                for (const double level : report.config.levels) {
                    const auto it = result.critical_values.find(level);
                    file << ',';
                    if (it != result.critical_values.end()) {
                        file << format_double(it->second);
                    }
                }
                file << '\n';
            }
        }
    }
    if (!file) {
        throw IoError("write to " + path + " failed");
    }
}

}  // namespace prineig
