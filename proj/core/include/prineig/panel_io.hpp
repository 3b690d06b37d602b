#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prineig/spectral.hpp"
#include "prineig/two_sample.hpp"

namespace prineig {

/// A panel as parsed from disk: NaN marks missing values, dates kept when
/// the file has a leading ISO-8601 "date" column.
struct RawPanel {
    Eigen::MatrixXd values;
    std::vector<std::string> labels;
    std::vector<std::string> dates;  // empty when the file has no date column

    bool has_dates() const { return !dates.empty(); }
};

/// Parses a comma-separated file: header row required, optional first
/// column named "date". Non-numeric or empty cells become NaN. Ragged rows
/// raise ParseError with the line number.
RawPanel read_csv(const std::string& path);

struct CsvReadReport {
    std::size_t dropped_rows = 0;  // rows removed for missing values
};

/// Drops rows containing any missing value, optionally demeans columns, and
/// validates the result. The report carries the dropped-row count.
std::pair<PanelData, CsvReadReport> to_panel(const RawPanel& raw, bool demean);

/// read_csv followed by to_panel. Demeaning defaults ON for ingested data:
/// real return panels are not mean zero, and the limit theory assumes
/// centered observations.
PanelData read_panel_csv(const std::string& path, bool demean = true,
                         CsvReadReport* report = nullptr);

/// Writes a panel (and optional date column) at full round-trip precision.
void write_panel_csv(const PanelData& panel, const std::string& path,
                     const std::vector<std::string>& dates = {});

enum class SplitRule { calendar_year, fixed_length };

struct SplitOptions {
    SplitRule rule = SplitRule::calendar_year;
    int fixed_length = 0;        // required for SplitRule::fixed_length
    int min_period_length = 30;  // periods shorter than this are excluded
    bool demean = true;          // per-period demeaning
};

struct PeriodSplit {
    std::vector<std::pair<std::string, PanelData>> periods;  // (label, panel), time order
    std::vector<std::string> dropped_columns;    // not observed in every period
    std::vector<std::string> excluded_periods;   // shorter than the minimum after row drops
    std::vector<std::size_t> dropped_rows;       // per retained period
};

/// Splits into contiguous, non-overlapping periods (calendar years from the
/// date column, or fixed-length row blocks), restricts to the columns
/// observed in every period, then drops incomplete rows within each period.
PeriodSplit split_by_label(const RawPanel& raw, const SplitOptions& options);

struct PipelineConfig {
    int r_request = 0;  // 0 = eigenvalue-ratio rule per pair
    std::vector<double> levels = {0.05};
    std::size_t mc_draws = 100000;
    bool demean = true;              // echoed; demeaning happens at split time
    int min_period_length = 30;      // echoed
};

struct PairReport {
    std::string label1;
    std::string label2;
    int r_used = 0;
    std::vector<TestResult> results;
    std::vector<std::string> warnings;
};

struct PipelineReport {
    int schema_version = 1;
    PipelineConfig config;
    std::uint64_t seed = 0;
    std::vector<PairReport> pairs;  // ordered by time
};

/// Runs the full battery on every adjacent pair of periods. Eigenvector
/// tests carry their Monte-Carlo critical value per level, which varies
/// from pair to pair with the estimated null law. Per-pair failures are
/// recorded in the pair's warnings without aborting the sweep.
/// Deterministic given the seed and independent of the worker count.
PipelineReport run_pipeline(const PeriodSplit& split, const PipelineConfig& config,
                            std::uint64_t seed, unsigned threads = 0);

enum class ReportFormat { json, csv };

std::string report_to_json(const PipelineReport& report);
PipelineReport report_from_json(const std::string& text);

/// Serializes the report; JSON is canonical, CSV is a flat one-row-per-
/// (pair, test, k) view that omits failed tests.
void write_report(const PipelineReport& report, const std::string& path, ReportFormat format);

}  // namespace prineig
