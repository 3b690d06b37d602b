#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prineig/one_sample.hpp"
#include "prineig/quadform.hpp"
#include "prineig/spectral.hpp"

namespace prineig {

/// Two samples of the same dimension N prepared for the test battery.
/// r is the common number of principal components used by the tests; it may
/// be smaller than summaryX.r_used.
struct TwoSampleInput {
    PanelData panel1;
    PanelData panel2;
    SpectralSummary summary1;
    SpectralSummary summary2;
    int r = 1;
    std::vector<std::string> warnings;
};

/// Builds summaries for both panels and settles on a common r.
/// r_request > 0 uses that value for both samples; r_request == 0 applies
/// the eigenvalue-ratio rule per sample and takes the minimum, attaching a
/// warning if the two estimates disagree.
TwoSampleInput make_two_sample_input(PanelData panel1, PanelData panel2, int r_request,
                                     bool demean, int k_max_auto = 8);

struct TestResult {
    enum class Name { eigenvalue, ratio, eigenvector };
    enum class NullLaw { standard_normal, quad_form };

    Name name = Name::eigenvalue;
    int k = 1;
    double statistic = 0.0;
    NullLaw null_law = NullLaw::standard_normal;
    std::optional<QuadFormSpec> quad_spec;  // present iff name == eigenvector
    double p_value = 1.0;
    std::optional<double> reject_level;
    bool rejected = false;
    std::map<double, double> critical_values;   // level -> critical value
    std::map<std::string, double> diagnostics;  // component estimates
    std::string error;  // set instead of values when a battery member failed
};

const char* test_name(TestResult::Name name);

/// T_{lambda k}: equality of the kth principal eigenvalues. Two-sided
/// standard-normal null.
TestResult test_eigenvalue(const TwoSampleInput& input, int k);

/// T_{ek}: equality of the kth eigenvalue ratios lambda_k / tr(Sigma).
/// Two-sided standard-normal null; exactly antisymmetric under sample swap
/// and invariant to per-sample rescaling.
TestResult test_ratio(const TwoSampleInput& input, int k);

/// T_{vk}: equality of the kth principal eigenvectors, right-tailed against
/// a Monte-Carlo sample of the generalized chi-square null. Requires r >= 2
/// (the null law is an empty sum at r = 1 and is not defined by the theory).
/// critical_values are the MC quantiles at 1 - level for each requested
/// level; the decision is taken at levels.front().
TestResult test_eigenvector(const TwoSampleInput& input, int k, std::size_t mc_draws,
                            std::uint64_t seed, const std::vector<double>& levels = {0.05},
                            unsigned threads = 0);

/// Cross inner products of the two samples' leading r eigenvectors,
/// Xi_hat[s][t] = <v_hat_s^(1), v_hat_t^(2)>, entries clamped to [-1, 1].
Eigen::MatrixXd xi_matrix(const SpectralSummary& summary1, const SpectralSummary& summary2,
                          int r);

/// Runs all three tests for k = 1..r. Failures of individual tests are
/// recorded in the corresponding TestResult's error field rather than
/// aborting the battery. The first level is the decision level; critical
/// values are reported for every level. The seed is passed through to each
/// eigenvector test unchanged, so battery output reproduces individual
/// calls made with the same seed.
std::vector<TestResult> run_battery(const TwoSampleInput& input,
                                    const std::vector<double>& levels, std::size_t mc_draws,
                                    std::uint64_t seed, unsigned threads = 0);

}  // namespace prineig
