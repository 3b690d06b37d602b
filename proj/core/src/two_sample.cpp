#include "prineig/two_sample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prineig/errors.hpp"
#include "prineig/stats.hpp"

namespace prineig {

namespace {

void check_levels(const std::vector<double>& levels) {
    if (levels.empty()) {
        throw InvalidLevel("at least one significance level is required");
    }
    for (double level : levels) {
        if (!(level > 0.0 && level < 1.0)) {
            throw InvalidLevel("significance level must lie in (0,1), got " +
                               std::to_string(level));
        }
    }
}

void check_k(const TwoSampleInput& input, int k) {
    if (k < 1 || k > input.r) {
        throw InvalidIndex("component k=" + std::to_string(k) + " outside 1..r=" +
                           std::to_string(input.r));
    }
}

/// sigma2_lambda_hat for components 1..r of one sample; throws
/// DegenerateVariance when the component k estimate is unusable.
std::vector<EigenvalueVarianceEstimate> variance_estimates(const PanelData& panel,
                                                           const SpectralSummary& summary,
                                                           int r) {
    std::vector<EigenvalueVarianceEstimate> out;
    out.reserve(static_cast<std::size_t>(r));
    for (int j = 1; j <= r; ++j) {
        out.push_back(sigma2_lambda_hat(panel, summary, j));
    }
    return out;
}

double ratio_variance(const SpectralSummary& summary,
                      const std::vector<EigenvalueVarianceEstimate>& sigma2, int k, int r) {
    const double lambda_k = summary.eigenvalues[k - 1];
    const double residual_trace = summary.trace - lambda_k;
    if (!(residual_trace > 0.0)) {
        throw DegenerateVariance("tr(Sigma_hat) - lambda_hat_k must be positive");
    }
    double spike_terms = 0.0;
    for (int j = 1; j <= r; ++j) {
        if (j == k) {
            continue;
        }
        const double lambda_j = summary.eigenvalues[j - 1];
        spike_terms += lambda_j * lambda_j * sigma2[j - 1].sigma2_hat;
    }
    const double ratio2 = (lambda_k / residual_trace) * (lambda_k / residual_trace);
    return ratio2 * (sigma2[k - 1].sigma2_hat + spike_terms / (residual_trace * residual_trace));
}

}  // namespace

const char* test_name(TestResult::Name name) {
    switch (name) {
        case TestResult::Name::eigenvalue:
            return "eigenvalue";
        case TestResult::Name::ratio:
            return "ratio";
        case TestResult::Name::eigenvector:
            return "eigenvector";
    }
    return "unknown";
}

TwoSampleInput make_two_sample_input(PanelData panel1, PanelData panel2, int r_request,
                                     bool demean, int k_max_auto) {
    validate_panel(panel1);
    validate_panel(panel2);
    if (panel1.n_dim() != panel2.n_dim()) {
        throw InvalidInput("the two panels must have the same dimension N, got " +
                           std::to_string(panel1.n_dim()) + " and " +
                           std::to_string(panel2.n_dim()));
    }
    TwoSampleInput input;
    const Eigen::Index min_t = std::min(panel1.n_obs(), panel2.n_obs());
    const Eigen::Index n = panel1.n_dim();

    int r = r_request;
    if (r_request == 0) {
        // Auto: eigenvalue-ratio rule per sample, minimum wins.
        const int k_max = std::max(
            1, std::min<int>(k_max_auto, static_cast<int>(std::min(n, min_t)) / 2 - 1));
        const Eigen::MatrixXd cov1 = sample_covariance(panel1, demean);
        const Eigen::MatrixXd cov2 = sample_covariance(panel2, demean);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s1(cov1, Eigen::EigenvaluesOnly);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> s2(cov2, Eigen::EigenvaluesOnly);
        const int r1 = estimate_factor_count(s1.eigenvalues().reverse(), k_max).r;
        const int r2 = estimate_factor_count(s2.eigenvalues().reverse(), k_max).r;
        r = std::min(r1, r2);
        if (r1 != r2) {
            input.warnings.push_back("factor-count estimates disagree (" + std::to_string(r1) +
                                     " vs " + std::to_string(r2) + "); using the minimum " +
                                     std::to_string(r));
        }
    }
    if (r < 1 || r >= std::min<Eigen::Index>(n, min_t)) {
        throw InvalidFactorCount("common r=" + std::to_string(r) +
                                 " must satisfy 1 <= r < min(N, T1, T2)");
    }

    const FactorCount fc{r, r_request == 0 ? FactorCount::Source::eigenvalue_ratio
                                           : FactorCount::Source::user_supplied};
    input.summary1 = spectral_summary(panel1, fc, demean);
    input.summary2 = spectral_summary(panel2, fc, demean);
    input.panel1 = std::move(panel1);
    input.panel2 = std::move(panel2);
    input.r = r;
    return input;
}

TestResult test_eigenvalue(const TwoSampleInput& input, int k) {
    check_k(input, k);
    const auto s1 = sigma2_lambda_hat(input.panel1, input.summary1, k);
    const auto s2 = sigma2_lambda_hat(input.panel2, input.summary2, k);
    if (s1.degenerate || s2.degenerate) {
        throw DegenerateVariance("sigma2_lambda_hat is nonpositive for component " +
                                 std::to_string(k));
    }
    const double t1 = static_cast<double>(input.summary1.n_obs);
    const double t2 = static_cast<double>(input.summary2.n_obs);
    const double lambda1 = input.summary1.eigenvalues[k - 1];
    const double lambda2 = input.summary2.eigenvalues[k - 1];

    TestResult result;
    result.name = TestResult::Name::eigenvalue;
    result.k = k;
    result.statistic = std::sqrt(t1 * t2 / (t1 * s2.sigma2_hat + t2 * s1.sigma2_hat)) *
                       (lambda1 / lambda2 - 1.0);
    result.p_value = stats::two_sided_normal_pvalue(result.statistic);
    result.diagnostics["lambda_1"] = lambda1;
    result.diagnostics["lambda_2"] = lambda2;
    result.diagnostics["sigma2_1"] = s1.sigma2_hat;
    result.diagnostics["sigma2_2"] = s2.sigma2_hat;
    return result;
}

TestResult test_ratio(const TwoSampleInput& input, int k) {
    check_k(input, k);
    const auto sigma1 = variance_estimates(input.panel1, input.summary1, input.r);
    const auto sigma2 = variance_estimates(input.panel2, input.summary2, input.r);
    const double var1 = ratio_variance(input.summary1, sigma1, k, input.r);
    const double var2 = ratio_variance(input.summary2, sigma2, k, input.r);
    if (!(var1 > 0.0) || !(var2 > 0.0)) {
        throw DegenerateVariance("sigma2_minus_k is nonpositive for component " +
                                 std::to_string(k));
    }
    const double n = static_cast<double>(input.summary1.n_dim);
    const double t1 = static_cast<double>(input.summary1.n_obs);
    const double t2 = static_cast<double>(input.summary2.n_obs);
    const double ratio1 =
        input.summary1.eigenvalues[k - 1] / (input.summary1.trace -
                                             input.summary1.eigenvalues[k - 1]);
    const double ratio2 =
        input.summary2.eigenvalues[k - 1] / (input.summary2.trace -
                                             input.summary2.eigenvalues[k - 1]);

    TestResult result;
    result.name = TestResult::Name::ratio;
    result.k = k;
    result.statistic =
        std::sqrt(n) * (ratio1 - ratio2) / std::sqrt(n / t1 * var1 + n / t2 * var2);
    result.p_value = stats::two_sided_normal_pvalue(result.statistic);
    result.diagnostics["ratio_1"] = ratio1;
    result.diagnostics["ratio_2"] = ratio2;
    result.diagnostics["sigma2_minus_k_1"] = var1;
    result.diagnostics["sigma2_minus_k_2"] = var2;
    return result;
}

Eigen::MatrixXd xi_matrix(const SpectralSummary& summary1, const SpectralSummary& summary2,
                          int r) {
    if (summary1.n_dim != summary2.n_dim) {
        throw InvalidInput("xi_matrix: dimension mismatch");
    }
    if (r < 1 || r > summary1.r_used || r > summary2.r_used) {
        throw InvalidIndex("xi_matrix: r exceeds the retained eigenvector count");
    }
    Eigen::MatrixXd xi = summary1.top_vectors.leftCols(r).transpose() *
                         summary2.top_vectors.leftCols(r);
    // Inner products of unit vectors; shave off last-bit overshoot.
    return xi.cwiseMax(-1.0).cwiseMin(1.0);
}

TestResult test_eigenvector(const TwoSampleInput& input, int k, std::size_t mc_draws,
                            std::uint64_t seed, const std::vector<double>& levels,
                            unsigned threads) {
    check_k(input, k);
    check_levels(levels);
    const int r = input.r;
    if (r < 2) {
        throw UnsupportedFactorCount(
            "the eigenvector test needs r >= 2: its null law is a sum over the other spikes "
            "and is not defined for r = 1");
    }
    const double n = static_cast<double>(input.summary1.n_dim);
    const double t1 = static_cast<double>(input.summary1.n_obs);
    const double t2 = static_cast<double>(input.summary2.n_obs);
    const double lambda1 = input.summary1.eigenvalues[k - 1];
    const double lambda2 = input.summary2.eigenvalues[k - 1];
    const double inner = std::abs(
        input.summary1.top_vectors.col(k - 1).dot(input.summary2.top_vectors.col(k - 1)));

    // Tail sums computed as tr - sum of spikes: exact, no reliance on the
    // precision of individual bulk eigenvalues.
    const double tail1 = input.summary1.tail_sum(r);
    const double tail2 = input.summary2.tail_sum(r);
    const double correction1 = n * n / (t1 * (n - r) * lambda1) * tail1;
    const double correction2 = n * n / (t2 * (n - r) * lambda2) * tail2;

    TestResult result;
    result.name = TestResult::Name::eigenvector;
    result.k = k;
    result.null_law = TestResult::NullLaw::quad_form;
    // Grouped so the statistic is bitwise symmetric under sample swap.
    result.statistic = 2.0 * n * (1.0 - inner) - (correction1 + correction2);

    const OmegaWeights omega1 = omega_weights(input.summary1, k, r);
    const OmegaWeights omega2 = omega_weights(input.summary2, k, r);
    QuadFormSpec spec;
    spec.weights_a.resize(r - 1);
    spec.weights_b.resize(r - 1);
    int slot = 0;
    for (int j = 1; j <= r; ++j) {
        if (j == k) {
            continue;
        }
        spec.weights_a[slot] = n / t1 * omega1.weights.at(j);
        spec.weights_b[slot] = n / t2 * omega2.weights.at(j);
        ++slot;
    }
    Eigen::MatrixXd xi = xi_matrix(input.summary1, input.summary2, r);
    Eigen::MatrixXd coupling(r - 1, r - 1);
    for (int s = 0, si = 0; s < r; ++s) {
        if (s == k - 1) {
            continue;
        }
        for (int t = 0, ti = 0; t < r; ++t) {
            if (t == k - 1) {
                continue;
            }
            coupling(si, ti) = xi(s, t);
            ++ti;
        }
        ++si;
    }
    spec.coupling = std::move(coupling);
    spec = clamp_coupling(std::move(spec));

    const QuadFormSample sample = sample_quadform(spec, mc_draws, seed, threads);
    result.p_value = pvalue(sample, result.statistic);
    for (double level : levels) {
        result.critical_values[level] = quantile(sample, 1.0 - level);
    }
    result.reject_level = levels.front();
    result.rejected = result.statistic > result.critical_values.at(levels.front());
    result.quad_spec = std::move(spec);
    result.diagnostics["inner_product"] = inner;
    result.diagnostics["correction_1"] = correction1;
    result.diagnostics["correction_2"] = correction2;
    result.diagnostics["tail_sum_1"] = tail1;
    result.diagnostics["tail_sum_2"] = tail2;
    result.diagnostics["coupling_clamped"] = result.quad_spec->coupling_clamped ? 1.0 : 0.0;
    return result;
}

std::vector<TestResult> run_battery(const TwoSampleInput& input,
                                    const std::vector<double>& levels, std::size_t mc_draws,
                                    std::uint64_t seed, unsigned threads) {
    check_levels(levels);
    const double decision_level = levels.front();

    std::vector<TestResult> results;
    for (int k = 1; k <= input.r; ++k) {
        for (const auto name : {TestResult::Name::eigenvalue, TestResult::Name::ratio,
                                TestResult::Name::eigenvector}) {
            TestResult result;
            try {
                switch (name) {
                    case TestResult::Name::eigenvalue:
                        result = test_eigenvalue(input, k);
                        break;
                    case TestResult::Name::ratio:
                        result = test_ratio(input, k);
                        break;
                    case TestResult::Name::eigenvector:
                        result = test_eigenvector(input, k, mc_draws, seed, levels, threads);
                        break;
                }
            } catch (const Error& failure) {
                result.name = name;
                result.k = k;
                result.statistic = std::numeric_limits<double>::quiet_NaN();
                result.p_value = std::numeric_limits<double>::quiet_NaN();
                result.error = failure.what();
                result.diagnostics["failed"] = 1.0;
                results.push_back(std::move(result));
                continue;
            }
            if (result.null_law == TestResult::NullLaw::standard_normal) {
                result.reject_level = decision_level;
                for (double level : levels) {
                    result.critical_values[level] = stats::normal_quantile(1.0 - level / 2.0);
                }
                result.rejected =
                    std::abs(result.statistic) > result.critical_values.at(decision_level);
            }
            results.push_back(std::move(result));
        }
    }
    return results;
}

}  // namespace prineig
