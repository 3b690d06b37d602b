#include "prineig/one_sample.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "prineig/errors.hpp"
#include "prineig/stats.hpp"

namespace prineig {

namespace {

void check_component(const SpectralSummary& summary, int k) {
    if (k < 1 || k > summary.r_used) {
        throw InvalidIndex("component k=" + std::to_string(k) + " outside 1..r_used=" +
                           std::to_string(summary.r_used));
    }
}

void check_level(double level) {
    if (!(level > 0.0 && level < 1.0)) {
        throw InvalidLevel("confidence level must lie in (0,1), got " + std::to_string(level));
    }
}

}  // namespace

EigenvalueVarianceEstimate sigma2_lambda_hat(const PanelData& panel,
                                             const SpectralSummary& summary, int k) {
    check_component(summary, k);
    const double lambda = summary.eigenvalues[k - 1];
    if (!(lambda > 0.0)) {
        throw DegenerateSpectrum("lambda_hat_" + std::to_string(k) + " is zero");
    }
    const Eigen::VectorXd projections = panel.values * summary.top_vectors.col(k - 1);
    const double t = static_cast<double>(panel.n_obs());
    double fourth = 0.0;
    for (Eigen::Index i = 0; i < projections.size(); ++i) {
        const double p2 = projections[i] * projections[i];
        fourth += p2 * p2;
    }
    EigenvalueVarianceEstimate out;
    out.k = k;
    out.sigma2_hat = fourth / (t * lambda * lambda) - 1.0;
    out.degenerate = !(out.sigma2_hat > 0.0);
    return out;
}

ConfidenceInterval eigenvalue_ci(const SpectralSummary& summary,
                                 const EigenvalueVarianceEstimate& sigma2, int k, double level) {
    check_component(summary, k);
    check_level(level);
    const double lambda = summary.eigenvalues[k - 1];

    ConfidenceInterval ci;
    ci.level = level;
    ci.target = ConfidenceInterval::Target::eigenvalue;
    if (!(sigma2.sigma2_hat > 0.0)) {
        ci.lower = lambda;
        ci.upper = lambda;
        ci.degenerate = true;
        return ci;
    }
    const double z = stats::normal_quantile(0.5 * (1.0 + level));
    const double half = z * std::sqrt(sigma2.sigma2_hat / static_cast<double>(summary.n_obs));
    ci.lower = lambda / (1.0 + half);
    ci.upper = (1.0 - half > 0.0) ? lambda / (1.0 - half)
                                  : std::numeric_limits<double>::infinity();
    if (ci.lower > ci.upper) {
        std::swap(ci.lower, ci.upper);
    }
    return ci;
}

double sigma2_minus_k(const SpectralSummary& summary,
                      const std::vector<EigenvalueVarianceEstimate>& all_sigma2, int k) {
    check_component(summary, k);
    if (static_cast<int>(all_sigma2.size()) < summary.r_used) {
        throw InvalidInput("sigma2_minus_k needs variance estimates for all components 1..r");
    }
    const double lambda_k = summary.eigenvalues[k - 1];
    const double residual_trace = summary.trace - lambda_k;
    if (!(residual_trace > 0.0)) {
        throw DegenerateVariance("tr(Sigma_hat) - lambda_hat_k must be positive");
    }
    double spike_terms = 0.0;
    for (int j = 1; j <= summary.r_used; ++j) {
        if (j == k) {
            continue;
        }
        const double lambda_j = summary.eigenvalues[j - 1];
        spike_terms += lambda_j * lambda_j * all_sigma2[j - 1].sigma2_hat;
    }
    const double ratio2 = (lambda_k / residual_trace) * (lambda_k / residual_trace);
    return ratio2 *
           (all_sigma2[k - 1].sigma2_hat + spike_terms / (residual_trace * residual_trace));
}

ConfidenceInterval ratio_ci(const SpectralSummary& summary,
                            const std::vector<EigenvalueVarianceEstimate>& all_sigma2, int k,
                            double level) {
    check_level(level);
    const double variance = sigma2_minus_k(summary, all_sigma2, k);
    const double lambda_k = summary.eigenvalues[k - 1];
    const double rho_tilde = lambda_k / (summary.trace - lambda_k);

    ConfidenceInterval ci;
    ci.level = level;
    ci.target = ConfidenceInterval::Target::eigenvalue_ratio;
    if (!(variance > 0.0)) {
        ci.lower = rho_tilde / (1.0 + rho_tilde);
        ci.upper = ci.lower;
        ci.degenerate = true;
        return ci;
    }
    const double z = stats::normal_quantile(0.5 * (1.0 + level));
    const double half = z * std::sqrt(variance / static_cast<double>(summary.n_obs));
    const double lo_tilde = std::max(0.0, rho_tilde - half);
    const double hi_tilde = rho_tilde + half;
    ci.lower = lo_tilde / (1.0 + lo_tilde);
    ci.upper = hi_tilde / (1.0 + hi_tilde);
    return ci;
}

OmegaWeights omega_weights(const SpectralSummary& summary, int k) {
    return omega_weights(summary, k, summary.r_used);
}

OmegaWeights omega_weights(const SpectralSummary& summary, int k, int r) {
    check_component(summary, k);
    if (r < 1 || r > summary.r_used) {
        throw InvalidIndex("omega_weights: r outside 1..r_used");
    }
    if (k > r) {
        throw InvalidIndex("omega_weights: k exceeds r");
    }
    const double lambda_k = summary.eigenvalues[k - 1];
    OmegaWeights out;
    out.k = k;
    for (int i = 1; i <= r; ++i) {
        if (i == k) {
            continue;
        }
        const double lambda_i = summary.eigenvalues[i - 1];
        const double gap = std::abs(lambda_k - lambda_i);
        if (gap < 1e-6 * std::max(lambda_k, lambda_i)) {
            throw NearDegenerateSpikes("spikes " + std::to_string(k) + " and " +
                                       std::to_string(i) + " are nearly tied");
        }
        out.weights[i] = lambda_k * lambda_i / (gap * gap);
    }
    return out;
}

double eigenvector_concentration_stat(const Eigen::VectorXd& true_vector,
                                      const SpectralSummary& summary, int k) {
    check_component(summary, k);
    if (std::abs(true_vector.norm() - 1.0) > 1e-8) {
        throw InvalidVector("true eigenvector must have unit norm");
    }
    if (true_vector.size() != summary.n_dim) {
        throw InvalidInput("true eigenvector dimension mismatch");
    }
    const double lambda_k = summary.eigenvalues[k - 1];
    if (!(lambda_k > 0.0)) {
        throw DegenerateSpectrum("lambda_hat_k is zero");
    }
    const double t = static_cast<double>(summary.n_obs);
    const double inner = true_vector.dot(summary.top_vectors.col(k - 1));

    double correction = 0.0;
    for (Eigen::Index j = summary.r_used; j < summary.n_dim; ++j) {
        const double lambda_j = summary.eigenvalues[j];
        const double denom = 1.0 - lambda_j / lambda_k;
        if (std::abs(denom) < 1e-12) {
            throw NumericalFailure("bulk eigenvalue coincides with spike k");
        }
        correction += lambda_j / (denom * denom);
    }
    correction /= t * lambda_k;

    return t * (1.0 - inner * inner - correction);
}

}  // namespace prineig
