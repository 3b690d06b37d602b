#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "prineig/spectral.hpp"

namespace prineig {

/// Plug-in estimate of sigma^2_{lambda_k} = E(z_1[k])^4 - 1, the asymptotic
/// variance of sqrt(T)(lambda_hat_k/lambda_k - 1).
struct EigenvalueVarianceEstimate {
    int k = 1;                // 1-based component index
    double sigma2_hat = 0.0;  // >= -1 by construction
    bool degenerate = false;  // sigma2_hat <= 0: unusable downstream
};

struct ConfidenceInterval {
    enum class Target { eigenvalue, eigenvalue_ratio };
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.95;
    Target target = Target::eigenvalue;
    bool degenerate = false;  // variance estimate was <= 0, interval collapsed
};

/// Curvature weights omega_hat_{ki} = lam_k lam_i / (lam_k - lam_i)^2 for
/// i != k, i <= r. Scale-invariant in the spectrum.
struct OmegaWeights {
    int k = 1;
    std::map<int, double> weights;  // 1-based index i -> omega_hat_{ki}
};

/// sigma2_hat_{lambda_k} = (1/(T lam_hat_k^2)) sum_t (v_hat_k^T y_t)^4 - 1.
/// k is 1-based; requires k <= summary.r_used and lam_hat_k > 0.
EigenvalueVarianceEstimate sigma2_lambda_hat(const PanelData& panel,
                                             const SpectralSummary& summary, int k);

/// Wald interval for lambda_k on the ratio scale: lambda_hat / (1 -+ z s),
/// s = sqrt(sigma2_hat/T). A nonpositive variance collapses the interval to
/// a point and sets the degenerate flag. An empty minus branch (1 - z s <= 0)
/// yields an infinite upper endpoint.
ConfidenceInterval eigenvalue_ci(const SpectralSummary& summary,
                                 const EigenvalueVarianceEstimate& sigma2, int k, double level);

/// sigma2_hat_{-k} per the ratio CLT: the plug-in variance of the
/// lam_k/(tr - lam_k) statistic. all_sigma2 must hold the estimates for
/// components 1..r (entry j-1 for component j).
double sigma2_minus_k(const SpectralSummary& summary,
                      const std::vector<EigenvalueVarianceEstimate>& all_sigma2, int k);

/// Wald interval for rho_tilde_k = lambda_k/(tr - lambda_k), mapped through
/// the increasing bijection rho = rho_tilde/(1 + rho_tilde) onto an interval
/// for rho_k = lambda_k/tr(Sigma).
ConfidenceInterval ratio_ci(const SpectralSummary& summary,
                            const std::vector<EigenvalueVarianceEstimate>& all_sigma2, int k,
                            double level);

/// Requires all spike gaps (relative) >= 1e-6; throws NearDegenerateSpikes
/// otherwise: the limit laws assume distinct spikes and the weights blow up.
/// The two-argument form sums over i <= r_used; pass r to restrict to a
/// smaller assumed factor count.
OmegaWeights omega_weights(const SpectralSummary& summary, int k);
OmegaWeights omega_weights(const SpectralSummary& summary, int k, int r);

/// The eigenvector concentration statistic
///   T (1 - <v_k, v_hat_k>^2 - (1/(T lam_hat_k)) sum_{j>r} lam_hat_j /
///       (1 - lam_hat_j/lam_hat_k)^2),
/// whose null law is sum_{i != k} omega_{ki} Z_i^2. Only meaningful where
/// the true v_k is known, i.e. in simulation validation.
double eigenvector_concentration_stat(const Eigen::VectorXd& true_vector,
                                      const SpectralSummary& summary, int k);

}  // namespace prineig
