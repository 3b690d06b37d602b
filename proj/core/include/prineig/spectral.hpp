#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace prineig {

/// A T x N panel of observations: rows are time points, columns subjects.
struct PanelData {
    Eigen::MatrixXd values;           // T x N
    std::vector<std::string> labels;  // N column labels
    bool demeaned = false;

    Eigen::Index n_obs() const { return values.rows(); }
    Eigen::Index n_dim() const { return values.cols(); }
};

/// Validates the PanelData invariants (dimensions, finiteness, and the
/// column-sum condition when demeaned). Throws InvalidPanel.
void validate_panel(const PanelData& panel);

/// Number of retained principal components and how it was chosen.
struct FactorCount {
    enum class Source { user_supplied, eigenvalue_ratio };
    int r = 1;
    Source source = Source::user_supplied;
};

/// Full spectrum plus the leading r eigenvectors of a sample covariance.
struct SpectralSummary {
    Eigen::VectorXd eigenvalues;  // length N, nonincreasing, >= 0
    Eigen::MatrixXd top_vectors;  // N x r, orthonormal, sign-aligned
    double trace = 0.0;
    Eigen::Index n_dim = 0;
    Eigen::Index n_obs = 0;
    int r_used = 0;

    /// tr - sum of the leading r eigenvalues; equals sum_{j>r} lambda_j exactly.
    double tail_sum(int r) const;
};

/// Sample covariance (1/T) sum_t y_t y_t^T. The divisor is T, not T-1,
/// which is the estimator all the limit theorems here are stated for.
/// With demean, column means are subtracted first (divisor stays T).
Eigen::MatrixXd sample_covariance(const PanelData& panel, bool demean);

/// Full symmetric eigendecomposition of a covariance matrix, eigenvalues in
/// descending order, top-r eigenvectors retained and sign-aligned.
/// n_obs tags the summary with the sample size behind the matrix.
SpectralSummary spectral_summary(const Eigen::MatrixXd& cov, const FactorCount& r,
                                 Eigen::Index n_obs);

/// Convenience: covariance then summary.
SpectralSummary spectral_summary(const PanelData& panel, const FactorCount& r, bool demean);

/// Eigenvalue-ratio rule: argmax_{1<=k<=k_max} lambda_k / lambda_{k+1}.
FactorCount estimate_factor_count(const Eigen::VectorXd& eigenvalues, int k_max);

/// Returns v or -v so that the entry of largest magnitude is nonnegative;
/// ties broken by lowest index. Requires ||v|| = 1 within 1e-8.
Eigen::VectorXd align_sign(const Eigen::VectorXd& v);

}  // namespace prineig
