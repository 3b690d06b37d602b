#include "prineig/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prineig/errors.hpp"

namespace prineig {

void validate_panel(const PanelData& panel) {
    const Eigen::Index t = panel.n_obs();
    const Eigen::Index n = panel.n_dim();
    if (t < 2 || n < 2) {
        throw InvalidPanel("panel must have T >= 2 and N >= 2, got T=" + std::to_string(t) +
                           " N=" + std::to_string(n));
    }
    if (!panel.values.allFinite()) {
        throw InvalidPanel("panel contains non-finite entries");
    }
    if (!panel.labels.empty() && static_cast<Eigen::Index>(panel.labels.size()) != n) {
        throw InvalidPanel("label count does not match column count");
    }
    if (panel.demeaned) {
        const double tol = 1e-8 * static_cast<double>(t);
        const Eigen::RowVectorXd sums = panel.values.colwise().sum();
        if (sums.cwiseAbs().maxCoeff() > tol) {
            throw InvalidPanel("panel flagged demeaned but column sums exceed tolerance");
        }
    }
}

double SpectralSummary::tail_sum(int r) const {
    double head = 0.0;
    for (int j = 0; j < r && j < eigenvalues.size(); ++j) {
        head += eigenvalues[j];
    }
    return trace - head;
}

Eigen::MatrixXd sample_covariance(const PanelData& panel, bool demean) {
    validate_panel(panel);
    const double t = static_cast<double>(panel.n_obs());
    Eigen::MatrixXd centered = panel.values;
    if (demean) {
        const Eigen::RowVectorXd means = centered.colwise().mean();
        centered.rowwise() -= means;
    }
    Eigen::MatrixXd cov = (centered.transpose() * centered) / t;
    // Symmetrize away the last-bit asymmetry of the matrix product.
    cov = ((cov + cov.transpose()) * 0.5).eval();
    return cov;
}

Eigen::VectorXd align_sign(const Eigen::VectorXd& v) {
    const double norm = v.norm();
    if (!(std::abs(norm - 1.0) <= 1e-8)) {
        throw InvalidVector("align_sign requires a unit vector, got norm " + std::to_string(norm));
    }
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > best) {  // strict: ties keep the lowest index
            best = mag;
            arg = i;
        }
    }
    return (v[arg] < 0.0) ? Eigen::VectorXd(-v) : v;
}

SpectralSummary spectral_summary(const Eigen::MatrixXd& cov, const FactorCount& r,
                                 Eigen::Index n_obs) {
    const Eigen::Index n = cov.rows();
    if (cov.cols() != n) {
        throw InvalidInput("covariance matrix must be square");
    }
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-8) {
        throw InvalidInput("covariance matrix is not symmetric within 1e-8");
    }
    if (r.r < 1 || r.r >= std::min(n, n_obs)) {
        throw InvalidFactorCount("factor count r=" + std::to_string(r.r) +
                                 " must satisfy 1 <= r < min(N,T)");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw NumericalFailure("symmetric eigensolver did not converge");
    }

    SpectralSummary out;
    out.n_dim = n;
    out.n_obs = n_obs;
    out.r_used = r.r;
    out.trace = cov.trace();

    // Eigen returns ascending order; flip to descending.
    out.eigenvalues = solver.eigenvalues().reverse();
    const double top = std::max(1.0, out.eigenvalues[0]);
    for (Eigen::Index j = 0; j < n; ++j) {
        double& value = out.eigenvalues[j];
        if (value < 0.0) {
            if (value < -1e-10 * top) {
                throw NumericalFailure("covariance has a materially negative eigenvalue: " +
                                       std::to_string(value));
            }
            value = 0.0;
        }
    }

    out.top_vectors.resize(n, r.r);
    for (int k = 0; k < r.r; ++k) {
        out.top_vectors.col(k) = align_sign(solver.eigenvectors().col(n - 1 - k));
    }
    return out;
}

SpectralSummary spectral_summary(const PanelData& panel, const FactorCount& r, bool demean) {
    return spectral_summary(sample_covariance(panel, demean), r, panel.n_obs());
}

FactorCount estimate_factor_count(const Eigen::VectorXd& eigenvalues, int k_max) {
    if (k_max < 1 || k_max + 1 > eigenvalues.size()) {
        throw InvalidFactorCount("k_max out of range");
    }
    for (int k = 0; k < k_max + 1; ++k) {
        if (!(eigenvalues[k] > 0.0)) {
            throw DegenerateSpectrum("zero eigenvalue at index " + std::to_string(k + 1) +
                                     " inside the ratio-rule range");
        }
    }
    int best_k = 1;
    double best_ratio = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        const double ratio = eigenvalues[k - 1] / eigenvalues[k];
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_k = k;
        }
    }
    return FactorCount{best_k, FactorCount::Source::eigenvalue_ratio};
}

}  // namespace prineig
