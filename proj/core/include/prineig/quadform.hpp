#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace prineig {

/// Parameters of the generalized chi-square law
///     q^T [[I, -Xi], [-Xi^T, I]] q,   q ~ N(0, diag(weights_a, weights_b)),
/// i.e. the null distribution of the eigenvector test. weights_a/weights_b
/// are the per-sample spike weights (rho_i * omega_kj), coupling is the
/// cross inner-product matrix with the tested component removed.
struct QuadFormSpec {
    Eigen::VectorXd weights_a;
    Eigen::VectorXd weights_b;
    Eigen::MatrixXd coupling;
    bool coupling_clamped = false;  // set when singular values had to be clamped to 1

    Eigen::Index dim() const { return weights_a.size(); }
};

/// Throws InvalidSpec when weights are nonpositive, dimensions disagree, or
/// the coupling operator norm exceeds 1 + 1e-8.
void validate_spec(const QuadFormSpec& spec);

/// Clamps the coupling's singular values to <= 1 and sets coupling_clamped
/// when any clamping occurred. Keeps the quadratic form positive
/// semidefinite in the face of finite-sample coupling estimates.
QuadFormSpec clamp_coupling(QuadFormSpec spec);

/// Monte-Carlo draws from a quadratic-form law, sorted copy cached for
/// quantile queries.
struct QuadFormSample {
    std::vector<double> values;  // draw order
    std::vector<double> sorted;
    QuadFormSpec spec;
    std::uint64_t seed = 0;
};

/// Draws `draws` samples: q_a[j] ~ N(0, w_a[j]), q_b[j] ~ N(0, w_b[j]),
/// value = |q_a|^2 + |q_b|^2 - 2 q_a^T Xi q_b. Deterministic given seed and
/// independent of `threads` (fixed-size blocks carry derived seeds).
QuadFormSample sample_quadform(const QuadFormSpec& spec, std::size_t draws, std::uint64_t seed,
                               unsigned threads = 0);

/// Direct sampler for the diagonal law sum_j weights[j] * Z_j^2.
QuadFormSample sample_weighted_chisq(const Eigen::VectorXd& weights, std::size_t draws,
                                     std::uint64_t seed, unsigned threads = 0);

/// Type-7 empirical quantile of the sample.
double quantile(const QuadFormSample& sample, double p);

/// Right-tail Monte-Carlo p-value with the add-one correction:
/// (#{draws >= observed} + 1) / (B + 1).
double pvalue(const QuadFormSample& sample, double observed);

/// Encodes Corollary-style combined weights (rho1*w1 + rho2*w2 per spike) as
/// a QuadFormSpec: identity coupling with the weights split evenly, so the
/// form reduces to sum_j weights[j] * Z_j^2 in distribution.
QuadFormSpec corollary_diagonal_law(const Eigen::VectorXd& weights);

}  // namespace prineig
