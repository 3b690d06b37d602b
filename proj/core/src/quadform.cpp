#include "prineig/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prineig/errors.hpp"
#include "prineig/parallel.hpp"
#include "prineig/rng.hpp"
#include "prineig/stats.hpp"

namespace prineig {

namespace {

// Fixed block size so the draw stream is independent of the worker count.
constexpr std::size_t kDrawBlock = 8192;

void check_draw_count(std::size_t draws) {
    if (draws < 1000) {
        throw InvalidSpec("Monte-Carlo sampling needs at least 1000 draws, got " +
                          std::to_string(draws));
    }
}

void finalize(QuadFormSample& sample) {
    for (double& v : sample.values) {
        if (v < 0.0) {
            if (v < -1e-10) {
                throw NumericalFailure("quadratic-form draw materially negative: " +
                                       std::to_string(v));
            }
            v = 0.0;
        }
    }
    sample.sorted = sample.values;
    std::sort(sample.sorted.begin(), sample.sorted.end());
}

}  // namespace

void validate_spec(const QuadFormSpec& spec) {
    const Eigen::Index d = spec.weights_a.size();
    if (d == 0) {
        throw InvalidSpec("quadratic-form spec has no weights");
    }
    if (spec.weights_b.size() != d || spec.coupling.rows() != d || spec.coupling.cols() != d) {
        throw InvalidSpec("quadratic-form spec dimensions disagree");
    }
    if ((spec.weights_a.array() <= 0.0).any() || (spec.weights_b.array() <= 0.0).any()) {
        throw InvalidSpec("quadratic-form weights must be positive");
    }
    const double norm = spec.coupling.jacobiSvd().singularValues()[0];
    if (norm > 1.0 + 1e-8) {
        throw InvalidSpec("coupling operator norm " + std::to_string(norm) + " exceeds 1");
    }
}

QuadFormSpec clamp_coupling(QuadFormSpec spec) {
    if (spec.coupling.size() == 0) {
        return spec;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(spec.coupling,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd sv = svd.singularValues();
    bool clamped = false;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > 1.0) {
            sv[i] = 1.0;
            clamped = true;
        }
    }
    if (clamped) {
        spec.coupling = svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
        spec.coupling_clamped = true;
    }
    return spec;
}

QuadFormSample sample_quadform(const QuadFormSpec& spec, std::size_t draws, std::uint64_t seed,
                               unsigned threads) {
    check_draw_count(draws);
    validate_spec(spec);

    const Eigen::Index d = spec.dim();
    const Eigen::VectorXd scale_a = spec.weights_a.cwiseSqrt();
    const Eigen::VectorXd scale_b = spec.weights_b.cwiseSqrt();

    QuadFormSample sample;
    sample.spec = spec;
    sample.seed = seed;
    sample.values.resize(draws);

    const std::size_t blocks = (draws + kDrawBlock - 1) / kDrawBlock;
    parallel_for(blocks, threads, [&](std::size_t block) {
        Rng rng(derive_seed(seed, 0x71ad, block));
        Eigen::VectorXd qa(d);
        Eigen::VectorXd qb(d);
        const std::size_t begin = block * kDrawBlock;
        const std::size_t end = std::min(draws, begin + kDrawBlock);
        for (std::size_t i = begin; i < end; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                qa[j] = scale_a[j] * rng.normal();
            }
            for (Eigen::Index j = 0; j < d; ++j) {
                qb[j] = scale_b[j] * rng.normal();
            }
            sample.values[i] =
                qa.squaredNorm() + qb.squaredNorm() - 2.0 * qa.dot(spec.coupling * qb);
        }
    });
    finalize(sample);
    return sample;
}

QuadFormSample sample_weighted_chisq(const Eigen::VectorXd& weights, std::size_t draws,
                                     std::uint64_t seed, unsigned threads) {
    check_draw_count(draws);
    if (weights.size() == 0) {
        throw InvalidSpec("weighted chi-square needs at least one weight");
    }
    if ((weights.array() <= 0.0).any()) {
        throw InvalidSpec("weighted chi-square weights must be positive");
    }

    QuadFormSample sample;
    sample.spec = corollary_diagonal_law(weights);
    sample.seed = seed;
    sample.values.resize(draws);

    const std::size_t blocks = (draws + kDrawBlock - 1) / kDrawBlock;
    parallel_for(blocks, threads, [&](std::size_t block) {
        Rng rng(derive_seed(seed, 0xd1a6, block));
        const std::size_t begin = block * kDrawBlock;
        const std::size_t end = std::min(draws, begin + kDrawBlock);
        for (std::size_t i = begin; i < end; ++i) {
            double value = 0.0;
            for (Eigen::Index j = 0; j < weights.size(); ++j) {
                const double z = rng.normal();
                value += weights[j] * z * z;
            }
            sample.values[i] = value;
        }
    });
    finalize(sample);
    return sample;
}

double quantile(const QuadFormSample& sample, double p) {
    if (sample.sorted.empty()) {
        throw InvalidInput("quantile: empty sample");
    }
    return stats::quantile_sorted(sample.sorted, p);
}

double pvalue(const QuadFormSample& sample, double observed) {
    if (sample.sorted.empty()) {
        throw InvalidInput("pvalue: empty sample");
    }
    const auto it = std::lower_bound(sample.sorted.begin(), sample.sorted.end(), observed);
    const std::size_t exceed = static_cast<std::size_t>(sample.sorted.end() - it);
    return static_cast<double>(exceed + 1) / static_cast<double>(sample.sorted.size() + 1);
}

QuadFormSpec corollary_diagonal_law(const Eigen::VectorXd& weights) {
    if (weights.size() == 0) {
        throw InvalidSpec("corollary law needs at least one weight");
    }
    if ((weights.array() <= 0.0).any()) {
        throw InvalidSpec("corollary law weights must be positive");
    }
    QuadFormSpec spec;
    spec.weights_a = 0.5 * weights;
    spec.weights_b = 0.5 * weights;
    // With identity coupling and equal split the form collapses to
    // sum_j (q_a[j] - q_b[j])^2 with q_a[j]-q_b[j] ~ N(0, weights[j]).
    spec.coupling = Eigen::MatrixXd::Identity(weights.size(), weights.size());
    return spec;
}

}  // namespace prineig
