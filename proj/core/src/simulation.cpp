#include "prineig/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "prineig/errors.hpp"
#include "prineig/one_sample.hpp"
#include "prineig/parallel.hpp"
#include "prineig/rng.hpp"
#include "prineig/stats.hpp"

namespace prineig {

namespace {

constexpr std::uint64_t kRepStream = 0x5e9d;
constexpr std::uint64_t kPanel1Stream = 1;
constexpr std::uint64_t kPanel2Stream = 2;
constexpr std::uint64_t kVectorTestStream = 0x7e57;

Eigen::VectorXd bulk_eigenvalues(int n, double lo, double hi, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXd bulk(n - 3);
    for (Eigen::Index j = 0; j < bulk.size(); ++j) {
        bulk[j] = rng.uniform(lo, hi);
    }
    return bulk;
}

Eigen::VectorXd lambda_one(int n, std::uint64_t seed_bulk) {
    Eigen::VectorXd lambda(n);
    lambda[0] = 2.5 * n;
    lambda[1] = n;
    lambda[2] = 0.5 * n;
    lambda.tail(n - 3) = bulk_eigenvalues(n, 1.0, 3.0, derive_seed(seed_bulk, 1));
    return lambda;
}

Eigen::VectorXd lambda_two(int n, std::uint64_t seed_bulk) {
    Eigen::VectorXd lambda(n);
    lambda[0] = 3.5 * n;
    lambda[1] = 2.0 * n;
    lambda[2] = 1.0 * n;
    lambda.tail(n - 3) = bulk_eigenvalues(n, 2.0, 5.0, derive_seed(seed_bulk, 2));
    return lambda;
}

Eigen::MatrixXd rotation_frame(int n, double theta) {
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    v(0, 0) = c;
    v(1, 0) = s;
    v(0, 1) = -s;
    v(1, 1) = c;
    return v;
}

struct CellKey {
    TestResult::Name test;
    int k;
    int r_hat;
    bool operator<(const CellKey& other) const {
        if (test != other.test) return test < other.test;
        if (k != other.k) return k < other.k;
        return r_hat < other.r_hat;
    }
};

enum class Outcome : std::uint8_t { retain = 0, reject = 1, failed = 2, na = 3 };

}  // namespace

const char* design_name(DesignName name) {
    switch (name) {
        case DesignName::sigma1:
            return "sigma1";
        case DesignName::sigma2:
            return "sigma2";
        case DesignName::sigma3:
            return "sigma3";
        case DesignName::sigma4:
            return "sigma4";
        case DesignName::sigma5:
            return "sigma5";
    }
    return "unknown";
}

const char* innovation_name(Innovation innovation) {
    return innovation == Innovation::gaussian ? "gaussian" : "student-t8";
}

Eigen::MatrixXd haar_orthogonal(int n, std::uint64_t seed) {
    if (n < 1) {
        throw InvalidDesign("haar_orthogonal needs n >= 1");
    }
    Rng rng(seed);
    Eigen::MatrixXd gauss(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            gauss(i, j) = rng.normal();
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Sign-correct with the R diagonal; without it QR is not Haar.
    for (Eigen::Index j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) {
            q.col(j) = -q.col(j);
        }
    }
    return q;
}

Population build_population(const SimDesign& design) {
    if (design.n < 4) {
        throw InvalidDesign("designs need N >= 4 (three spikes plus bulk)");
    }
    if (design.name == DesignName::sigma5) {
        if (!design.theta.has_value()) {
            throw InvalidDesign("sigma5 requires a rotation angle theta");
        }
        if (!(*design.theta >= 0.0 && *design.theta <= 1.5707963267948966 + 1e-12)) {
            throw InvalidDesign("theta must lie in [0, pi/2]");
        }
    } else if (design.theta.has_value()) {
        throw InvalidDesign("theta is only meaningful for sigma5");
    }

    Population population;
    switch (design.name) {
        case DesignName::sigma1:
            population.v = haar_orthogonal(design.n, design.seed_v1);
            population.lambda = lambda_one(design.n, design.seed_bulk);
            break;
        case DesignName::sigma2:
            population.v = haar_orthogonal(design.n, design.seed_v1);
            population.lambda = lambda_two(design.n, design.seed_bulk);
            break;
        case DesignName::sigma3:
            population.v = haar_orthogonal(design.n, design.seed_v2);
            population.lambda = lambda_one(design.n, design.seed_bulk);
            break;
        case DesignName::sigma4:
            population.v = Eigen::MatrixXd::Identity(design.n, design.n);
            population.lambda = lambda_one(design.n, design.seed_bulk);
            break;
        case DesignName::sigma5:
            population.v = rotation_frame(design.n, *design.theta);
            population.lambda = lambda_one(design.n, design.seed_bulk);
            break;
    }
    return population;
}

std::pair<SimDesign, SimDesign> design_pair(DesignName first, DesignName second, int n,
                                            std::optional<double> theta,
                                            Innovation innovation, std::uint64_t seed) {
    SimDesign base;
    base.n = n;
    base.innovation = innovation;
    base.seed_v1 = derive_seed(seed, 11);
    base.seed_v2 = derive_seed(seed, 12);
    base.seed_bulk = derive_seed(seed, 13);

    SimDesign a = base;
    a.name = first;
    if (first == DesignName::sigma5) {
        a.theta = theta;
    }
    SimDesign b = base;
    b.name = second;
    if (second == DesignName::sigma5) {
        b.theta = theta;
    }
    return {a, b};
}

PanelData draw_panel(const Eigen::MatrixXd& v, const Eigen::VectorXd& lambda, int t,
                     Innovation innovation, std::uint64_t seed) {
    const Eigen::Index n = lambda.size();
    if ((lambda.array() < 0.0).any()) {
        throw InvalidDesign("population eigenvalues must be nonnegative");
    }
    if (v.rows() != n || v.cols() != n) {
        throw InvalidDesign("population frame/eigenvalue dimensions disagree");
    }
    if (t < 2) {
        throw InvalidPanel("draw_panel needs T >= 2");
    }

    Rng rng(seed);
    Eigen::MatrixXd z(t, n);
    if (innovation == Innovation::gaussian) {
        for (Eigen::Index i = 0; i < t; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                z(i, j) = rng.normal();
            }
        }
    } else {
        for (Eigen::Index i = 0; i < t; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                z(i, j) = rng.student_t8_standardized();
            }
        }
    }

    PanelData panel;
    panel.values = z * lambda.cwiseSqrt().asDiagonal() * v.transpose();
    panel.labels.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        panel.labels.push_back("s" + std::to_string(j + 1));
    }
    return panel;
}

void validate_experiment(const ExperimentSpec& spec) {
    if (spec.design1.n != spec.design2.n) {
        throw InvalidDesign("the two designs must share the dimension N");
    }
    if (spec.replications < 1) {
        throw InvalidDesign("replications must be >= 1");
    }
    if (spec.t1 < 2 || spec.t2 < 2) {
        throw InvalidDesign("sample sizes must be >= 2");
    }
    if (!(spec.level >= 0.0 && spec.level < 1.0)) {
        throw InvalidLevel("level must lie in [0, 1)");
    }
    if (spec.r_values.empty() || spec.k_values.empty() || spec.tests.empty()) {
        throw InvalidDesign("r_values, k_values and tests must be nonempty");
    }
    for (int r : spec.r_values) {
        if (r < 1 || r >= std::min({spec.design1.n, spec.t1, spec.t2})) {
            throw InvalidDesign("assumed r out of range");
        }
    }
    for (int k : spec.k_values) {
        if (k < 1) {
            throw InvalidDesign("component indices must be >= 1");
        }
    }
}

SizePowerTable run_size_power(const ExperimentSpec& spec) {
    validate_experiment(spec);

    const Population pop1 = build_population(spec.design1);
    const Population pop2 = build_population(spec.design2);

    const int r_max = std::max(*std::max_element(spec.r_values.begin(), spec.r_values.end()),
                               *std::max_element(spec.k_values.begin(), spec.k_values.end()));

    const bool want_eigenvalue =
        std::find(spec.tests.begin(), spec.tests.end(), TestResult::Name::eigenvalue) !=
        spec.tests.end();
    const bool want_ratio = std::find(spec.tests.begin(), spec.tests.end(),
                                      TestResult::Name::ratio) != spec.tests.end();
    const bool want_vector = std::find(spec.tests.begin(), spec.tests.end(),
                                       TestResult::Name::eigenvector) != spec.tests.end();

    // Fixed cell layout: eigenvalue cells first (independent of r_hat),
    // then (ratio, vector) x r_hat x k.
    std::vector<CellKey> keys;
    if (want_eigenvalue) {
        for (int k : spec.k_values) {
            keys.push_back({TestResult::Name::eigenvalue, k, 0});
        }
    }
    for (int r_hat : spec.r_values) {
        for (int k : spec.k_values) {
            if (want_ratio) {
                keys.push_back({TestResult::Name::ratio, k, r_hat});
            }
            if (want_vector) {
                keys.push_back({TestResult::Name::eigenvector, k, r_hat});
            }
        }
    }

    const double z_crit =
        spec.level > 0.0 ? stats::normal_quantile(1.0 - spec.level / 2.0) : 0.0;
    const std::size_t reps = static_cast<std::size_t>(spec.replications);
    std::vector<std::vector<Outcome>> outcomes(reps,
                                               std::vector<Outcome>(keys.size(), Outcome::na));

    parallel_for(reps, spec.threads, [&](std::size_t rep) {
        const std::uint64_t rep_seed = derive_seed(spec.master_seed, kRepStream, rep);
        PanelData panel1 = draw_panel(pop1.v, pop1.lambda, spec.t1, spec.design1.innovation,
                                      derive_seed(rep_seed, kPanel1Stream));
        PanelData panel2 = draw_panel(pop2.v, pop2.lambda, spec.t2, spec.design2.innovation,
                                      derive_seed(rep_seed, kPanel2Stream));
        TwoSampleInput input =
            make_two_sample_input(std::move(panel1), std::move(panel2), r_max, /*demean=*/false);

        auto decide_normal = [&](double stat) {
            return spec.level > 0.0 && std::abs(stat) > z_crit ? Outcome::reject
                                                               : Outcome::retain;
        };

        for (std::size_t c = 0; c < keys.size(); ++c) {
            const CellKey& key = keys[c];
            if (key.r_hat > 0 && key.k > key.r_hat) {
                continue;  // NA cell
            }
            input.r = key.r_hat > 0 ? key.r_hat : r_max;
            try {
                switch (key.test) {
                    case TestResult::Name::eigenvalue:
                        outcomes[rep][c] = decide_normal(test_eigenvalue(input, key.k).statistic);
                        break;
                    case TestResult::Name::ratio:
                        outcomes[rep][c] = decide_normal(test_ratio(input, key.k).statistic);
                        break;
                    case TestResult::Name::eigenvector: {
                        if (spec.level <= 0.0) {
                            outcomes[rep][c] = Outcome::retain;
                            break;
                        }
                        const std::uint64_t mc_seed = derive_seed(
                            rep_seed, kVectorTestStream,
                            static_cast<std::uint64_t>(key.r_hat * 64 + key.k));
                        const TestResult result = test_eigenvector(
                            input, key.k, spec.mc_draws, mc_seed, {spec.level}, 1);
                        outcomes[rep][c] = result.rejected ? Outcome::reject : Outcome::retain;
                        break;
                    }
                }
            } catch (const Error&) {
                outcomes[rep][c] = Outcome::failed;
            }
        }
    });

    SizePowerTable table;
    table.cells.reserve(keys.size());
    for (std::size_t c = 0; c < keys.size(); ++c) {
        SizePowerCell cell;
        cell.test = keys[c].test;
        cell.k = keys[c].k;
        cell.r_hat = keys[c].r_hat;
        cell.is_na = keys[c].r_hat > 0 && keys[c].k > keys[c].r_hat;
        if (!cell.is_na) {
            for (std::size_t rep = 0; rep < reps; ++rep) {
                switch (outcomes[rep][c]) {
                    case Outcome::reject:
                        ++cell.rejections;
                        ++cell.reps_effective;
                        break;
                    case Outcome::retain:
                        ++cell.reps_effective;
                        break;
                    case Outcome::failed:
                        ++cell.failures;
                        break;
                    case Outcome::na:
                        break;
                }
            }
            cell.rate = cell.reps_effective > 0 ? static_cast<double>(cell.rejections) /
                                                      static_cast<double>(cell.reps_effective)
                                                : 0.0;
        }
        table.cells.push_back(cell);
    }
    return table;
}

NullDistributionResult run_null_distribution(const ExperimentSpec& spec, TestResult::Name test,
                                             int k) {
    validate_experiment(spec);
    const Population pop1 = build_population(spec.design1);
    const Population pop2 = build_population(spec.design2);
    const int r_hat = spec.r_values.front();
    const int r_max = std::max(r_hat, *std::max_element(spec.k_values.begin(),
                                                        spec.k_values.end()));
    if (k > r_hat && test != TestResult::Name::eigenvalue) {
        throw InvalidIndex("component k exceeds the assumed r");
    }

    const std::size_t reps = static_cast<std::size_t>(spec.replications);
    std::vector<double> draws(reps, std::numeric_limits<double>::quiet_NaN());
    std::vector<std::optional<QuadFormSpec>> specs(reps);

    parallel_for(reps, spec.threads, [&](std::size_t rep) {
        const std::uint64_t rep_seed = derive_seed(spec.master_seed, kRepStream, rep);
        PanelData panel1 = draw_panel(pop1.v, pop1.lambda, spec.t1, spec.design1.innovation,
                                      derive_seed(rep_seed, kPanel1Stream));
        PanelData panel2 = draw_panel(pop2.v, pop2.lambda, spec.t2, spec.design2.innovation,
                                      derive_seed(rep_seed, kPanel2Stream));
        TwoSampleInput input =
            make_two_sample_input(std::move(panel1), std::move(panel2), r_max, /*demean=*/false);
        input.r = r_hat;
        try {
            switch (test) {
                case TestResult::Name::eigenvalue:
                    draws[rep] = test_eigenvalue(input, k).statistic;
                    break;
                case TestResult::Name::ratio:
                    draws[rep] = test_ratio(input, k).statistic;
                    break;
                case TestResult::Name::eigenvector: {
                    // Statistic only; the spec needed for the reference law
                    // is kept from replication 0.
                    const std::uint64_t mc_seed =
                        derive_seed(rep_seed, kVectorTestStream, static_cast<std::uint64_t>(k));
                    TestResult result =
                        test_eigenvector(input, k, std::max<std::size_t>(spec.mc_draws, 1000),
                                         mc_seed, {0.05}, 1);
                    draws[rep] = result.statistic;
                    if (rep == 0) {
                        specs[rep] = std::move(result.quad_spec);
                    }
                    break;
                }
            }
        } catch (const Error&) {
            // leave NaN; counted below
        }
    });

    NullDistributionResult out;
    out.draws.reserve(reps);
    for (double value : draws) {
        if (std::isnan(value)) {
            ++out.failures;
        } else {
            out.draws.push_back(value);
        }
    }
    if (out.draws.empty()) {
        throw NumericalFailure("all replications failed");
    }

    double sum = 0.0;
    for (double value : out.draws) {
        sum += value;
    }
    out.mean = sum / static_cast<double>(out.draws.size());
    double ss = 0.0;
    for (double value : out.draws) {
        ss += (value - out.mean) * (value - out.mean);
    }
    out.sd = std::sqrt(ss / std::max<std::size_t>(1, out.draws.size() - 1));

    if (test == TestResult::Name::eigenvector) {
        out.reference_spec = specs[0];
        if (out.reference_spec.has_value()) {
            const QuadFormSample reference =
                sample_quadform(*out.reference_spec,
                                std::max<std::size_t>(spec.mc_draws, 20000),
                                derive_seed(spec.master_seed, 0xace5), spec.threads);
            out.ks = stats::ks_distance_two_sample(out.draws, reference.values);
        }
    } else {
        out.ks = stats::ks_distance(out.draws, [](double x) { return stats::normal_cdf(x); });
    }
    return out;
}

}  // namespace prineig
