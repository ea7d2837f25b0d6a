#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "varlab/distribution.hpp"

namespace varlab {

enum class Relation { Less, Equal, Greater };

std::string_view to_symbol(Relation r);
Relation compare(const Rational& lhs, const Rational& rhs);

/// Verdict on one interval (alpha_lo, alpha_star] of confidence levels, on
/// which every quantile in the inequality is constant.
struct IntervalVerdict {
    Rational alpha_lo;
    Rational alpha_star;
    Rational var_sum;      // VaR of X_1 + ... + X_n
    Rational sum_of_vars;  // VaR(X_1) + ... + VaR(X_n)
    Relation relation = Relation::Equal;
};

struct SubadditivityReport {
    std::vector<Rational> breakpoints;
    std::vector<IntervalVerdict> verdicts;
    bool subadditive_everywhere = true;
    bool additive_everywhere = true;
    /// alpha_star of the first interval where VaR(sum) > sum of VaRs.
    std::optional<Rational> first_violation;
};

struct TrialVerdict {
    bool comonotonic = false;
    bool subadditive_everywhere = false;
    bool additive_everywhere = false;
    bool consistent = false;
};

/// Sorted union of the breakpoints of every marginal and of the sum law.
/// Always ends with 1.
std::vector<Rational> critical_alphas(const JointDiscreteDistribution& joint);

/// Exact decision of VaR_a(sum) <= sum VaR_a(X_i) and of equality for all
/// a in (0,1), evaluated once per breakpoint interval at its right end.
SubadditivityReport check_subadditivity_all_alpha(const JointDiscreteDistribution& joint);

/// Comonotonicity, all-level subadditivity and all-level additivity must
/// coincide; consistent is false only for a counterexample.
TrialVerdict theorem_equivalence_trial(const JointDiscreteDistribution& joint);

struct BernoulliCounterexample {
    bool precondition = false;  // (1-p)(1-q) < alpha < 1 - max(p,q)
    Rational var_x;
    Rational var_y;
    Rational var_sum;
    bool superadditive = false;  // var_sum > var_x + var_y
};

/// Independent Bernoulli(p), Bernoulli(q) pair at level alpha.
/// Throws InputError unless p, q, alpha all lie in (0,1).
BernoulliCounterexample bernoulli_counterexample(const Rational& p, const Rational& q, const Rational& alpha);

/// Shape of randomly drawn marginals: values are k distinct multiples of
/// 1/value_denominator in [value_min, value_max], probabilities have
/// denominators at most denom_bound.
struct GeneratorSpec {
    std::size_t dimension = 2;
    std::size_t max_atoms = 8;
    long value_min = -10;
    long value_max = 10;
    long value_denominator = 1;
    long denom_bound = 16;
};

std::vector<DiscreteDistribution> random_marginals(std::mt19937_64& rng, const GeneratorSpec& spec);

/// comonotonic_coupling of freshly drawn marginals; deterministic in seed.
JointDiscreteDistribution random_comonotonic(std::uint64_t seed, const GeneratorSpec& spec);

/// Coupling built on the common probability grid 1/D of the marginals:
/// cell u in dimension i takes the value F_i^{-1}((perm_i[u] + 1) / D).
/// Identity permutations give the comonotonic coupling. Throws
/// SizeLimitError if D exceeds kMaxJointPoints.
JointDiscreteDistribution coupling_from_permutations(std::span<const DiscreteDistribution> marginals,
                                                     std::span<const std::vector<std::uint32_t>> perms);

/// Least common denominator of all marginal probabilities.
mpz_class common_denominator(std::span<const DiscreteDistribution> marginals);

/// Random coupling of freshly drawn marginals; deterministic in seed.
/// The drawn marginals are returned through `drawn` when non-null.
JointDiscreteDistribution random_coupling(std::uint64_t seed, const GeneratorSpec& spec,
                                          std::vector<DiscreteDistribution>* drawn = nullptr);

enum class TrialKind { Comonotonic, Coupling };

struct SimulationConfig {
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    std::size_t max_dimension = 4;
    GeneratorSpec generator;  // dimension is redrawn per trial in [1, max_dimension]
    std::size_t threads = 1;
};

struct SimulationSummary {
    std::size_t trials = 0;
    std::size_t comonotonic = 0;
    std::size_t subadditive = 0;
    std::size_t additive = 0;
    std::size_t consistent = 0;
    std::vector<std::uint64_t> inconsistent_seeds;
};

/// Derived per-trial seed (splitmix64 of base + index).
std::uint64_t trial_seed(std::uint64_t base, std::size_t index);

/// Per-trial generator spec, dimension drawn from the trial seed.
GeneratorSpec trial_spec(const SimulationConfig& config, std::uint64_t seed);

SimulationSummary run_simulation(const SimulationConfig& config, TrialKind kind);

}  // namespace varlab
