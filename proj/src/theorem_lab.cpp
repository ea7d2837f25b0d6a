#include "varlab/theorem_lab.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <numeric>
#include <thread>

#include "varlab/comonotone.hpp"
#include "varlab/errors.hpp"

namespace varlab {

std::string_view to_symbol(Relation r) {
    switch (r) {
        case Relation::Less: return "<";
        case Relation::Equal: return "=";
        case Relation::Greater: return ">";
    }
    return "?";
}

Relation compare(const Rational& lhs, const Rational& rhs) {
    if (lhs < rhs) return Relation::Less;
    if (lhs > rhs) return Relation::Greater;
    return Relation::Equal;
}

std::vector<Rational> critical_alphas(const JointDiscreteDistribution& joint) {
    auto laws = marginals(joint);
    laws.push_back(sum_distribution(joint));
    return merged_breakpoints(laws);
}

SubadditivityReport check_subadditivity_all_alpha(const JointDiscreteDistribution& joint) {
    const auto laws = marginals(joint);
    const auto total = sum_distribution(joint);

    SubadditivityReport report;
    {
        auto all = laws;
        all.push_back(total);
        report.breakpoints = merged_breakpoints(all);
    }
    report.verdicts.reserve(report.breakpoints.size());

    Rational lo;
    for (const auto& level : report.breakpoints) {
        IntervalVerdict v;
        v.alpha_lo = lo;
        v.alpha_star = level;
        v.var_sum = total.quantile_closed(level);
        for (const auto& d : laws) v.sum_of_vars += d.quantile_closed(level);
        v.relation = compare(v.var_sum, v.sum_of_vars);

        if (v.relation != Relation::Equal) report.additive_everywhere = false;
        if (v.relation == Relation::Greater) {
            report.subadditive_everywhere = false;
            if (!report.first_violation) report.first_violation = level;
        }
        report.verdicts.push_back(std::move(v));
        lo = level;
    }
    return report;
}

TrialVerdict theorem_equivalence_trial(const JointDiscreteDistribution& joint) {
    TrialVerdict t;
    t.comonotonic = is_comonotonic(joint).comonotonic;
    const auto report = check_subadditivity_all_alpha(joint);
    t.subadditive_everywhere = report.subadditive_everywhere;
    t.additive_everywhere = report.additive_everywhere;
    t.consistent = t.comonotonic == t.subadditive_everywhere && t.subadditive_everywhere == t.additive_everywhere;
    return t;
}

BernoulliCounterexample bernoulli_counterexample(const Rational& p, const Rational& q, const Rational& alpha) {
    const Rational one(1);
    for (const Rational* r : {&p, &q, &alpha}) {
        if (r->sign() <= 0 || *r >= one) throw InputError("parameters must lie in (0,1)");
    }
    const auto x = DiscreteDistribution::bernoulli(p);
    const auto y = DiscreteDistribution::bernoulli(q);
    const std::vector<DiscreteDistribution> pair{x, y};
    const auto joint = JointDiscreteDistribution::independent(pair);

    BernoulliCounterexample out;
    out.precondition = (one - p) * (one - q) < alpha && alpha < one - max(p, q);
    out.var_x = x.quantile(alpha);
    out.var_y = y.quantile(alpha);
    out.var_sum = sum_distribution(joint).quantile(alpha);
    out.superadditive = out.var_sum > out.var_x + out.var_y;
    return out;
}

namespace {

void validate(const GeneratorSpec& spec) {
    if (spec.dimension < 1) throw InputError("generator dimension must be >= 1");
    if (spec.max_atoms < 1) throw InputError("generator max_atoms must be >= 1");
    if (spec.value_min > spec.value_max) throw InputError("generator value range is empty");
    if (spec.value_denominator < 1) throw InputError("generator value denominator must be >= 1");
    if (spec.denom_bound < 1) throw InputError("generator denominator bound must be >= 1");
}

DiscreteDistribution random_marginal(std::mt19937_64& rng, const GeneratorSpec& spec) {
    const long lo = spec.value_min * spec.value_denominator;
    const long hi = spec.value_max * spec.value_denominator;
    const auto grid = static_cast<std::size_t>(hi - lo + 1);
    const auto atom_cap = std::min({spec.max_atoms, grid, static_cast<std::size_t>(spec.denom_bound)});

    const auto k = std::uniform_int_distribution<std::size_t>(1, atom_cap)(rng);
    const auto den = std::uniform_int_distribution<long>(static_cast<long>(k), spec.denom_bound)(rng);

    // k distinct grid values
    std::vector<long> values(grid);
    std::iota(values.begin(), values.end(), lo);
    std::shuffle(values.begin(), values.end(), rng);
    values.resize(k);

    // composition of den into k positive parts via k-1 distinct cuts
    std::vector<long> cuts(static_cast<std::size_t>(den - 1));
    std::iota(cuts.begin(), cuts.end(), 1L);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(k - 1);
    cuts.push_back(0);
    cuts.push_back(den);
    std::sort(cuts.begin(), cuts.end());

    std::vector<WeightedValue> pairs;
    pairs.reserve(k);
    for (std::size_t a = 0; a < k; ++a) {
        pairs.push_back({Rational(values[a], spec.value_denominator), Rational(cuts[a + 1] - cuts[a], den)});
    }
    return DiscreteDistribution::from_weighted_values(pairs);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::vector<DiscreteDistribution> random_marginals(std::mt19937_64& rng, const GeneratorSpec& spec) {
    validate(spec);
    std::vector<DiscreteDistribution> out;
    out.reserve(spec.dimension);
    for (std::size_t i = 0; i < spec.dimension; ++i) out.push_back(random_marginal(rng, spec));
    return out;
}

JointDiscreteDistribution random_comonotonic(std::uint64_t seed, const GeneratorSpec& spec) {
    std::mt19937_64 rng(seed);
    const auto laws = random_marginals(rng, spec);
    return comonotonic_coupling(laws);
}

mpz_class common_denominator(std::span<const DiscreteDistribution> marginals) {
    mpz_class d = 1;
    for (const auto& m : marginals) {
        for (const auto& a : m.atoms()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), a.prob.raw().get_den_mpz_t());
    }
    return d;
}

JointDiscreteDistribution coupling_from_permutations(std::span<const DiscreteDistribution> marginals,
                                                     std::span<const std::vector<std::uint32_t>> perms) {
    if (marginals.empty()) throw InputError("coupling needs at least one marginal");
    if (perms.size() != marginals.size()) throw InputError("one permutation per marginal required");
    const mpz_class grid = common_denominator(marginals);
    if (grid > static_cast<unsigned long>(kMaxJointPoints)) {
        throw SizeLimitError("common denominator " + grid.get_str() + " exceeds the point limit");
    }
    const auto cells = static_cast<std::size_t>(grid.get_ui());
    const std::size_t n = marginals.size();

    // atom index of F_i^{-1}((u+1)/D) for every cell u
    std::vector<std::vector<std::uint32_t>> atom_of(n, std::vector<std::uint32_t>(cells));
    for (std::size_t i = 0; i < n; ++i) {
        if (perms[i].size() != cells) throw InputError("permutation length must equal the common denominator");
        std::vector<bool> seen(cells, false);
        for (const auto u : perms[i]) {
            if (u >= cells || seen[u]) throw InputError("not a permutation of the probability grid");
            seen[u] = true;
        }
        const auto& cum = marginals[i].breakpoints();
        std::uint32_t a = 0;
        for (std::size_t u = 0; u < cells; ++u) {
            const Rational level(mpq_class(mpz_class(static_cast<unsigned long>(u + 1)), grid));
            while (cum[a] < level) ++a;
            atom_of[i][u] = a;
        }
    }

    std::map<std::vector<std::uint32_t>, std::size_t> counts;
    std::vector<std::uint32_t> key(n);
    for (std::size_t u = 0; u < cells; ++u) {
        for (std::size_t i = 0; i < n; ++i) key[i] = atom_of[i][perms[i][u]];
        ++counts[key];
    }

    std::vector<WeightedPoint> points;
    points.reserve(counts.size());
    for (const auto& [idx, count] : counts) {
        std::vector<Rational> coords;
        coords.reserve(n);
        for (std::size_t i = 0; i < n; ++i) coords.push_back(marginals[i].atoms()[idx[i]].value);
        points.push_back({std::move(coords), Rational(static_cast<long>(count))});
    }
    return JointDiscreteDistribution::from_weighted_points(std::move(points));
}

JointDiscreteDistribution random_coupling(std::uint64_t seed, const GeneratorSpec& spec,
                                          std::vector<DiscreteDistribution>* drawn) {
    std::mt19937_64 rng(seed);
    auto laws = random_marginals(rng, spec);
    const mpz_class grid = common_denominator(laws);
    if (grid > static_cast<unsigned long>(kMaxJointPoints)) {
        throw SizeLimitError("common denominator " + grid.get_str() + " exceeds the point limit");
    }
    const auto cells = static_cast<std::size_t>(grid.get_ui());

    std::vector<std::vector<std::uint32_t>> perms(laws.size(), std::vector<std::uint32_t>(cells));
    std::bernoulli_distribution keep_identity(0.25);
    for (std::size_t i = 0; i < laws.size(); ++i) {
        std::iota(perms[i].begin(), perms[i].end(), 0U);
        if (i > 0 && !keep_identity(rng)) std::shuffle(perms[i].begin(), perms[i].end(), rng);
    }
    auto joint = coupling_from_permutations(laws, perms);
    if (drawn != nullptr) *drawn = std::move(laws);
    return joint;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t index) {
    return splitmix64(base + static_cast<std::uint64_t>(index));
}

GeneratorSpec trial_spec(const SimulationConfig& config, std::uint64_t seed) {
    GeneratorSpec spec = config.generator;
    spec.dimension = 1 + static_cast<std::size_t>(splitmix64(seed ^ 0xd1b54a32d192ed03ULL) %
                                                  std::max<std::size_t>(config.max_dimension, 1));
    return spec;
}

SimulationSummary run_simulation(const SimulationConfig& config, TrialKind kind) {
    const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(config.trials, 1));
    std::vector<SimulationSummary> partial(workers);
    std::vector<std::exception_ptr> failures(workers);

    auto work = [&](std::size_t w) noexcept {
        auto& s = partial[w];
        try {
            for (std::size_t t = w; t < config.trials; t += workers) {
                const auto seed = trial_seed(config.seed, t);
                const auto spec = trial_spec(config, seed);
                const auto joint = kind == TrialKind::Comonotonic ? random_comonotonic(seed, spec)
                                                                  : random_coupling(seed, spec);
                const auto v = theorem_equivalence_trial(joint);
                ++s.trials;
                s.comonotonic += v.comonotonic;
                s.subadditive += v.subadditive_everywhere;
                s.additive += v.additive_everywhere;
                s.consistent += v.consistent;
                if (!v.consistent) s.inconsistent_seeds.push_back(seed);
            }
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }

    for (const auto& f : failures) {
        if (f) std::rethrow_exception(f);
    }

    SimulationSummary total;
    for (const auto& s : partial) {
        total.trials += s.trials;
        total.comonotonic += s.comonotonic;
        total.subadditive += s.subadditive;
        total.additive += s.additive;
        total.consistent += s.consistent;
        total.inconsistent_seeds.insert(total.inconsistent_seeds.end(), s.inconsistent_seeds.begin(),
                                        s.inconsistent_seeds.end());
    }
    std::sort(total.inconsistent_seeds.begin(), total.inconsistent_seeds.end());
    return total;
}

}  // namespace varlab
