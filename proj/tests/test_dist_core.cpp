#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "oracles.hpp"
#include "varlab/distribution.hpp"
#include "varlab/errors.hpp"

using namespace varlab;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

std::vector<Atom> atoms(std::initializer_list<std::pair<Rational, Rational>> list) {
    std::vector<Atom> out;
    for (const auto& [v, p] : list) out.push_back({v, p});
    return out;
}

JointDiscreteDistribution joint(std::vector<WeightedPoint> pts) {
    return JointDiscreteDistribution::from_weighted_points(std::move(pts));
}

}  // namespace

TEST(Rational, LowestTermsAndExactEquality) {
    EXPECT_EQ(R(2, 4), R(1, 2));
    EXPECT_EQ(R(3, -6).to_string(), "-1/2");
    EXPECT_EQ(R(5).to_string(), "5/1");
    EXPECT_LT(R(1, 3), R(34, 100));
    EXPECT_THROW(R(1, 0), std::invalid_argument);
    EXPECT_THROW(R(1) / R(0), std::domain_error);
}

TEST(Rational, ParsesDecimalsExactly) {
    EXPECT_EQ(Rational::parse("0.25"), R(1, 4));
    EXPECT_EQ(Rational::parse("-1.5"), R(-3, 2));
    EXPECT_EQ(Rational::parse("0.1"), R(1, 10));
    EXPECT_EQ(Rational::parse("2.5e-2"), R(1, 40));
    EXPECT_EQ(Rational::parse("3E2"), R(300));
    EXPECT_EQ(Rational::parse(" 7 "), R(7));
    EXPECT_EQ(Rational::parse(".5"), R(1, 2));
    EXPECT_EQ(Rational::parse("-4/6"), R(-2, 3));
    for (const char* bad : {"", "abc", "1.2.3", "1/0", "1/-2", "--1", "1e", ".", "0x10", "nan"}) {
        EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
    }
}

TEST(Rational, DecimalRendering) {
    EXPECT_EQ(R(1, 4).to_decimal_or_fraction(), "0.25");
    EXPECT_EQ(R(-3, 2).to_decimal_or_fraction(), "-1.5");
    EXPECT_EQ(R(7).to_decimal_or_fraction(), "7");
    EXPECT_EQ(R(1, 3).to_decimal_or_fraction(), "1/3");
    EXPECT_EQ(R(-1, 80).to_decimal_or_fraction(), "-0.0125");
    std::mt19937_64 rng(11);
    for (int t = 0; t < 300; ++t) {
        const Rational r(std::uniform_int_distribution<long>(-100000, 100000)(rng),
                         std::uniform_int_distribution<long>(1, 4000)(rng));
        EXPECT_EQ(Rational::parse(r.to_decimal_or_fraction()), r);
    }
}

TEST(FromWeightedValues, MergesAndNormalizes) {
    EXPECT_EQ(DiscreteDistribution::from_weighted_values({{R(1), R(1)}, {R(1), R(1)}, {R(3), R(2)}}).atoms(),
              atoms({{R(1), R(1, 2)}, {R(3), R(1, 2)}}));
    EXPECT_EQ(DiscreteDistribution::from_weighted_values({{R(0), R(7)}, {R(1), R(3)}}).atoms(),
              atoms({{R(0), R(7, 10)}, {R(1), R(3, 10)}}));
    EXPECT_EQ(DiscreteDistribution::from_weighted_values({{R(5), R(1)}}).atoms(), atoms({{R(5), R(1)}}));
}

TEST(FromWeightedValues, SortsAndDropsZeroWeights) {
    const auto d = DiscreteDistribution::from_weighted_values({{R(4), R(1)}, {R(-2), R(0)}, {R(1), R(3)}});
    EXPECT_EQ(d.atoms(), atoms({{R(1), R(3, 4)}, {R(4), R(1, 4)}}));
}

TEST(FromWeightedValues, Errors) {
    EXPECT_THROW(DiscreteDistribution::from_weighted_values(std::span<const WeightedValue>{}), InputError);
    EXPECT_THROW(DiscreteDistribution::from_weighted_values({{R(1), R(-1)}, {R(2), R(2)}}), InputError);
    EXPECT_THROW(DiscreteDistribution::from_weighted_values({{R(1), R(0)}}), InputError);
}

TEST(Cdf, Bernoulli) {
    const auto b = DiscreteDistribution::bernoulli(R(3, 10));
    EXPECT_EQ(b.cdf(R(0)), R(7, 10));
    EXPECT_EQ(b.cdf(R(-1)), R(0));
    EXPECT_EQ(b.cdf(R(1)), R(1));
    EXPECT_EQ(b.cdf(R(1, 2)), R(7, 10));
}

TEST(Quantile, LeftContinuousAtBreakpoints) {
    const auto b = DiscreteDistribution::bernoulli(R(3, 10));
    EXPECT_EQ(b.quantile(R(7, 10)), R(0));
    EXPECT_EQ(b.quantile(R(71, 100)), R(1));
    EXPECT_EQ(b.quantile(R(1, 1000)), R(0));
    const auto c = DiscreteDistribution::point_mass(R(42));
    for (const auto& a : {R(1, 100), R(1, 2), R(99, 100)}) EXPECT_EQ(c.quantile(a), R(42));
}

TEST(Quantile, RejectsClosedEndpoints) {
    const auto b = DiscreteDistribution::bernoulli(R(1, 2));
    EXPECT_THROW(b.quantile(R(0)), InputError);
    EXPECT_THROW(b.quantile(R(1)), InputError);
    EXPECT_THROW(b.quantile(R(-1, 2)), InputError);
    EXPECT_EQ(b.quantile_closed(R(1)), R(1));
    EXPECT_THROW(b.quantile_closed(R(0)), InputError);
}

TEST(Marginal, Projection) {
    const auto j1 = joint({{{R(0), R(0)}, R(1, 2)}, {{R(1), R(1)}, R(1, 2)}});
    EXPECT_EQ(marginal(j1, 0).atoms(), atoms({{R(0), R(1, 2)}, {R(1), R(1, 2)}}));

    const auto j2 = joint({{{R(0), R(0)}, R(1, 4)}, {{R(0), R(2)}, R(1, 4)}, {{R(1), R(0)}, R(1, 2)}});
    EXPECT_EQ(marginal(j2, 1).atoms(), atoms({{R(0), R(3, 4)}, {R(2), R(1, 4)}}));

    const auto j3 = joint({{{R(5), R(7)}, R(1)}});
    EXPECT_EQ(marginal(j3, 1), DiscreteDistribution::point_mass(R(7)));
    EXPECT_THROW(marginal(j3, 2), InputError);
}

TEST(SumDistribution, Examples) {
    const auto b = DiscreteDistribution::bernoulli(R(3, 10));
    const std::vector<DiscreteDistribution> pair{b, b};
    const auto indep = JointDiscreteDistribution::independent(pair);
    EXPECT_EQ(indep.size(), 4U);
    EXPECT_EQ(sum_distribution(indep).atoms(), atoms({{R(0), R(49, 100)}, {R(1), R(42, 100)}, {R(2), R(9, 100)}}));

    EXPECT_EQ(sum_distribution(joint({{{R(0), R(0)}, R(1, 2)}, {{R(1), R(1)}, R(1, 2)}})).atoms(),
              atoms({{R(0), R(1, 2)}, {R(2), R(1, 2)}}));
    EXPECT_EQ(sum_distribution(joint({{{R(1), R(2), R(3)}, R(1)}})), DiscreteDistribution::point_mass(R(6)));
}

TEST(Mean, Examples) {
    EXPECT_EQ(DiscreteDistribution::bernoulli(R(3, 10)).mean(), R(3, 10));
    EXPECT_EQ(DiscreteDistribution::from_weighted_values({{R(0), R(1)}, {R(2), R(1)}}).mean(), R(1));
    EXPECT_EQ(DiscreteDistribution::from_weighted_values({{R(-1), R(1, 3)}, {R(2), R(2, 3)}}).mean(), R(1));
}

TEST(Joint, ConstructionInvariants) {
    const auto j = joint({{{R(1), R(2)}, R(1)}, {{R(1), R(2)}, R(3)}, {{R(0), R(0)}, R(0)}});
    ASSERT_EQ(j.size(), 1U);
    EXPECT_EQ(j.points()[0].prob, R(1));
    EXPECT_THROW(joint({}), InputError);
    EXPECT_THROW(joint({{{R(1)}, R(1)}, {{R(1), R(2)}, R(1)}}), InputError);
    EXPECT_THROW(joint({{{R(1)}, R(-1)}, {{R(2)}, R(2)}}), InputError);
    EXPECT_THROW(joint({{{}, R(1)}}), InputError);
}

TEST(Joint, SizeGuard) {
    std::vector<WeightedPoint> pts;
    for (long k = 0; k <= static_cast<long>(kMaxJointPoints); ++k) pts.push_back({{Rational(k)}, Rational(1)});
    EXPECT_THROW(joint(std::move(pts)), SizeLimitError);
}

// Properties

TEST(DistCoreProperty, GaloisConnection) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 400; ++t) {
        const auto d = oracle::random_law(rng);
        const auto alpha = oracle::random_open_unit(rng, 50);
        const Rational x(std::uniform_int_distribution<long>(-70, 70)(rng), 10);
        EXPECT_EQ(d.quantile(alpha) <= x, alpha <= d.cdf(x));
        EXPECT_EQ(d.quantile(alpha), oracle::quantile(d, alpha));
        EXPECT_EQ(d.cdf(x), oracle::cdf(d, x));
    }
}

TEST(DistCoreProperty, MonotoneAndRightContinuous) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 200; ++t) {
        const auto d = oracle::random_law(rng);
        auto a = oracle::random_open_unit(rng);
        auto b = oracle::random_open_unit(rng);
        if (b < a) std::swap(a, b);
        EXPECT_LE(d.quantile(a), d.quantile(b));

        const Rational x(std::uniform_int_distribution<long>(-70, 70)(rng), 10);
        const Rational y = x + Rational(1, 7);
        EXPECT_LE(d.cdf(x), d.cdf(y));
        // stepwise: F(x) = F(largest atom <= x)
        std::optional<Rational> below;
        for (const auto& atom : d.atoms()) {
            if (atom.value <= x) below = atom.value;
        }
        EXPECT_EQ(d.cdf(x), below ? d.cdf(*below) : Rational(0));
    }
}

TEST(DistCoreProperty, MeanOfSumIsSumOfMarginalMeans) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto j = oracle::random_joint(rng, 1 + t % 4);
        Rational total;
        for (std::size_t i = 0; i < j.dimension(); ++i) total += marginal(j, i).mean();
        EXPECT_EQ(sum_distribution(j).mean(), total);
    }
}

TEST(DistCoreProperty, RecomputationIsIdentical) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const auto d = oracle::random_law(rng, 8);
        std::vector<WeightedValue> pairs;
        for (const auto& a : d.atoms()) pairs.push_back({a.value, a.prob});
        const auto again = DiscreteDistribution::from_weighted_values(pairs);
        EXPECT_EQ(again.breakpoints(), d.breakpoints());
        EXPECT_EQ(d.breakpoints().back(), Rational(1));
        for (const auto& b : d.breakpoints()) EXPECT_EQ(again.quantile_closed(b), d.quantile_closed(b));
    }
}

TEST(DistCoreProperty, SharedAcrossThreads) {
    std::mt19937_64 rng(5);
    const auto d = oracle::random_law(rng, 8);
    std::vector<Rational> results(4);
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < results.size(); ++w) {
            pool.emplace_back([&, w] { results[w] = d.quantile(Rational(1, 2)) + d.mean(); });
        }
    }
    for (const auto& r : results) EXPECT_EQ(r, results.front());
}
