#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "varlab/comonotone.hpp"
#include "varlab/errors.hpp"
#include "varlab/risk_measures.hpp"
#include "varlab/theorem_lab.hpp"

using namespace varlab;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

JointDiscreteDistribution joint(std::vector<WeightedPoint> pts) {
    return JointDiscreteDistribution::from_weighted_points(std::move(pts));
}

JointDiscreteDistribution independent_pair(const Rational& p, const Rational& q) {
    const std::vector<DiscreteDistribution> ms{DiscreteDistribution::bernoulli(p), DiscreteDistribution::bernoulli(q)};
    return JointDiscreteDistribution::independent(ms);
}

// min-copula identity at every grid corner, evaluated by direct summation
bool min_copula_oracle(const JointDiscreteDistribution& j) {
    const auto laws = marginals(j);
    std::vector<oracle::Pt> grid{{}};
    for (const auto& m : laws) {
        std::vector<oracle::Pt> next;
        for (const auto& g : grid) {
            for (const auto& a : m.atoms()) {
                auto h = g;
                h.push_back(a.value);
                next.push_back(std::move(h));
            }
        }
        grid = std::move(next);
    }
    for (const auto& x : grid) {
        Rational smallest(1);
        for (std::size_t i = 0; i < x.size(); ++i) smallest = min(smallest, oracle::cdf(laws[i], x[i]));
        if (oracle::joint_cdf(j, x) != smallest) return false;
    }
    return true;
}

// chain check after sorting by coordinate sum, written independently
bool chain_by_sum(std::vector<oracle::Pt> pts) {
    auto sum = [](const oracle::Pt& p) {
        Rational s;
        for (const auto& c : p) s += c;
        return s;
    };
    std::sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) { return sum(a) < sum(b); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (std::size_t k = 1; k < pts.size(); ++k) {
        for (std::size_t i = 0; i < pts[k].size(); ++i) {
            if (pts[k - 1][i] > pts[k][i]) return false;
        }
    }
    return true;
}

}  // namespace

TEST(IsComonotonicSupport, Examples) {
    const std::vector<Point> crossing{{R(1), R(2)}, {R(3), R(1)}};
    const auto v = is_comonotonic_support(crossing);
    EXPECT_FALSE(v.comonotonic);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(v.witness->first, (Point{R(1), R(2)}));
    EXPECT_EQ(v.witness->second, (Point{R(3), R(1)}));

    const std::vector<Point> chain{{R(1), R(1)}, {R(2), R(3)}, {R(5), R(3)}};
    EXPECT_TRUE(is_comonotonic_support(chain).comonotonic);
    EXPECT_FALSE(is_comonotonic_support(chain).witness);

    const std::vector<Point> single{{R(4), R(-4), R(0)}};
    EXPECT_TRUE(is_comonotonic_support(single).comonotonic);
}

TEST(IsComonotonicSupport, EqualSumsAndDuplicates) {
    const std::vector<Point> tie{{R(0), R(2)}, {R(2), R(0)}};
    EXPECT_FALSE(is_comonotonic_support(tie).comonotonic);
    const std::vector<Point> dup{{R(1), R(1)}, {R(1), R(1)}, {R(0), R(1)}};
    EXPECT_TRUE(is_comonotonic_support(dup).comonotonic);
}

TEST(IsComonotonicSupport, Errors) {
    EXPECT_THROW(is_comonotonic_support(std::vector<Point>{}), InputError);
    const std::vector<Point> mixed{{R(1)}, {R(1), R(2)}};
    EXPECT_THROW(is_comonotonic_support(mixed), InputError);
}

TEST(IsComonotonic, Examples) {
    EXPECT_FALSE(is_comonotonic(independent_pair(R(1, 3), R(3, 5))).comonotonic);
    EXPECT_TRUE(is_comonotonic(joint({{{R(0), R(0)}, R(1, 2)}, {{R(1), R(2)}, R(1, 2)}})).comonotonic);
}

TEST(ComonotonicCoupling, Examples) {
    const auto half = DiscreteDistribution::bernoulli(R(1, 2));
    const std::vector<DiscreteDistribution> sym{half, half};
    EXPECT_EQ(comonotonic_coupling(sym), joint({{{R(0), R(0)}, R(1, 2)}, {{R(1), R(1)}, R(1, 2)}}));

    const std::vector<DiscreteDistribution> ms{
        DiscreteDistribution::from_weighted_values({{R(0), R(2, 5)}, {R(1), R(3, 5)}}),
        DiscreteDistribution::from_weighted_values({{R(0), R(7, 10)}, {R(2), R(3, 10)}})};
    EXPECT_EQ(comonotonic_coupling(ms),
              joint({{{R(0), R(0)}, R(2, 5)}, {{R(1), R(0)}, R(3, 10)}, {{R(1), R(2)}, R(3, 10)}}));

    const auto d = DiscreteDistribution::from_weighted_values({{R(-1), R(1)}, {R(3), R(2)}, {R(8), R(1)}});
    const auto one = comonotonic_coupling(std::vector<DiscreteDistribution>{d});
    ASSERT_EQ(one.size(), d.size());
    for (std::size_t k = 0; k < d.size(); ++k) {
        EXPECT_EQ(one.points()[k].coords, (Point{d.atoms()[k].value}));
        EXPECT_EQ(one.points()[k].prob, d.atoms()[k].prob);
    }
    EXPECT_THROW(comonotonic_coupling(std::vector<DiscreteDistribution>{}), InputError);
}

TEST(MinCopulaCheck, Examples) {
    EXPECT_FALSE(min_copula_check(independent_pair(R(1, 2), R(1, 2))));
    EXPECT_TRUE(min_copula_check(joint({{{R(3), R(-1), R(2)}, R(1)}})));
    const std::vector<DiscreteDistribution> ms{DiscreteDistribution::bernoulli(R(2, 5)),
                                               DiscreteDistribution::bernoulli(R(1, 3))};
    EXPECT_TRUE(min_copula_check(comonotonic_coupling(ms)));
}

TEST(E4Check, Examples) {
    EXPECT_FALSE(e4_check(independent_pair(R(1, 2), R(1, 2))));
    EXPECT_TRUE(e4_check(joint({{{R(0), R(0)}, R(1, 2)}, {{R(1), R(2)}, R(1, 2)}})));
    EXPECT_TRUE(e4_check(joint({{{R(1)}, R(1)}, {{R(5)}, R(2)}})));
}

TEST(ComonotoneProperty, CouplingSoundness) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        std::vector<DiscreteDistribution> ms;
        const int n = 1 + t % 4;
        for (int i = 0; i < n; ++i) ms.push_back(oracle::random_law(rng, 6));
        const auto c = comonotonic_coupling(ms);
        for (int i = 0; i < n; ++i) EXPECT_EQ(marginal(c, static_cast<std::size_t>(i)), ms[static_cast<std::size_t>(i)]);
        EXPECT_TRUE(is_comonotonic(c).comonotonic);
        EXPECT_TRUE(min_copula_check(c));
        EXPECT_TRUE(e4_check(c));
    }
}

TEST(ComonotoneProperty, DetectorsAgreeOnArbitraryJoints) {
    std::mt19937_64 rng(32);
    int positives = 0;
    for (int t = 0; t < 600; ++t) {
        const auto j = oracle::random_joint(rng, 1 + t % 4, 1 + t % 5);
        std::vector<oracle::Pt> pts;
        for (const auto& p : j.points()) pts.push_back(p.coords);

        const auto v = is_comonotonic(j);
        EXPECT_EQ(v.comonotonic, oracle::comonotonic_all_pairs(pts));
        EXPECT_EQ(v.comonotonic, chain_by_sum(pts));
        EXPECT_EQ(v.comonotonic, min_copula_check(j));
        EXPECT_EQ(v.comonotonic, min_copula_oracle(j));
        EXPECT_EQ(v.comonotonic, e4_check(j));
        if (!v.comonotonic) {
            ASSERT_TRUE(v.witness);
            EXPECT_TRUE(oracle::violates(v.witness->first, v.witness->second));
        } else {
            EXPECT_FALSE(v.witness);
        }
        positives += v.comonotonic;
    }
    EXPECT_GT(positives, 50);
    EXPECT_LT(positives, 550);
}

TEST(ComonotoneProperty, ComonotonicSumIsConvexMaximum) {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 300; ++t) {
        const auto j = oracle::random_joint(rng, 2 + t % 3);
        const auto ms = marginals(j);
        const auto verdict = convex_order_leq(sum_distribution(j), sum_distribution(comonotonic_coupling(ms)));
        EXPECT_TRUE(verdict.holds);
        EXPECT_FALSE(verdict.witness_c);
    }
}

TEST(ComonotoneProperty, CopulaGridGuard) {
    std::vector<WeightedPoint> pts;
    for (long k = 0; k < 2100; ++k) pts.push_back({{Rational(k), Rational(-k)}, Rational(1)});
    EXPECT_THROW(min_copula_check(joint(std::move(pts))), SizeLimitError);
}
