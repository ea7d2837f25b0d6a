#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "varlab/rational.hpp"

namespace varlab {

/// Joints larger than this are rejected to keep exact convolution tractable.
inline constexpr std::size_t kMaxJointPoints = 100'000;

struct Atom {
    Rational value;
    Rational prob;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct WeightedValue {
    Rational value;
    Rational weight;
};

/// Finite discrete law on the rationals.
///
/// Atoms are sorted by strictly increasing value, every probability is
/// positive and they sum to exactly one. Instances are immutable.
class DiscreteDistribution {
public:
    /// Normalizes weights, merges duplicate values and drops zero weights.
    /// Throws InputError on empty input, a negative weight or zero total weight.
    static DiscreteDistribution from_weighted_values(std::span<const WeightedValue> pairs);
    static DiscreteDistribution from_weighted_values(std::initializer_list<WeightedValue> pairs) {
        return from_weighted_values(std::span<const WeightedValue>(pairs.begin(), pairs.size()));
    }

    static DiscreteDistribution point_mass(const Rational& value);
    static DiscreteDistribution bernoulli(const Rational& p);

    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }

    /// Cumulative probabilities F(v_1) < ... < F(v_k) = 1, one per atom.
    /// These are exactly the jump levels of the quantile function.
    const std::vector<Rational>& breakpoints() const noexcept { return cumulative_; }

    const Rational& min_value() const { return atoms_.front().value; }
    const Rational& max_value() const { return atoms_.back().value; }

    /// P(X <= x).
    Rational cdf(const Rational& x) const;

    /// inf{x : F(x) >= alpha} for alpha in (0,1); throws InputError otherwise.
    const Rational& quantile(const Rational& alpha) const;

    /// Same as quantile but also accepts alpha = 1 (largest atom), which is
    /// the value on the last interval (b_{k-1}, 1].
    const Rational& quantile_closed(const Rational& alpha) const;

    Rational mean() const;

    /// Law of X + c.
    DiscreteDistribution shifted(const Rational& c) const;
    /// Law of lambda * X, lambda > 0.
    DiscreteDistribution scaled(const Rational& lambda) const;

    friend bool operator==(const DiscreteDistribution& a, const DiscreteDistribution& b) {
        return a.atoms_ == b.atoms_;
    }

private:
    explicit DiscreteDistribution(std::vector<Atom> atoms);

    std::vector<Atom> atoms_;
    std::vector<Rational> cumulative_;
};

struct JointPoint {
    std::vector<Rational> coords;
    Rational prob;

    friend bool operator==(const JointPoint&, const JointPoint&) = default;
};

struct WeightedPoint {
    std::vector<Rational> coords;
    Rational weight;
};

/// Finite discrete law of a random vector (X_1, ..., X_n).
///
/// Points are distinct, sorted lexicographically by coordinates, carry
/// positive probabilities summing to one. The point set is the support.
class JointDiscreteDistribution {
public:
    /// Throws InputError on empty input, ragged tuples, negative or zero total
    /// weight; SizeLimitError above kMaxJointPoints distinct points.
    static JointDiscreteDistribution from_weighted_points(std::vector<WeightedPoint> points);

    /// Product coupling of the given marginals.
    static JointDiscreteDistribution independent(std::span<const DiscreteDistribution> marginals);

    std::size_t dimension() const noexcept { return dimension_; }
    const std::vector<JointPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

    friend bool operator==(const JointDiscreteDistribution&, const JointDiscreteDistribution&) = default;

private:
    JointDiscreteDistribution(std::size_t dimension, std::vector<JointPoint> points)
        : dimension_(dimension), points_(std::move(points)) {}

    std::size_t dimension_ = 0;
    std::vector<JointPoint> points_;
};

/// Law of the i-th coordinate, 0-based; throws InputError if out of range.
DiscreteDistribution marginal(const JointDiscreteDistribution& joint, std::size_t index);

std::vector<DiscreteDistribution> marginals(const JointDiscreteDistribution& joint);

/// Exact law of X_1 + ... + X_n.
DiscreteDistribution sum_distribution(const JointDiscreteDistribution& joint);

/// Sorted union of the breakpoints of all given laws.
std::vector<Rational> merged_breakpoints(std::span<const DiscreteDistribution> laws);

}  // namespace varlab
