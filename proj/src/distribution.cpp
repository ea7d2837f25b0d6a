#include "varlab/distribution.hpp"

#include <algorithm>
#include <string>

#include "varlab/errors.hpp"

namespace varlab {

namespace {

void require_open_unit(const Rational& alpha) {
    if (alpha.sign() <= 0 || alpha >= Rational(1)) {
        throw InputError("alpha must lie in (0,1), got " + alpha.to_string());
    }
}

bool lex_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    cumulative_.reserve(atoms_.size());
    Rational running;
    for (const auto& a : atoms_) {
        running += a.prob;
        cumulative_.push_back(running);
    }
}

DiscreteDistribution DiscreteDistribution::from_weighted_values(std::span<const WeightedValue> pairs) {
    if (pairs.empty()) throw InputError("distribution needs at least one value");

    std::vector<Atom> atoms;
    atoms.reserve(pairs.size());
    Rational total;
    for (const auto& [value, weight] : pairs) {
        if (weight.sign() < 0) throw InputError("negative weight " + weight.to_string());
        if (weight.is_zero()) continue;
        total += weight;
        atoms.push_back({value, weight});
    }
    if (total.is_zero()) throw InputError("total weight is zero");

    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    std::vector<Atom> merged;
    merged.reserve(atoms.size());
    for (auto& a : atoms) {
        if (!merged.empty() && merged.back().value == a.value) {
            merged.back().prob += a.prob;
        } else {
            merged.push_back(std::move(a));
        }
    }
    if (total != Rational(1)) {
        for (auto& a : merged) a.prob /= total;
    }
    return DiscreteDistribution(std::move(merged));
}

DiscreteDistribution DiscreteDistribution::point_mass(const Rational& value) {
    return DiscreteDistribution({{value, Rational(1)}});
}

DiscreteDistribution DiscreteDistribution::bernoulli(const Rational& p) {
    if (p.sign() < 0 || p > Rational(1)) throw InputError("Bernoulli parameter outside [0,1]");
    return from_weighted_values({{Rational(0), Rational(1) - p}, {Rational(1), p}});
}

Rational DiscreteDistribution::cdf(const Rational& x) const {
    auto it = std::upper_bound(atoms_.begin(), atoms_.end(), x,
                               [](const Rational& v, const Atom& a) { return v < a.value; });
    if (it == atoms_.begin()) return Rational(0);
    return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

const Rational& DiscreteDistribution::quantile(const Rational& alpha) const {
    require_open_unit(alpha);
    return quantile_closed(alpha);
}

const Rational& DiscreteDistribution::quantile_closed(const Rational& alpha) const {
    if (alpha.sign() <= 0 || alpha > Rational(1)) {
        throw InputError("alpha must lie in (0,1], got " + alpha.to_string());
    }
    // first atom whose cumulative probability reaches alpha
    auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), alpha);
    return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].value;
}

Rational DiscreteDistribution::mean() const {
    Rational m;
    for (const auto& a : atoms_) m += a.value * a.prob;
    return m;
}

DiscreteDistribution DiscreteDistribution::shifted(const Rational& c) const {
    std::vector<Atom> out = atoms_;
    for (auto& a : out) a.value += c;
    return DiscreteDistribution(std::move(out));
}

DiscreteDistribution DiscreteDistribution::scaled(const Rational& lambda) const {
    if (lambda.sign() <= 0) throw InputError("scale factor must be positive");
    std::vector<Atom> out = atoms_;
    for (auto& a : out) a.value *= lambda;
    return DiscreteDistribution(std::move(out));
}

JointDiscreteDistribution JointDiscreteDistribution::from_weighted_points(std::vector<WeightedPoint> points) {
    if (points.empty()) throw InputError("joint distribution needs at least one point");
    const std::size_t n = points.front().coords.size();
    if (n == 0) throw InputError("joint distribution needs dimension >= 1");

    Rational total;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (points[k].coords.size() != n) {
            throw InputError("point " + std::to_string(k) + " has " +
                             std::to_string(points[k].coords.size()) + " coordinates, expected " +
                             std::to_string(n));
        }
        if (points[k].weight.sign() < 0) throw InputError("negative weight at point " + std::to_string(k));
        total += points[k].weight;
    }
    if (total.is_zero()) throw InputError("total weight is zero");

    std::erase_if(points, [](const WeightedPoint& p) { return p.weight.is_zero(); });
    std::sort(points.begin(), points.end(),
              [](const WeightedPoint& a, const WeightedPoint& b) { return lex_less(a.coords, b.coords); });

    std::vector<JointPoint> merged;
    merged.reserve(points.size());
    for (auto& p : points) {
        if (!merged.empty() && merged.back().coords == p.coords) {
            merged.back().prob += p.weight;
        } else {
            merged.push_back({std::move(p.coords), std::move(p.weight)});
        }
    }
    if (merged.size() > kMaxJointPoints) {
        throw SizeLimitError("joint has " + std::to_string(merged.size()) +
                             " distinct points, limit is " + std::to_string(kMaxJointPoints));
    }
    if (total != Rational(1)) {
        for (auto& p : merged) p.prob /= total;
    }
    return JointDiscreteDistribution(n, std::move(merged));
}

JointDiscreteDistribution JointDiscreteDistribution::independent(std::span<const DiscreteDistribution> marginals) {
    if (marginals.empty()) throw InputError("need at least one marginal");
    std::size_t count = 1;
    for (const auto& m : marginals) {
        count *= m.size();
        if (count > kMaxJointPoints) throw SizeLimitError("independent coupling exceeds point limit");
    }
    std::vector<WeightedPoint> out{{{}, Rational(1)}};
    for (const auto& m : marginals) {
        std::vector<WeightedPoint> next;
        next.reserve(out.size() * m.size());
        for (const auto& p : out) {
            for (const auto& a : m.atoms()) {
                auto coords = p.coords;
                coords.push_back(a.value);
                next.push_back({std::move(coords), p.weight * a.prob});
            }
        }
        out = std::move(next);
    }
    return from_weighted_points(std::move(out));
}

DiscreteDistribution marginal(const JointDiscreteDistribution& joint, std::size_t index) {
    if (index >= joint.dimension()) {
        throw InputError("marginal index " + std::to_string(index) + " out of range for dimension " +
                         std::to_string(joint.dimension()));
    }
    std::vector<WeightedValue> pairs;
    pairs.reserve(joint.size());
    for (const auto& p : joint.points()) pairs.push_back({p.coords[index], p.prob});
    return DiscreteDistribution::from_weighted_values(pairs);
}

std::vector<DiscreteDistribution> marginals(const JointDiscreteDistribution& joint) {
    std::vector<DiscreteDistribution> out;
    out.reserve(joint.dimension());
    for (std::size_t i = 0; i < joint.dimension(); ++i) out.push_back(marginal(joint, i));
    return out;
}

DiscreteDistribution sum_distribution(const JointDiscreteDistribution& joint) {
    std::vector<WeightedValue> pairs;
    pairs.reserve(joint.size());
    for (const auto& p : joint.points()) {
        Rational s;
        for (const auto& c : p.coords) s += c;
        pairs.push_back({std::move(s), p.prob});
    }
    return DiscreteDistribution::from_weighted_values(pairs);
}

std::vector<Rational> merged_breakpoints(std::span<const DiscreteDistribution> laws) {
    std::vector<Rational> all;
    for (const auto& d : laws) all.insert(all.end(), d.breakpoints().begin(), d.breakpoints().end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

}  // namespace varlab
