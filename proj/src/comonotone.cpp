#include "varlab/comonotone.hpp"

#include <algorithm>
#include <string>

#include "varlab/errors.hpp"

namespace varlab {

namespace {

bool componentwise_leq(const Point& a, const Point& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
    }
    return true;
}

Rational coordinate_sum(const Point& p) {
    Rational s;
    for (const auto& c : p) s += c;
    return s;
}

}  // namespace

ComonotoneVerdict is_comonotonic_support(std::span<const Point> points) {
    if (points.empty()) throw InputError("comonotonicity check needs a non-empty point set");
    const std::size_t n = points.front().size();
    if (n == 0) throw InputError("points must have dimension >= 1");
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k].size() != n) {
            throw InputError("point " + std::to_string(k) + " has dimension " +
                             std::to_string(points[k].size()) + ", expected " + std::to_string(n));
        }
    }

    std::vector<std::pair<Rational, const Point*>> keyed;
    keyed.reserve(points.size());
    for (const auto& p : points) keyed.emplace_back(coordinate_sum(p), &p);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return std::lexicographical_compare(a.second->begin(), a.second->end(), b.second->begin(),
                                            b.second->end());
    });

    ComonotoneVerdict verdict;
    for (std::size_t k = 1; k < keyed.size(); ++k) {
        const Point& lo = *keyed[k - 1].second;
        const Point& hi = *keyed[k].second;
        if (lo == hi) continue;
        // lo != hi with sum(lo) <= sum(hi): failing lo <= hi means some
        // coordinate falls, and the sum forces another one to rise.
        if (!componentwise_leq(lo, hi)) {
            verdict.comonotonic = false;
            verdict.witness = std::make_pair(lo, hi);
            return verdict;
        }
    }
    return verdict;
}

ComonotoneVerdict is_comonotonic(const JointDiscreteDistribution& joint) {
    std::vector<Point> support;
    support.reserve(joint.size());
    for (const auto& p : joint.points()) support.push_back(p.coords);
    return is_comonotonic_support(support);
}

JointDiscreteDistribution comonotonic_coupling(std::span<const DiscreteDistribution> marginals) {
    if (marginals.empty()) throw InputError("comonotonic coupling needs at least one marginal");
    const auto levels = merged_breakpoints(marginals);

    std::vector<WeightedPoint> points;
    points.reserve(levels.size());
    std::vector<std::size_t> cursor(marginals.size(), 0);
    Rational previous;
    for (const auto& level : levels) {
        Point coords;
        coords.reserve(marginals.size());
        for (std::size_t i = 0; i < marginals.size(); ++i) {
            // left-continuous inverse: first atom whose cumulative reaches level
            const auto& cum = marginals[i].breakpoints();
            while (cum[cursor[i]] < level) ++cursor[i];
            coords.push_back(marginals[i].atoms()[cursor[i]].value);
        }
        points.push_back({std::move(coords), level - previous});
        previous = level;
    }
    return JointDiscreteDistribution::from_weighted_points(std::move(points));
}

bool min_copula_check(const JointDiscreteDistribution& joint) {
    const std::size_t n = joint.dimension();
    const auto laws = marginals(joint);

    std::vector<std::size_t> extent(n);
    std::vector<std::size_t> stride(n);
    std::size_t cells = 1;
    for (std::size_t i = n; i-- > 0;) {
        extent[i] = laws[i].size();
        stride[i] = cells;
        if (cells > kMaxCopulaGrid / extent[i]) {
            throw SizeLimitError("support grid exceeds " + std::to_string(kMaxCopulaGrid) + " cells");
        }
        cells *= extent[i];
    }

    // point masses on the grid, then cumulative sums along each axis
    std::vector<Rational> cdf(cells);
    for (const auto& p : joint.points()) {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& atoms = laws[i].atoms();
            auto it = std::lower_bound(atoms.begin(), atoms.end(), p.coords[i],
                                       [](const Atom& a, const Rational& v) { return a.value < v; });
            flat += static_cast<std::size_t>(it - atoms.begin()) * stride[i];
        }
        cdf[flat] += p.prob;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t flat = 0; flat < cells; ++flat) {
            if ((flat / stride[i]) % extent[i] != 0) cdf[flat] += cdf[flat - stride[i]];
        }
    }

    for (std::size_t flat = 0; flat < cells; ++flat) {
        const Rational* smallest = nullptr;
        for (std::size_t i = 0; i < n; ++i) {
            const Rational& f = laws[i].breakpoints()[(flat / stride[i]) % extent[i]];
            if (smallest == nullptr || f < *smallest) smallest = &f;
        }
        if (cdf[flat] != *smallest) return false;
    }
    return true;
}

bool e4_check(const JointDiscreteDistribution& joint) {
    const auto laws = marginals(joint);
    return sum_distribution(joint) == sum_distribution(comonotonic_coupling(laws));
}

}  // namespace varlab
