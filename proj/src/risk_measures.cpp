#include "varlab/risk_measures.hpp"

#include <algorithm>
#include <vector>

namespace varlab {

namespace {

// Stop-loss values at every kink in ascending order, by one backward sweep:
// pi(c) = sum_{v > c} (v - c) p, tracking tail mass and tail first moment.
std::vector<Rational> stop_loss_at(const DiscreteDistribution& d, const std::vector<Rational>& kinks) {
    std::vector<Rational> out(kinks.size());
    const auto& atoms = d.atoms();
    Rational tail_mass;
    Rational tail_moment;
    auto atom = atoms.size();
    for (auto k = kinks.size(); k-- > 0;) {
        while (atom > 0 && atoms[atom - 1].value > kinks[k]) {
            --atom;
            tail_mass += atoms[atom].prob;
            tail_moment += atoms[atom].value * atoms[atom].prob;
        }
        out[k] = tail_moment - kinks[k] * tail_mass;
    }
    return out;
}

}  // namespace

Rational stop_loss(const DiscreteDistribution& d, const Rational& c) {
    Rational total;
    for (const auto& a : d.atoms()) {
        if (a.value > c) total += (a.value - c) * a.prob;
    }
    return total;
}

ConvexOrderVerdict convex_order_leq(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    ConvexOrderVerdict verdict;
    verdict.mean_equal = a.mean() == b.mean();
    if (!verdict.mean_equal) return verdict;

    std::vector<Rational> kinks;
    kinks.reserve(a.size() + b.size());
    for (const auto& x : a.atoms()) kinks.push_back(x.value);
    for (const auto& x : b.atoms()) kinks.push_back(x.value);
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

    const auto lhs = stop_loss_at(a, kinks);
    const auto rhs = stop_loss_at(b, kinks);
    for (std::size_t k = 0; k < kinks.size(); ++k) {
        if (lhs[k] > rhs[k]) {
            verdict.witness_c = kinks[k];
            return verdict;
        }
    }
    verdict.holds = true;
    return verdict;
}

}  // namespace varlab
