#pragma once

#include <optional>

#include "varlab/distribution.hpp"

namespace varlab {

/// VaR_alpha(X) = inf{x : F_X(x) >= alpha}, alpha in (0,1).
inline const Rational& value_at_risk(const DiscreteDistribution& d, const Rational& alpha) {
    return d.quantile(alpha);
}

/// Stop-loss transform E[max(X - c, 0)].
Rational stop_loss(const DiscreteDistribution& d, const Rational& c);

struct ConvexOrderVerdict {
    bool holds = false;
    bool mean_equal = false;
    /// A support point where E[(a-c)+] > E[(b-c)+]; set only when the
    /// means agree and dominance fails.
    std::optional<Rational> witness_c;
};

/// Decides a <=_cx b exactly.
///
/// Both stop-loss transforms are piecewise linear with kinks only on the
/// union of the supports, and equal means make them agree asymptotically
/// on both sides, so checking dominance at every kink is complete.
ConvexOrderVerdict convex_order_leq(const DiscreteDistribution& a, const DiscreteDistribution& b);

}  // namespace varlab
