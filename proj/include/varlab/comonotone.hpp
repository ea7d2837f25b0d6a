#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "varlab/distribution.hpp"

namespace varlab {

using Point = std::vector<Rational>;

struct ComonotoneVerdict {
    bool comonotonic = true;
    /// Two support points where one coordinate strictly rises while another
    /// strictly falls. Present exactly when comonotonic is false.
    std::optional<std::pair<Point, Point>> witness;
};

/// Decides whether a point set is comonotonic, i.e. totally ordered under
/// the componentwise order.
///
/// Sorts by coordinate sum and checks consecutive pairs: in a chain distinct
/// points have distinct sums and the sum is a linear extension of the
/// componentwise order. Throws InputError on an empty list or mixed
/// dimensions.
ComonotoneVerdict is_comonotonic_support(std::span<const Point> points);

ComonotoneVerdict is_comonotonic(const JointDiscreteDistribution& joint);

/// The quantile-transform coupling (F_1^{-1}(U), ..., F_n^{-1}(U)).
///
/// One point per interval (b_{k-1}, b_k] of the merged marginal breakpoints,
/// with every coordinate evaluated at b_k. Marginals of the result equal
/// the inputs exactly.
JointDiscreteDistribution comonotonic_coupling(std::span<const DiscreteDistribution> marginals);

/// Joint CDF equals min_i F_i(x_i) on the product grid of marginal supports.
/// Throws SizeLimitError when the grid exceeds kMaxCopulaGrid cells.
bool min_copula_check(const JointDiscreteDistribution& joint);

inline constexpr std::size_t kMaxCopulaGrid = 4'000'000;

/// Sum of the joint equals, in law, the sum of the comonotonic coupling of
/// its marginals. The comonotonic sum is the <=_cx maximum of the Frechet
/// class, so this single comparison decides the convex-order condition.
bool e4_check(const JointDiscreteDistribution& joint);

}  // namespace varlab
