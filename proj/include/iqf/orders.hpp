#ifndef IQF_ORDERS_HPP
#define IQF_ORDERS_HPP

#include <optional>

#include "iqf/dist.hpp"

namespace iqf {

/// Result of a curve-dominance check; `witness_u` is a vertex at which
/// dominance fails when the verdict is false.
struct OrderVerdict {
    bool holds;
    std::optional<double> witness_u;
    explicit operator bool() const { return holds; }
};

/// X <= Y in increasing convex order: the shift-1 IQF of X dominates the
/// shift-1 IQF of Y.  Two convex PWL curves on [0,1] compare globally iff
/// they compare at the union of their breakpoints, so the check is exact.
OrderVerdict leq_icx(const AtomicDistribution& X, const AtomicDistribution& Y,
                     double tol = kDefaultTol);

/// X <= Y in decreasing convex order: shift-0 IQF dominance; equivalent to
/// leq_icx(-Y, -X).
OrderVerdict leq_decx(const AtomicDistribution& X, const AtomicDistribution& Y,
                      double tol = kDefaultTol);

/// X <= Y in convex order: both of the above.
OrderVerdict leq_cx(const AtomicDistribution& X, const AtomicDistribution& Y,
                    double tol = kDefaultTol);

struct ExtremalBound {
    double bound;
    AtomicDistribution law;
};

/// Sharp upper bound for P(X >= t) over zero-mean laws with variance
/// sigma^2, together with the extremal two-point law attaining it.
ExtremalBound cantelli_extremal(double sigma, double t);

/// Sharp lower bound for P(X > a) over strictly positive laws with mean 1
/// and second moment b, together with the extremal two-point law.
/// Requires 0 < a < 1 and b >= 1.
ExtremalBound positive_tail_extremal(double a, double b);

}  // namespace iqf

#endif  // IQF_ORDERS_HPP
