#include "iqf/orders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace iqf {

namespace {

// f >= g - tol at the union of breakpoints (both live on [0,1]).
OrderVerdict dominates(const ConvexPWL& f, const ConvexPWL& g, double tol) {
    std::vector<double> us;
    us.reserve(f.size() + g.size());
    us.insert(us.end(), f.breakpoints().begin(), f.breakpoints().end());
    us.insert(us.end(), g.breakpoints().begin(), g.breakpoints().end());
    std::sort(us.begin(), us.end());
    for (double u : us)
        if (f.evaluate(u) < g.evaluate(u) - tol) return {false, u};
    return {true, std::nullopt};
}

}  // namespace

OrderVerdict leq_icx(const AtomicDistribution& X, const AtomicDistribution& Y,
                     double tol) {
    return dominates(iqf_shift1(X), iqf_shift1(Y), tol);
}

OrderVerdict leq_decx(const AtomicDistribution& X, const AtomicDistribution& Y,
                      double tol) {
    return dominates(iqf_shift0(X), iqf_shift0(Y), tol);
}

OrderVerdict leq_cx(const AtomicDistribution& X, const AtomicDistribution& Y,
                    double tol) {
    OrderVerdict up = leq_icx(X, Y, tol);
    if (!up.holds) return up;
    return leq_decx(X, Y, tol);
}

ExtremalBound cantelli_extremal(double sigma, double t) {
    if (!(sigma > 0.0) || !(t > 0.0))
        throw std::invalid_argument("cantelli_extremal: sigma and t must be positive");
    const double p = sigma * sigma / (sigma * sigma + t * t);
    auto law = AtomicDistribution::from_points(
        {{-t * p / (1.0 - p), 1.0 - p}, {t, p}});
    return {p, std::move(law)};
}

ExtremalBound positive_tail_extremal(double a, double b) {
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("positive_tail_extremal: need a in (0,1)");
    if (!(b >= 1.0))
        throw std::invalid_argument(
            "positive_tail_extremal: need b >= 1 for a unit-mean law with second moment b");
    const double p = (1.0 - a) * (1.0 - a) / (b - a * (2.0 - a));
    const double hi = a + (1.0 - a) / p;  // (1 - a(1-p))/p, written to cancel cleanly
    auto law = AtomicDistribution::from_points({{a, 1.0 - p}, {hi, p}});
    return {p, std::move(law)};
}

}  // namespace iqf
