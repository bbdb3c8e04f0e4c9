// Shared test utilities: random generators for laws and PWL functions plus
// independent oracles (stepwise quadrature, direct quantile integration,
// brute-force conjugation and order tests, exact chain enumeration).  The
// oracles deliberately avoid the code paths they are used to check.
#ifndef IQF_TESTS_HELPERS_HPP
#define IQF_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "iqf/dist.hpp"
#include "iqf/skorokhod.hpp"

namespace iqf::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

/// Random atomic law with the given atom-count range and location range.
inline AtomicDistribution random_law(std::mt19937_64& rng, int min_atoms,
                                     int max_atoms, double lo, double hi) {
    std::uniform_int_distribution<int> nd(min_atoms, max_atoms);
    std::uniform_real_distribution<double> xd(lo, hi);
    std::uniform_real_distribution<double> wd(0.05, 1.0);
    const int n = nd(rng);
    std::vector<AtomicDistribution::Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) atoms.push_back({xd(rng), wd(rng)});
    return AtomicDistribution::from_points(std::move(atoms));
}

/// Random law with locations and masses on a coarse grid (exact-ish arithmetic).
inline AtomicDistribution random_grid_law(std::mt19937_64& rng, int max_atoms,
                                          int loc_span = 8, int mass_denom = 16) {
    std::uniform_int_distribution<int> nd(1, max_atoms);
    std::uniform_int_distribution<int> xd(-loc_span, loc_span);
    std::uniform_int_distribution<int> wd(1, mass_denom);
    const int n = nd(rng);
    std::vector<AtomicDistribution::Atom> atoms;
    for (int i = 0; i < n; ++i)
        atoms.push_back({static_cast<double>(xd(rng)), static_cast<double>(wd(rng))});
    return AtomicDistribution::from_points(std::move(atoms));
}

/// Random proper lower-semicontinuous convex PWL function.
inline ConvexPWL random_convex_pwl(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nd(1, 8);
    std::uniform_real_distribution<double> xd(-20.0, 20.0);
    std::uniform_real_distribution<double> sd(0.3, 3.0);
    std::uniform_real_distribution<double> yd(-5.0, 5.0);
    std::bernoulli_distribution cut(0.3);
    const int n = nd(rng);
    std::vector<double> xs;
    for (int i = 0; i < n; ++i) xs.push_back(xd(rng));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    // strictly increasing slopes across the pieces
    std::vector<double> slopes(xs.size() + 1);
    slopes[0] = -sd(rng) * 2.0;
    for (std::size_t i = 1; i < slopes.size(); ++i) slopes[i] = slopes[i - 1] + sd(rng);
    std::vector<double> ys(xs.size());
    ys[0] = yd(rng);
    for (std::size_t i = 1; i < xs.size(); ++i)
        ys[i] = ys[i - 1] + slopes[i] * (xs[i] - xs[i - 1]);
    const bool lcut = cut(rng), rcut = cut(rng);
    std::optional<Interval> dom;
    if (lcut || rcut)
        dom = Interval(lcut ? xs.front() : -inf(), rcut ? xs.back() : inf());
    return ConvexPWL(xs, ys, slopes.front(), slopes.back(), dom);
}

/// Exact stepwise integral of the CDF over [0, x] (integral of a step
/// function, independent of the IDF construction).
inline double oracle_idf(const AtomicDistribution& d, double x) {
    // integrate F over [a, b) piece by piece between atoms
    auto seg = [&](double a, double b) {
        long double s = 0.0L;
        std::vector<double> cuts{a, b};
        for (double t : d.locations())
            if (a < t && t < b) cuts.push_back(t);
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
            s += static_cast<long double>(d.cdf(cuts[i])) * (cuts[i + 1] - cuts[i]);
        return static_cast<double>(s);
    };
    if (x >= 0.0) return seg(0.0, x);
    return -seg(x, 0.0);
}

/// Direct quantile integration: Q(u) = integral of q^L from u0 to u, u0
/// the zero of the IQF.
inline double oracle_iqf(const AtomicDistribution& d, double u) {
    const double u0 = d.cdf(0.0);  // a zero of the IQF
    auto seg = [&](double a, double b) {  // integral of q^L over (a, b)
        if (!(b > a)) return 0.0;
        long double s = 0.0L;
        std::vector<double> cuts{a, b};
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            const double cm = d.cdf(d.locations()[i]);
            if (a < cm && cm < b) cuts.push_back(cm);
        }
        std::sort(cuts.begin(), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            s += static_cast<long double>(d.quantile_left(mid)) * (cuts[i + 1] - cuts[i]);
        }
        return static_cast<double>(s);
    };
    if (u >= u0) return seg(u0, u);
    return -seg(u, u0);
}

/// Brute-force Fenchel transform: for PWL f the sup of xu - f(x) over the
/// breakpoints (and domain ends) is exact whenever u lies between the
/// asymptotic slopes.
inline double oracle_conjugate(const ConvexPWL& f, double u) {
    double best = -inf();
    for (std::size_t i = 0; i < f.size(); ++i)
        best = std::max(best, f.breakpoints()[i] * u - f.values()[i]);
    return best;
}

/// E[(X - x)^+] by direct summation.
inline double oracle_stop_loss(const AtomicDistribution& d, double x) {
    long double s = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i)
        s += static_cast<long double>(std::max(0.0, d.locations()[i] - x)) * d.masses()[i];
    return static_cast<double>(s);
}

/// Increasing convex order by the sufficient test family on atomic laws:
/// stop-loss comparison over the merged atom grid.
inline bool oracle_leq_icx(const AtomicDistribution& X, const AtomicDistribution& Y,
                           double tol = 1e-9) {
    std::vector<double> grid = X.locations();
    grid.insert(grid.end(), Y.locations().begin(), Y.locations().end());
    for (double x : grid)
        if (oracle_stop_loss(X, x) > oracle_stop_loss(Y, x) + tol) return false;
    return true;
}

inline bool oracle_leq_cx(const AtomicDistribution& X, const AtomicDistribution& Y,
                          double tol = 1e-9) {
    return std::abs(X.mean() - Y.mean()) <= tol && oracle_leq_icx(X, Y, tol);
}

/// Exact enumeration of the embedded exit chain's transition tree.
inline std::map<double, double> oracle_chain_law(const EmbeddingPlan& plan,
                                                 const AtomicDistribution& mu0) {
    std::map<double, double> cur;
    for (std::size_t i = 0; i < mu0.size(); ++i)
        cur[mu0.locations()[i]] += mu0.masses()[i];
    for (const Interval& I : plan.intervals) {
        std::map<double, double> next;
        for (const auto& [x, w] : cur) {
            if (x < I.lo || x > I.hi) {
                next[x] += w;
            } else {
                next[I.lo] += w * ((I.hi - x) / (I.hi - I.lo));
                next[I.hi] += w * ((x - I.lo) / (I.hi - I.lo));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

/// Levy distance by bisection on the definition, exact feasibility check
/// per epsilon over the finite vertex structure.
inline double oracle_levy(const MonotonePWL& F, const MonotonePWL& G) {
    auto feasible = [&](double eps) {
        // need F(x-eps)-eps <= G(x) <= F(x+eps)+eps for all x; both sides
        // are piecewise linear in x, so checking at node abscissae of both
        // curves (shifted appropriately) and on both sides of jumps is exact
        std::vector<double> xs;
        for (const auto& nd : G.nodes()) xs.push_back(nd.x);
        for (const auto& nd : F.nodes()) {
            xs.push_back(nd.x + eps);
            xs.push_back(nd.x - eps);
        }
        const double step = 1e-9;
        std::vector<double> probes;
        for (double x : xs) {
            probes.push_back(x - step);
            probes.push_back(x);
            probes.push_back(x + step);
        }
        for (double x : probes) {
            if (F.value(x - eps) - eps > G.value(x) + 1e-12) return false;
            if (G.value(x) > F.value(x + eps) + eps + 1e-12) return false;
        }
        return true;
    };
    double lo = 0.0, hi = 2.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace iqf::testing

#endif  // IQF_TESTS_HELPERS_HPP
