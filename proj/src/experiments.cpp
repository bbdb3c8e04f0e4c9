#include "iqf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iqf/orders.hpp"

namespace iqf {

namespace {

constexpr double kMassTol = 1e-12;

std::vector<double> merged_grid(const std::vector<double>& a,
                                const std::vector<double>& b) {
    std::vector<double> g;
    g.reserve(a.size() + b.size());
    g.insert(g.end(), a.begin(), a.end());
    g.insert(g.end(), b.begin(), b.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

}  // namespace

BinaryExperiment::BinaryExperiment(AtomicDistribution mu) : mu_(std::move(mu)) {
    if (mu_.locations().front() < -kMassTol)
        throw std::invalid_argument("BinaryExperiment: likelihood ratios must be nonnegative");
    if (mu_.mean() > 1.0 + kMassTol)
        throw std::invalid_argument("BinaryExperiment: mean of the ratio law exceeds 1");
}

BinaryExperiment BinaryExperiment::from_measures(std::span<const double> p,
                                                 std::span<const double> p_prime) {
    if (p.size() != p_prime.size() || p.empty())
        throw std::invalid_argument("from_measures: measures must have equal positive length");
    long double sp = 0.0L, sq = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || p_prime[i] < 0.0)
            throw std::invalid_argument("from_measures: negative mass");
        sp += p[i];
        sq += p_prime[i];
    }
    if (std::abs(static_cast<double>(sp) - 1.0) > 1e-9 ||
        std::abs(static_cast<double>(sq) - 1.0) > 1e-9)
        throw std::invalid_argument("from_measures: measures must sum to 1");
    std::vector<AtomicDistribution::Atom> atoms;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > 0.0) atoms.push_back({p_prime[i] / p[i], p[i]});
    return BinaryExperiment(AtomicDistribution::from_points(std::move(atoms)));
}

ConvexPWL risk_function(const BinaryExperiment& E) {
    return iqf(E.mu().negate());
}

bool power_region_contains(const BinaryExperiment& E, double u, double v) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) return false;
    const ConvexPWL r = risk_function(E);
    return r.evaluate(1.0 - u) <= v + kMassTol &&
           v <= 1.0 - r.evaluate(u) + kMassTol;
}

double ConcavePWL::evaluate(double x) const {
    if (x <= u.front()) return value.front();
    if (x >= u.back()) return value.back();
    const auto it = std::upper_bound(u.begin(), u.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - u.begin());
    const double t = (x - u[i - 1]) / (u[i] - u[i - 1]);
    return value[i - 1] + t * (value[i] - value[i - 1]);
}

double bayes_risk(const BinaryExperiment& E, double pi) {
    if (!(pi >= 0.0 && pi <= 1.0))
        throw std::domain_error("bayes_risk: pi must lie in [0,1]");
    if (pi == 0.0 || pi == 1.0) return 0.0;
    const ConvexPWL phi = idf(E.mu());
    return 1.0 - pi - pi * phi.evaluate((1.0 - pi) / pi);
}

ConcavePWL bayes_risk_curve(const BinaryExperiment& E) {
    // one breakpoint per atom of the ratio law, at pi = 1/(1+x)
    std::vector<double> pis{0.0, 1.0};
    for (double x : E.mu().locations()) pis.push_back(1.0 / (1.0 + x));
    std::sort(pis.begin(), pis.end());
    pis.erase(std::unique(pis.begin(), pis.end()), pis.end());
    ConcavePWL b;
    b.u = std::move(pis);
    b.value.reserve(b.u.size());
    for (double pi : b.u) b.value.push_back(bayes_risk(E, pi));
    return b;
}

ConvexPWL risk_from_bayes(const ConcavePWL& b) {
    if (b.u.size() != b.value.size() || b.u.size() < 2 ||
        b.u.front() != 0.0 || b.u.back() != 1.0)
        throw std::invalid_argument("risk_from_bayes: curve must span [0,1]");
    for (std::size_t i = 0; i < b.u.size(); ++i) {
        const double pi = b.u[i], v = b.value[i];
        if (v < -kDefaultTol || v > std::min(pi, 1.0 - pi) + kDefaultTol)
            throw std::invalid_argument(
                "risk_from_bayes: curve leaves the envelope 0 <= b <= pi ^ (1-pi)");
    }
    // J(x) = x - (1+x) b(1/(1+x)) on x >= 0, zero for x <= 0, is a convex
    // function with slopes in [0,1]; its conjugate reflected at u -> 1-u
    // is the risk function.
    std::vector<double> xs, ys;
    xs.push_back(0.0);
    ys.push_back(0.0);
    for (std::size_t i = b.u.size() - 1; i-- > 1;) {  // interior vertices, pi descending
        const double pi = b.u[i];
        const double x = (1.0 - pi) / pi;
        xs.push_back(x);
        ys.push_back(x - (1.0 + x) * b.value[i]);
    }
    ConvexPWL J(std::move(xs), std::move(ys), 0.0, 1.0);
    const ConvexPWL K = fenchel_conjugate(J);
    // reflect: r(u) = K(1 - u)
    const std::size_t n = K.size();
    std::vector<double> us(n), vs(n);
    for (std::size_t i = 0; i < n; ++i) {
        us[i] = 1.0 - K.breakpoints()[n - 1 - i];
        vs[i] = K.values()[n - 1 - i];
    }
    us.front() = 0.0;
    us.back() = 1.0;
    return ConvexPWL(std::move(us), std::move(vs), 0.0, 0.0, Interval(0.0, 1.0));
}

namespace {

// sup of (bE - bT) over [0,1]; both are PWL so the merged vertex grid is exact
double sup_curve_gap(const ConcavePWL& bE, const ConcavePWL& bT) {
    double s = 0.0;
    for (double pi : merged_grid(bE.u, bT.u))
        s = std::max(s, bE.evaluate(pi) - bT.evaluate(pi));
    return s;
}

}  // namespace

bool more_informative(const BinaryExperiment& E, const BinaryExperiment& E_tilde,
                      double tol) {
    const ConvexPWL rE = risk_function(E);
    const ConvexPWL rT = risk_function(E_tilde);
    bool risk_route = true;
    for (double u : merged_grid(rE.breakpoints(), rT.breakpoints()))
        if (rE.evaluate(u) > rT.evaluate(u) + tol) {
            risk_route = false;
            break;
        }

    const bool bayes_route =
        sup_curve_gap(bayes_risk_curve(E), bayes_risk_curve(E_tilde)) <= tol;
    const bool order_route = leq_decx(E_tilde.mu(), E.mu(), tol).holds;

    if (risk_route != bayes_route || risk_route != order_route)
        throw std::logic_error("more_informative: the three equivalent routes disagree");
    return risk_route;
}

bool epsilon_deficient(const BinaryExperiment& E,
                       const BinaryExperiment& E_tilde, double eps) {
    if (eps < 0.0)
        throw std::invalid_argument("epsilon_deficient: eps must be nonnegative");
    return sup_curve_gap(bayes_risk_curve(E), bayes_risk_curve(E_tilde)) <=
           eps / 2.0 + kMassTol;
}

Deficiency deficiency(const BinaryExperiment& E, const BinaryExperiment& E_tilde) {
    const ConcavePWL bE = bayes_risk_curve(E);
    const ConcavePWL bT = bayes_risk_curve(E_tilde);
    const double d_ET = std::max(0.0, sup_curve_gap(bE, bT)) / 2.0;
    const double d_TE = std::max(0.0, sup_curve_gap(bT, bE)) / 2.0;
    const double Delta = std::max(d_ET, d_TE);

    const double via_levy = levy_distance(repr_cdf(E), repr_cdf(E_tilde)) / 2.0;
    if (std::abs(Delta - via_levy) > 1e-9)
        throw std::logic_error("deficiency: Bayes-sup and Levy routes disagree");
    return {d_ET, Delta};
}

MonotonePWL repr_cdf(const BinaryExperiment& E) {
    const ConvexPWL r = risk_function(E);
    // F(x) = r(1-x) on [0,1), constant 0 below, jump to 1 at x = 1
    std::vector<MonotonePWL::Node> nodes;
    const std::size_t n = r.size();
    for (std::size_t i = n; i-- > 0;) {
        const double x = 1.0 - r.breakpoints()[i];
        if (x >= 1.0) continue;  // folded into the terminal node
        const double y = r.values()[i];
        nodes.push_back({x, y, y});
    }
    nodes.push_back({1.0, r.evaluate(0.0), 1.0});
    return MonotonePWL(std::move(nodes));
}

CanonicalExperiment canonical_experiment(const AtomicDistribution& mu) {
    if (mu.mean() > 1.0 + kMassTol)
        throw std::invalid_argument("canonical_experiment: mean of mu exceeds 1");
    CanonicalExperiment out;
    long double carried = 0.0L;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double x = mu.locations()[i];
        const double m = mu.masses()[i];
        out.ratio.push_back(x);
        out.p.push_back(m);
        out.p_prime.push_back(x * m);
        carried += static_cast<long double>(x) * m;
    }
    out.defect = std::max(0.0, 1.0 - static_cast<double>(carried));
    return out;
}

std::vector<double> experiment_sequence_distance(
    std::span<const BinaryExperiment> seq, const BinaryExperiment& target) {
    std::vector<double> out;
    out.reserve(seq.size());
    for (const auto& e : seq) out.push_back(deficiency(e, target).Delta2);
    return out;
}

}  // namespace iqf
