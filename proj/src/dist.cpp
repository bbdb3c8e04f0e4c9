#include "iqf/dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iqf {

namespace {

constexpr double kAtomMergeTol = 1e-12;  // absolute, on locations

double pos(double x) { return x > 0.0 ? x : 0.0; }
double neg(double x) { return x < 0.0 ? -x : 0.0; }

}  // namespace

AtomicDistribution AtomicDistribution::from_points(std::vector<Atom> atoms) {
    if (atoms.empty())
        throw std::invalid_argument("AtomicDistribution: no atoms");
    for (const Atom& a : atoms)
        if (!std::isfinite(a.x) || !std::isfinite(a.p) || a.p < -kAtomMergeTol)
            throw std::invalid_argument("AtomicDistribution: bad atom");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.x < b.x; });

    AtomicDistribution d;
    long double sum = 0.0L;
    for (const Atom& a : atoms) {
        if (a.p <= 0.0) continue;  // zero-mass entries vanish
        if (!d.x_.empty() && a.x - d.x_.back() <= kAtomMergeTol) {
            d.p_.back() += a.p;
        } else {
            d.x_.push_back(a.x);
            d.p_.push_back(a.p);
        }
        sum += a.p;
    }
    if (d.x_.empty() || sum <= 0.0L)
        throw std::invalid_argument("AtomicDistribution: total mass must be positive");
    const double total = static_cast<double>(sum);
    // masses already normalized up to rounding stay untouched, which keeps
    // serialization round trips bit-faithful
    const bool renormalize = std::abs(total - 1.0) > 1e-14;
    long double cum = 0.0L;
    d.cum_.reserve(d.p_.size());
    for (double& p : d.p_) {
        if (renormalize) p /= total;
        cum += p;
        d.cum_.push_back(static_cast<double>(cum));
    }
    d.cum_.back() = 1.0;  // pin the top of the CDF
    return d;
}

AtomicDistribution AtomicDistribution::from_samples(std::span<const double> values,
                                                    std::span<const double> weights) {
    if (values.empty())
        throw std::invalid_argument("from_samples: empty input");
    if (!weights.empty() && weights.size() != values.size())
        throw std::invalid_argument("from_samples: weights length mismatch");
    std::vector<Atom> atoms;
    atoms.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double w = weights.empty() ? 1.0 : weights[i];
        if (w < 0.0)
            throw std::invalid_argument("from_samples: negative weight");
        atoms.push_back({values[i], w});
    }
    return from_points(std::move(atoms));
}

AtomicDistribution AtomicDistribution::point_mass(double c) {
    return from_points({{c, 1.0}});
}

double AtomicDistribution::cdf(double x) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    return i == 0 ? 0.0 : cum_[i - 1];
}

double AtomicDistribution::cdf_left(double x) const {
    const auto it = std::lower_bound(x_.begin(), x_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - x_.begin());
    return i == 0 ? 0.0 : cum_[i - 1];
}

double AtomicDistribution::quantile_left(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile_left: u must lie in (0,1)");
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
    return x_[static_cast<std::size_t>(it - cum_.begin())];
}

double AtomicDistribution::quantile_right(double u) const {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("quantile_right: u must lie in (0,1)");
    const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    return x_[static_cast<std::size_t>(it - cum_.begin())];
}

double AtomicDistribution::mean() const {
    long double s = 0.0L;
    for (std::size_t i = 0; i < x_.size(); ++i) s += static_cast<long double>(x_[i]) * p_[i];
    return static_cast<double>(s);
}

double AtomicDistribution::pos_part_mean() const {
    long double s = 0.0L;
    for (std::size_t i = 0; i < x_.size(); ++i) s += static_cast<long double>(pos(x_[i])) * p_[i];
    return static_cast<double>(s);
}

double AtomicDistribution::neg_part_mean() const {
    long double s = 0.0L;
    for (std::size_t i = 0; i < x_.size(); ++i) s += static_cast<long double>(neg(x_[i])) * p_[i];
    return static_cast<double>(s);
}

double AtomicDistribution::second_moment() const {
    long double s = 0.0L;
    for (std::size_t i = 0; i < x_.size(); ++i)
        s += static_cast<long double>(x_[i]) * x_[i] * p_[i];
    return static_cast<double>(s);
}

AtomicDistribution AtomicDistribution::negate() const {
    std::vector<Atom> atoms;
    atoms.reserve(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) atoms.push_back({-x_[i], p_[i]});
    return from_points(std::move(atoms));
}

AtomicDistribution AtomicDistribution::abs_law() const {
    std::vector<Atom> atoms;
    atoms.reserve(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) atoms.push_back({std::abs(x_[i]), p_[i]});
    return from_points(std::move(atoms));
}

bool approx_equal(const AtomicDistribution& a, const AtomicDistribution& b,
                  double tol) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!near(a.locations()[i], b.locations()[i], tol)) return false;
        if (!near(a.masses()[i], b.masses()[i], tol)) return false;
    }
    return true;
}

ConvexPWL idf(const AtomicDistribution& d) {
    const auto& x = d.locations();
    const auto& p = d.masses();
    const std::size_t n = x.size();
    std::vector<double> ys(n);
    // direct form Phi(x) = E[(x - X)+ - X-], exact zero at x = 0
    for (std::size_t k = 0; k < n; ++k) {
        long double s = 0.0L;
        for (std::size_t j = 0; j < n; ++j)
            s += static_cast<long double>(pos(x[k] - x[j]) - neg(x[j])) * p[j];
        ys[k] = static_cast<double>(s);
    }
    return ConvexPWL(x, std::move(ys), 0.0, 1.0);
}

ConvexPWL iqf(const AtomicDistribution& d) {
    const auto& x = d.locations();
    const auto& p = d.masses();
    const std::size_t n = x.size();
    // vertices at 0, the interior cumulative masses, and 1; slope on the
    // k-th piece is the k-th atom.  Values are the running integral of the
    // quantile function shifted so that the minimum is zero, i.e. raised
    // by E[X-].
    std::vector<double> us(n + 1), vs(n + 1);
    us[0] = 0.0;
    vs[0] = d.neg_part_mean();
    long double cummass = 0.0L, cumval = vs[0];
    for (std::size_t k = 0; k < n; ++k) {
        cumval += static_cast<long double>(x[k]) * p[k];
        cummass += p[k];
        us[k + 1] = static_cast<double>(cummass);
        vs[k + 1] = static_cast<double>(cumval);
    }
    us[n] = 1.0;
    return ConvexPWL(std::move(us), std::move(vs), 0.0, 0.0, Interval(0.0, 1.0));
}

ConvexPWL iqf_shift0(const AtomicDistribution& d) {
    ConvexPWL q = iqf(d);
    return q.shifted(-q.values().front());
}

ConvexPWL iqf_shift1(const AtomicDistribution& d) {
    ConvexPWL q = iqf(d);
    return q.shifted(-q.values().back());
}

double psi(const AtomicDistribution& d, double x) {
    return idf(d).evaluate(x) + d.neg_part_mean();
}

double stop_loss(const AtomicDistribution& d, double x) {
    return idf(d).evaluate(x) + d.pos_part_mean() - x;
}

double potential(const AtomicDistribution& d, double x) {
    return x - (d.pos_part_mean() + d.neg_part_mean()) - 2.0 * idf(d).evaluate(x);
}

double lorenz(const AtomicDistribution& d, double u) {
    if (!(u >= 0.0 && u <= 1.0))
        throw std::domain_error("lorenz: u must lie in [0,1]");
    return iqf_shift0(d).evaluate(u);
}

double cvar(const AtomicDistribution& d, double u) {
    if (!(u > 0.0 && u <= 1.0))
        throw std::domain_error("cvar: u must lie in (0,1]");
    return iqf_shift0(d).evaluate(u) / u;
}

double hardy_littlewood(const AtomicDistribution& d, double u) {
    if (!(u >= 0.0 && u < 1.0))
        throw std::domain_error("hardy_littlewood: u must lie in [0,1)");
    return iqf_shift1(d).evaluate(u) / (u - 1.0);
}

AtomicDistribution from_idf(const ConvexPWL& J) {
    if (J.left_cut() || J.right_cut())
        throw std::invalid_argument("from_idf: J must be finite on the line");
    if (!near(J.slope_left(), 0.0, kDefaultTol) ||
        !near(J.slope_right(), 1.0, kDefaultTol))
        throw std::invalid_argument("from_idf: asymptotic slopes must be 0 and 1");
    if (!near(J.evaluate(0.0), 0.0, kDefaultTol))
        throw std::invalid_argument("from_idf: J(0) must be 0");
    const std::size_t n = J.size();
    std::vector<AtomicDistribution::Atom> atoms;
    atoms.reserve(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double next = (i + 1 < n) ? J.chord(i) : 1.0;
        if (next < prev - kDefaultTol || next > 1.0 + kDefaultTol)
            throw std::invalid_argument("from_idf: slopes must lie in [0,1]");
        atoms.push_back({J.breakpoints()[i], std::max(0.0, next - prev)});
        prev = next;
    }
    return AtomicDistribution::from_points(std::move(atoms));
}

AtomicDistribution from_iqf(const ConvexPWL& K) {
    if (!K.left_cut() || !K.right_cut() ||
        !near(K.breakpoints().front(), 0.0, kDefaultTol) ||
        !near(K.breakpoints().back(), 1.0, kDefaultTol))
        throw std::invalid_argument("from_iqf: K must be finite exactly on [0,1]");
    double mn = inf();
    for (double v : K.values()) mn = std::min(mn, v);
    if (mn < -kDefaultTol || !near(mn, 0.0, kDefaultTol))
        throw std::invalid_argument("from_iqf: K must be nonnegative with minimum 0");
    const std::size_t n = K.size();
    if (n < 2)
        throw std::invalid_argument("from_iqf: degenerate domain");
    std::vector<AtomicDistribution::Atom> atoms;
    atoms.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        atoms.push_back({K.chord(i), K.breakpoints()[i + 1] - K.breakpoints()[i]});
    return AtomicDistribution::from_points(std::move(atoms));
}

MonotonePWL cdf_curve(const AtomicDistribution& d) {
    std::vector<MonotonePWL::Node> nodes;
    nodes.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        nodes.push_back({d.locations()[i], d.cdf_left(d.locations()[i]),
                         d.cdf(d.locations()[i])});
    return MonotonePWL(std::move(nodes));
}

}  // namespace iqf
