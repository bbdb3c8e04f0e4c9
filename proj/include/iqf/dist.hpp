#ifndef IQF_DIST_HPP
#define IQF_DIST_HPP

#include <span>
#include <utility>
#include <vector>

#include "iqf/pwl.hpp"

namespace iqf {

/// Finitely supported probability law on the reals: sorted atom locations
/// with positive masses summing to one.  Locations closer than 1e-12 are
/// merged on construction and masses are renormalized.  Immutable; all
/// operations are pure functions.
class AtomicDistribution {
  public:
    struct Atom {
        double x;
        double p;
    };

    /// Builds from (location, mass) pairs in any order.
    static AtomicDistribution from_points(std::vector<Atom> atoms);

    /// Empirical law; equal weights when `weights` is empty.
    static AtomicDistribution from_samples(std::span<const double> values,
                                           std::span<const double> weights = {});

    static AtomicDistribution point_mass(double c);

    const std::vector<double>& locations() const { return x_; }
    const std::vector<double>& masses() const { return p_; }
    std::size_t size() const { return x_.size(); }

    double cdf(double x) const;       // P(X <= x)
    double cdf_left(double x) const;  // P(X < x)

    /// q^L(u) = inf{x : F(x) >= u}, q^R(u) = inf{x : F(x) > u}, u in (0,1).
    double quantile_left(double u) const;
    double quantile_right(double u) const;

    double mean() const;
    double pos_part_mean() const;  // E[X+]
    double neg_part_mean() const;  // E[X-]
    double second_moment() const;

    AtomicDistribution negate() const;   // law of -X
    AtomicDistribution abs_law() const;  // law of |X|

  private:
    AtomicDistribution() = default;
    std::vector<double> x_;
    std::vector<double> p_;
    std::vector<double> cum_;  // cumulative masses, cum_[i] = P(X <= x_[i])
};

bool approx_equal(const AtomicDistribution& a, const AtomicDistribution& b,
                  double tol = kDefaultTol);

/// Integrated distribution function x -> integral of F over [0, x].
/// Convex, zero at x = 0, asymptotic slopes 0 and 1.
ConvexPWL idf(const AtomicDistribution& d);

/// Integrated quantile function: antiderivative of the quantile function
/// anchored at its zero; equals the Fenchel transform of the IDF.
/// Finite exactly on [0, 1], with Q(0) = E[X-] and Q(1) = E[X+].
ConvexPWL iqf(const AtomicDistribution& d);

ConvexPWL iqf_shift0(const AtomicDistribution& d);  // Q - Q(0), the absolute Lorenz curve
ConvexPWL iqf_shift1(const AtomicDistribution& d);  // Q - Q(1)

double psi(const AtomicDistribution& d, double x);        // integral of F over (-inf, x]
double stop_loss(const AtomicDistribution& d, double x);  // E[(X - x)+]
double potential(const AtomicDistribution& d, double x);  // -E|x - X|

double lorenz(const AtomicDistribution& d, double u);             // u in [0,1]
double cvar(const AtomicDistribution& d, double u);               // u in (0,1]
double hardy_littlewood(const AtomicDistribution& d, double u);   // u in [0,1)

/// Inverse of idf: the unique law whose IDF is J.  Requires J(0) = 0,
/// asymptotic slopes 0 and 1, and all slopes in [0, 1].
AtomicDistribution from_idf(const ConvexPWL& J);

/// Inverse of iqf: the unique law whose IQF is K.  Requires K >= 0 with a
/// zero, finite exactly on [0, 1].
AtomicDistribution from_iqf(const ConvexPWL& K);

/// CDF of the law as a monotone right-continuous step descriptor.
MonotonePWL cdf_curve(const AtomicDistribution& d);

}  // namespace iqf

#endif  // IQF_DIST_HPP
