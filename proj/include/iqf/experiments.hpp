#ifndef IQF_EXPERIMENTS_HPP
#define IQF_EXPERIMENTS_HPP

#include <span>
#include <vector>

#include "iqf/dist.hpp"

namespace iqf {

/// Binary statistical experiment (dichotomy), represented by the law of
/// the likelihood ratio Z under the null hypothesis.  The law lives on
/// [0, inf) and its mean is at most 1; it determines the experiment up to
/// equivalence.
class BinaryExperiment {
  public:
    explicit BinaryExperiment(AtomicDistribution mu);

    /// Builds the experiment from two probability vectors over a common
    /// finite outcome space.  Outcomes with p_i = 0 carry no mass under
    /// the null and contribute only the singular part of the alternative.
    static BinaryExperiment from_measures(std::span<const double> p,
                                          std::span<const double> p_prime);

    const AtomicDistribution& mu() const { return mu_; }

  private:
    AtomicDistribution mu_;
};

/// Smallest type-II error as a function of the type-I error level:
/// r(u) on [0,1], convex, decreasing, r(1) = 0, r(0) = E[Z].
ConvexPWL risk_function(const BinaryExperiment& E);

/// Membership test for the power region
/// N(E) = {(u,v) : r(1-u) <= v <= 1 - r(u)}.
bool power_region_contains(const BinaryExperiment& E, double u, double v);

/// Concave piecewise-linear function on [0,1] given by its vertices.
struct ConcavePWL {
    std::vector<double> u;
    std::vector<double> value;

    double evaluate(double x) const;
};

/// Minimum Bayes risk at prior pi: b(pi) = inf over tests of the
/// pi-weighted error; b(0) = b(1) = 0.
double bayes_risk(const BinaryExperiment& E, double pi);

/// The whole minimum-Bayes-risk curve; concave PWL with breakpoints at
/// pi = 1/(1 + x) over the atoms x of the likelihood-ratio law.
ConcavePWL bayes_risk_curve(const BinaryExperiment& E);

/// Recovers the risk function from a minimum-Bayes-risk curve:
/// r(u) = sup_pi (b(pi) - (1-pi)u)/pi, exact over the breakpoints.
/// Requires 0 <= b(pi) <= min(pi, 1-pi) and concavity.
ConvexPWL risk_from_bayes(const ConcavePWL& b);

/// r_E <= r_Etilde on [0,1]; cross-validated against Bayes-curve
/// dominance and against mu_Etilde <=_decx mu_E.  The three routes must
/// agree; disagreement raises std::logic_error.
bool more_informative(const BinaryExperiment& E, const BinaryExperiment& E_tilde,
                      double tol = kDefaultTol);

/// b_E(pi) <= b_Etilde(pi) + eps/2 for all pi.
bool epsilon_deficient(const BinaryExperiment& E,
                       const BinaryExperiment& E_tilde, double eps);

struct Deficiency {
    double delta2;  // one-sided deficiency of E with respect to E_tilde
    double Delta2;  // symmetric deficiency, a metric on experiment types
};

/// Deficiencies via the Bayes-sup formula, cross-checked against half the
/// Levy distance between the representation CDFs (agreement within 1e-9
/// is enforced).
Deficiency deficiency(const BinaryExperiment& E, const BinaryExperiment& E_tilde);

/// Representation CDF: 0 below 0, r(1-x) on [0,1), 1 from 1 on.  The
/// corresponding law on [0,1] is generally non-atomic, which is why it is
/// exported as a curve rather than a distribution.
MonotonePWL repr_cdf(const BinaryExperiment& E);

/// The canonical measure pair over the atoms of mu plus a distinguished
/// defect outcome carrying the alternative's singular mass.
struct CanonicalExperiment {
    std::vector<double> ratio;    // likelihood-ratio value of each finite outcome
    std::vector<double> p;        // null masses
    std::vector<double> p_prime;  // alternative masses, x * mu({x})
    double defect;                // alternative mass at the infinite outcome
};

CanonicalExperiment canonical_experiment(const AtomicDistribution& mu);

/// Per-element symmetric deficiency against the target.
std::vector<double> experiment_sequence_distance(
    std::span<const BinaryExperiment> seq, const BinaryExperiment& target);

}  // namespace iqf

#endif  // IQF_EXPERIMENTS_HPP
