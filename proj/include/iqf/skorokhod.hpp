#ifndef IQF_SKOROKHOD_HPP
#define IQF_SKOROKHOD_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "iqf/dist.hpp"

namespace iqf {

/// Balayage of `d` on I = (a, b): atoms outside [a, b] are untouched;
/// every atom x in [a, b] is swept to the endpoints with the harmonic
/// weights (b-x)/(b-a) and (x-a)/(b-a).  Mass and mean are preserved.
AtomicDistribution balayage(const AtomicDistribution& d, const Interval& I);

/// One tangent-line step of the embedding construction.
struct CwStep {
    Interval interval;
    AtomicDistribution law;
};

/// Pins the running shift-1 IQF onto the target curve at v: returns the
/// balayage interval and the new law, or nothing when the curves already
/// touch at v.  Requires the target curve to lie below the source curve
/// everywhere (checked at the merged vertices).
std::optional<CwStep> cw_step(const AtomicDistribution& X,
                              const AtomicDistribution& Y_target, double v,
                              double tol = kDefaultTol);

/// The full interval sequence realizing the embedding, with every
/// intermediate law.  laws.front() is mu0; when `exact` is set,
/// laws.back() equals the target vertex-for-vertex.
struct EmbeddingPlan {
    std::vector<Interval> intervals;
    std::vector<AtomicDistribution> laws;
    bool exact;
};

/// Iterates cw_step over the interior breakpoints of the target's shift-1
/// IQF in increasing order.  Requires mu0 <=_icx mu; with equal means the
/// plan terminates on the target exactly.
EmbeddingPlan plan_embedding(const AtomicDistribution& mu0,
                             const AtomicDistribution& mu,
                             double tol = kDefaultTol);

/// Counter-based random stream: draw i of stream s is a fixed mixing of
/// (seed, s, i), so any (sample, worker) decomposition is reproducible and
/// order-independent.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream);

    /// Uniform double in [0, 1).
    double next_unit();

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// One draw of the embedded exit chain: samples X0 from mu0, then for each
/// interval (a,b) in order jumps from x in [a,b] to a with probability
/// (b-x)/(b-a) and to b otherwise; values outside stay put.  Returns the
/// terminal value.
double chain_sample(const EmbeddingPlan& plan, const AtomicDistribution& mu0,
                    CounterRng& rng);

/// Histogram of n chain draws over the support of plan.laws.back() plus a
/// trailing slot for off-support values.  Sample i uses the dedicated
/// stream (seed, i), so the counts do not depend on scheduling.
/// The serial kernel is the reference implementation; the parallel kernel
/// is the OpenMP version and produces identical counts.
std::vector<std::uint64_t> sample_exit_counts_serial(const EmbeddingPlan& plan,
                                                     const AtomicDistribution& mu0,
                                                     std::uint64_t n,
                                                     std::uint64_t seed);
std::vector<std::uint64_t> sample_exit_counts_parallel(const EmbeddingPlan& plan,
                                                       const AtomicDistribution& mu0,
                                                       std::uint64_t n,
                                                       std::uint64_t seed,
                                                       int workers);

struct McReport {
    double tv_distance;    // total-variation distance on the known support
    double kolmogorov;     // sup-distance of the CDFs
    std::vector<double> per_atom_abs_err;  // one entry per target atom
    bool plan_exact;
    std::uint64_t n;
    std::uint64_t seed;
    int workers;
};

/// Builds the plan for (mu0, mu), draws n embedded-exit samples with the
/// seeded stream and compares the empirical law against mu.
McReport monte_carlo_verify(const AtomicDistribution& mu0,
                            const AtomicDistribution& mu, std::uint64_t n,
                            std::uint64_t seed, int workers = 0);

}  // namespace iqf

#endif  // IQF_SKOROKHOD_HPP
