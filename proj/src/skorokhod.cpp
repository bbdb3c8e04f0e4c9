#include "iqf/skorokhod.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iqf/orders.hpp"

namespace iqf {

AtomicDistribution balayage(const AtomicDistribution& d, const Interval& I) {
    if (!(I.lo < I.hi) || !std::isfinite(I.lo) || !std::isfinite(I.hi))
        throw std::invalid_argument("balayage: need a finite interval with lo < hi");
    const double a = I.lo, b = I.hi, len = b - a;
    std::vector<AtomicDistribution::Atom> atoms;
    long double wa = 0.0L, wb = 0.0L;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const double x = d.locations()[i];
        const double p = d.masses()[i];
        if (x < a || x > b) {
            atoms.push_back({x, p});
        } else {
            wa += static_cast<long double>(p) * ((b - x) / len);
            wb += static_cast<long double>(p) * ((x - a) / len);
        }
    }
    if (wa > 0.0L) atoms.push_back({a, static_cast<double>(wa)});
    if (wb > 0.0L) atoms.push_back({b, static_cast<double>(wb)});
    return AtomicDistribution::from_points(std::move(atoms));
}

std::optional<CwStep> cw_step(const AtomicDistribution& X,
                              const AtomicDistribution& Y_target, double v,
                              double tol) {
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("cw_step: v must lie in (0,1)");
    if (OrderVerdict ord = leq_icx(X, Y_target, tol); !ord.holds)
        throw std::invalid_argument("cw_step: target shift-1 curve exceeds the source curve");

    const double epos = X.pos_part_mean();
    const double target_v = iqf_shift1(Y_target).evaluate(v);
    const double source_v = iqf(X).evaluate(v) - epos;
    // already touching: the tangent step degenerates and is skipped
    if (source_v - target_v <=
        kCanonicalTol * std::max({1.0, std::abs(source_v), std::abs(target_v)}))
        return std::nullopt;

    const auto [a, b] = solve_concave_equation(idf(X), v, target_v + epos);
    if (!(X.cdf(a) < v && v < X.cdf_left(b)))
        throw std::logic_error("cw_step: tangent interval does not bracket v");
    AtomicDistribution Z = balayage(X, Interval(a, b));
    return CwStep{Interval(a, b), std::move(Z)};
}

EmbeddingPlan plan_embedding(const AtomicDistribution& mu0,
                             const AtomicDistribution& mu, double tol) {
    if (OrderVerdict ord = leq_icx(mu0, mu, tol); !ord.holds) {
        // report the witness in stop-loss terms: a point y where
        // E[(mu0 - y)+] > E[(mu - y)+]
        double wy = ord.witness_u.value_or(0.5);
        double worst = 0.0;
        for (const auto* d : {&mu0, &mu})
            for (double y : d->locations()) {
                const double gap = stop_loss(mu0, y) - stop_loss(mu, y);
                if (gap > worst) {
                    worst = gap;
                    wy = y;
                }
            }
        throw std::invalid_argument(
            "plan_embedding: mu0 <=_icx mu fails, witness y = " + std::to_string(wy));
    }

    EmbeddingPlan plan;
    plan.laws.push_back(mu0);
    const ConvexPWL target_curve = iqf_shift1(mu);
    // the interior breakpoints of the target curve pin it completely
    std::vector<double> pins;
    for (double u : target_curve.breakpoints())
        if (u > 0.0 && u < 1.0) pins.push_back(u);

    for (double v : pins) {
        if (auto step = cw_step(plan.laws.back(), mu, v, tol)) {
            plan.intervals.push_back(step->interval);
            plan.laws.push_back(std::move(step->law));
        }
    }
    plan.exact = approx_equal(plan.laws.back(), mu, kDefaultTol);
    return plan;
}

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream))) {}

double CounterRng::next_unit() {
    const std::uint64_t r = mix64(key_ + 0x632be59bd9b4e019ULL * ++counter_);
    return static_cast<double>(r >> 11) * 0x1.0p-53;
}

namespace {

double sample_atom(const AtomicDistribution& d, double u) {
    // inverse-CDF draw: first atom whose cumulative mass exceeds u
    const auto& p = d.masses();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        cum += p[i];
        if (u < cum) return d.locations()[i];
    }
    return d.locations().back();
}

}  // namespace

double chain_sample(const EmbeddingPlan& plan, const AtomicDistribution& mu0,
                    CounterRng& rng) {
    double x = sample_atom(mu0, rng.next_unit());
    for (const Interval& I : plan.intervals) {
        if (x < I.lo || x > I.hi) continue;
        const double p_lo = (I.hi - x) / (I.hi - I.lo);
        x = rng.next_unit() < p_lo ? I.lo : I.hi;
    }
    return x;
}

namespace {

// index into the terminal support, or size() for off-support values
std::size_t support_index(const std::vector<double>& sup, double x) {
    const auto it = std::lower_bound(sup.begin(), sup.end(), x);
    for (const auto cand : {it, it == sup.begin() ? it : it - 1})
        if (cand != sup.end() && near(*cand, x, kDefaultTol))
            return static_cast<std::size_t>(cand - sup.begin());
    return sup.size();
}

}  // namespace

std::vector<std::uint64_t> sample_exit_counts_serial(const EmbeddingPlan& plan,
                                                     const AtomicDistribution& mu0,
                                                     std::uint64_t n,
                                                     std::uint64_t seed) {
    const std::vector<double>& sup = plan.laws.back().locations();
    std::vector<std::uint64_t> counts(sup.size() + 1, 0);
    for (std::uint64_t i = 0; i < n; ++i) {
        CounterRng rng(seed, i);
        counts[support_index(sup, chain_sample(plan, mu0, rng))]++;
    }
    return counts;
}

std::vector<std::uint64_t> sample_exit_counts_parallel(const EmbeddingPlan& plan,
                                                       const AtomicDistribution& mu0,
                                                       std::uint64_t n,
                                                       std::uint64_t seed,
                                                       int workers) {
    const std::vector<double>& sup = plan.laws.back().locations();
    std::vector<std::uint64_t> counts(sup.size() + 1, 0);
#ifdef _OPENMP
    if (workers <= 0) workers = omp_get_max_threads();
#else
    (void)workers;  // the loop below runs on one thread
#endif
#pragma omp parallel num_threads(workers)
    {
        std::vector<std::uint64_t> local(counts.size(), 0);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            CounterRng rng(seed, static_cast<std::uint64_t>(i));
            local[support_index(sup, chain_sample(plan, mu0, rng))]++;
        }
#pragma omp critical
        for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += local[k];
    }
    return counts;
}

McReport monte_carlo_verify(const AtomicDistribution& mu0,
                            const AtomicDistribution& mu, std::uint64_t n,
                            std::uint64_t seed, int workers) {
    if (n == 0)
        throw std::invalid_argument("monte_carlo_verify: need n >= 1");
    const EmbeddingPlan plan = plan_embedding(mu0, mu);
    const std::vector<std::uint64_t> counts =
        sample_exit_counts_parallel(plan, mu0, n, seed, workers);
    const std::vector<double>& sup = plan.laws.back().locations();

    McReport rep;
    rep.plan_exact = plan.exact;
    rep.n = n;
    rep.seed = seed;
#ifdef _OPENMP
    rep.workers = workers <= 0 ? omp_get_max_threads() : workers;
#else
    rep.workers = 1;
#endif

    // empirical masses on the support; off-support mass counts fully
    // against the total-variation distance
    std::vector<double> emp(sup.size());
    for (std::size_t i = 0; i < sup.size(); ++i)
        emp[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
    const double off = static_cast<double>(counts.back()) / static_cast<double>(n);

    double tv = off;
    for (std::size_t i = 0; i < sup.size(); ++i) {
        const std::size_t j = support_index(mu.locations(), sup[i]);
        const double target = j < mu.size() ? mu.masses()[j] : 0.0;
        tv += std::abs(emp[i] - target);
    }
    for (std::size_t j = 0; j < mu.size(); ++j)
        if (support_index(sup, mu.locations()[j]) == sup.size())
            tv += mu.masses()[j];
    rep.tv_distance = tv / 2.0;

    rep.per_atom_abs_err.resize(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) {
        const std::size_t i = support_index(sup, mu.locations()[j]);
        const double e = i < sup.size() ? emp[i] : 0.0;
        rep.per_atom_abs_err[j] = std::abs(e - mu.masses()[j]);
    }

    // Kolmogorov distance between the empirical and target step CDFs,
    // evaluated just before and at every support point of either law
    std::vector<double> grid = sup;
    grid.insert(grid.end(), mu.locations().begin(), mu.locations().end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    double ks = 0.0;
    double femp = 0.0, ftar = 0.0, femp_prev = 0.0, ftar_prev = 0.0;
    for (double x : grid) {
        const std::size_t i = support_index(sup, x);
        const std::size_t j = support_index(mu.locations(), x);
        femp_prev = femp;
        ftar_prev = ftar;
        if (i < sup.size()) femp += emp[i];
        if (j < mu.size()) ftar += mu.masses()[j];
        ks = std::max({ks, std::abs(femp - ftar), std::abs(femp_prev - ftar_prev)});
    }
    rep.kolmogorov = ks;
    return rep;
}

}  // namespace iqf
