#include "iqf/limits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iqf {

double tightness_oscillation(std::span<const AtomicDistribution> family,
                             double u, double v) {
    if (family.empty())
        throw std::invalid_argument("tightness_oscillation: empty family");
    if (!(u > 0.0 && u < 1.0) || !(v > 0.0 && v < 1.0))
        throw std::domain_error("tightness_oscillation: u, v must lie in (0,1)");
    double s = 0.0;
    for (const auto& d : family) {
        const ConvexPWL q = iqf(d);
        s = std::max(s, std::abs(q.evaluate(u) - q.evaluate(v)));
    }
    return s;
}

double ui_modulus(std::span<const AtomicDistribution> family, double delta) {
    if (family.empty())
        throw std::invalid_argument("ui_modulus: empty family");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("ui_modulus: delta must lie in (0,1]");
    double s = 0.0;
    for (const auto& d : family) {
        const ConvexPWL q = iqf(d);
        const double down = q.evaluate(0.0) - q.min_on(0.0, delta);
        const double up = q.evaluate(1.0) - q.min_on(1.0 - delta, 1.0);
        s = std::max({s, down, up});
    }
    return s;
}

FamilyDiagnostics family_diagnostics(std::span<const AtomicDistribution> family,
                                     double u, double v, double delta) {
    double m = 0.0;
    for (const auto& d : family)
        m = std::max(m, std::max(d.neg_part_mean(), d.pos_part_mean()));
    return {tightness_oscillation(family, u, v), ui_modulus(family, delta), m};
}

AtomicDistribution dominating_variable(std::span<const AtomicDistribution> family) {
    if (family.empty())
        throw std::invalid_argument("dominating_variable: empty family");
    // reduction to nonnegative members: replace each X by |X|
    std::vector<ConvexPWL> curves;
    curves.reserve(family.size());
    for (const auto& d : family) curves.push_back(iqf_shift1(d.abs_law()));
    const ConvexPWL K = lower_convex_envelope(curves, Interval(0.0, 1.0));
    return from_iqf(K.shifted(-K.values().front()));
}

std::vector<double> uniform_distance_profile(
    std::span<const AtomicDistribution> seq, const AtomicDistribution& target,
    double a, double b, ProfileShift shift) {
    const bool lo_ok = (shift == ProfileShift::at0) ? a >= 0.0 : a > 0.0;
    const bool hi_ok = (shift == ProfileShift::at1) ? b <= 1.0 : b < 1.0;
    if (!(a < b) || !lo_ok || !hi_ok || a < 0.0 || b > 1.0)
        throw std::domain_error("uniform_distance_profile: invalid interval");
    auto transform = [&](const AtomicDistribution& d) {
        switch (shift) {
            case ProfileShift::at0: return iqf_shift0(d);
            case ProfileShift::at1: return iqf_shift1(d);
            default: return iqf(d);
        }
    };
    const ConvexPWL qt = transform(target);
    const Interval window(a, b);
    std::vector<double> out;
    out.reserve(seq.size());
    for (const auto& d : seq)
        out.push_back(sup_distance(transform(d), qt, window));
    return out;
}

}  // namespace iqf
